#pragma once

namespace kb::specfun {

double log_gamma(double x);

// B_{a,b} = Γ(a/2)Γ((b+1)/2) / (Γ(b/2)Γ((a+1)/2))
double beta_ratio(double alpha, double beta);

struct BetaFactor {
  double alpha;
  double beta;
  double value;

  static BetaFactor make(double alpha, double beta) {
    return {alpha, beta, beta_ratio(alpha, beta)};
  }
};

// G_d = B_{d+1,d}
double g_const(double d);
// (2/d)[Γ((d+1)/2)/Γ(d/2)]², the second route to G_d.
double g_const_gamma_route(double d);

// I_a = ∫_R (1+s²)^{-(a+1)/2} ds; +inf for a <= 0.
double vertical_integral(double alpha);

struct VerticalQuadrature {
  double value;       // truncated integral plus nothing: tail is only bounded
  double closed_form;
  double cutoff;      // S, the truncation |s| <= S
  double tail_bound;  // 2 S^{-a}/a
  double rel_diff;
};

// Cross-check mode: Gauss-Legendre on [-S, S] with geometric panels.
VerticalQuadrature vertical_integral_quadrature(double alpha, double tail_tol = 1e-10);

// |S^{2d-1}| = 2π^d/Γ(d)
double sphere_area(int d);

}  // namespace kb::specfun
