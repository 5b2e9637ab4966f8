#pragma once

#include <map>
#include <string>

namespace kb::constants {

struct ConstantReport {
  std::string name;
  double d = 0;
  std::map<std::string, double> params;
  double value = 0;
  double residual = 0;
  std::map<std::string, double> witness;
  bool limit_value = false;  // δ = 0 closed-form limit
};

// Unique γ > 0 with √δ γ³ + (4d+1)γ² − d² = 0.
double gamma_delta(double d, double delta);
double cubic_residual(double d, double delta, double gamma);

// K_d(δ) = d/γ_δ².
double big_K(double d, double delta);
// Root of √(dδ) K^{-3/2} + (4d+1)/K = d.
double big_K_implicit(double d, double delta);
double big_K_implicit_residual(double d, double delta, double K);
// Direct minimization of the γ-objective.
double big_K_minimized(double d, double delta);

// Root of δ²/√(1+δ) + 4δ = 1/d on (0, 1/(4d)).
double delta_star(double d);
double delta_star_residual(double d, double delta);

// κ_d = (1+1/δ_*)/d².
double kappa(double d);
double kappa_residual(double d, double k);

// Objective of K_{d,b}(δ) at γ.
double kb_objective(double d, double delta, double b, double gamma);
double big_K_b(double d, double delta, double b);

double kappa_b(double d, double b);

// g_{d,δ,b₂}(γ₁, γ₂)
double m_objective(double d, double delta, double b2, double g1, double g2);
double big_M(double d, double delta, double b2);

double mu(double d, double b1, double b2);

double b3_max(double d, double b1, double b2);

struct Window {
  double lo = 0;
  double hi = 0;
  bool empty = true;
};
Window delta_tilde_window(double d, double b1, double b2, double b3);

double euclidean_dim(double d_euclidean);

struct V1Certificate {
  bool admissible = false;
  double margin = 0;
  double outside_margin = 0;
  double inside_margin = 0;
  double threshold = 0;  // 1/(dκ_d)
};
V1Certificate v1_certificate(double d, double b);

// Reports carrying residuals and witnesses.
ConstantReport report_gamma_delta(double d, double delta);
ConstantReport report_big_K(double d, double delta);
ConstantReport report_delta_star(double d);
ConstantReport report_kappa(double d);
ConstantReport report_big_K_b(double d, double delta, double b);
ConstantReport report_kappa_b(double d, double b);
ConstantReport report_big_M(double d, double delta, double b2);
ConstantReport report_mu(double d, double b1, double b2);
ConstantReport report_b3_max(double d, double b1, double b2);

}  // namespace kb::constants
