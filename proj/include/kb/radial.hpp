#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>

#include "kb/profile.hpp"
#include "kb/quadrature.hpp"

namespace kb::radial {

// ρ^a ω^b
struct Weight {
  double a = 0;
  double b = 0;
};

enum class Region { inside_cone, outside_cone };
const char* to_string(Region r);

struct SpectralParam {
  double lambda1 = 0;
  double lambda2 = 0;
  double delta = 1;

  // inside iff |λ₂| <= δλ₁, boundary included
  Region region() const;
  double sgn() const;  // sgn(λ₂) with sgn(0) = 1
  cplx value() const { return {lambda1, lambda2}; }
};

double koranyi_gauge(double z_norm, double t);

using RadialFn = std::function<cplx(double)>;

// S_d · I_{d+β} · ∫ r^{2d+1} h(r) dr. A divergent vertical factor yields
// ±inf (0 when the radial integral vanishes).
double reduced_integral(const std::function<double(double)>& h, std::span<const double> breaks,
                        int d, double beta, const quad::Options& opt = {});

// ‖ρ^a ω^b g‖² = S_d · I_{d+b} · ∫ r^{2d+1+2a} |g|² dr.
double weighted_norm_sq(const RadialFn& g, std::span<const double> breaks, int d, Weight w,
                        const quad::Options& opt = {});
double weighted_norm_sq(const RadialProfile& u, int d, Weight w, const quad::Options& opt = {});

// A(r) = u'' + (2d+1)u'/r, so that −Lu = ω²A(ρ).
RadialFn sublaplacian_profile(const RadialProfile& u, int d);
// A(r) − c u/r²: the ω²-part of −Lu − Vu for V = c ω²/ρ².
RadialFn horizontal_part(const RadialProfile& u, int d, double c_re);

// sgn(λ₂)·√(|λ₁|/G_d)
double gauge_phase_coeff(const SpectralParam& lambda, double d);
// Second route through the Gamma function.
double gauge_phase_coeff_gamma(const SpectralParam& lambda, double d);

enum class GaugeSign { minus, plus };

// ‖∇_H (e^{∓iψ} u)‖² with ψ = c ρ.
double gauged_gradient_norm_sq(const RadialProfile& u, const SpectralParam& lambda, int d,
                               GaugeSign sign = GaugeSign::minus, const quad::Options& opt = {});

// ‖(ρ/ω) f‖² for f = ω²(A − c u/r²) + λu.
double rhs_norm_sq(const RadialProfile& u, const SpectralParam& lambda, int d, double c_re = 0,
                   const quad::Options& opt = {});

}  // namespace kb::radial
