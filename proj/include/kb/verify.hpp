#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kb/radial.hpp"

namespace kb::verify {

using radial::RadialProfile;
using radial::Region;
using radial::SpectralParam;

// V = (c_re + i c_im) ω²/ρ²
struct PotentialSpec {
  double c_re = 0;
  double c_im = 0;

  bool is_zero() const { return c_re == 0 && c_im == 0; }
  std::string spec() const;  // empty for the zero potential
};

struct Subordination {
  double b = 0;
  double b1 = 0;
  double b2 = 0;
  double b3 = 0;
  bool thmV1_ok = false;
  bool thmV2_ok = false;
  double v1_threshold = 0;  // 1/(dκ_d)
  double b3_limit = 0;      // b3_max(d, b1, b2), 0 when b1 or b2 >= 1
  bool chain_ok = true;     // thmV1_ok ⇒ b/d < 1
};

Subordination potential_subordination(const PotentialSpec& V, int d);

enum class HardyVariant { GL, weightedGL, horizontal };
HardyVariant parse_hardy_variant(std::string_view s);
const char* to_string(HardyVariant v);

double hardy_constant(int d, HardyVariant v);

struct HardyResult {
  double quotient;
  double constant;
  double lhs;  // weighted L² mass of u
  double rhs;  // weighted gradient mass
};

HardyResult hardy_quotient(const RadialProfile& u, int d, HardyVariant v, const quad::Options& opt = {});

struct SharpnessProbe {
  double sup_quotient = 0;
  double constant = 0;
  std::vector<double> eps;
  std::vector<double> quotients;
  std::vector<std::string> profiles;
};

// power_cut profiles at the variant's critical exponent (d for GL,
// (2d+1)/2 for weightedGL), one per ε.
SharpnessProbe hardy_sharpness_probe(int d, HardyVariant v, std::span<const double> eps, double R,
                                     const quad::Options& opt = {});

enum class Identity { energy_real, energy_imag, virial, key, keyV };
Identity parse_identity(std::string_view s);
const char* to_string(Identity w);

struct IdentityResult {
  bool testable = true;
  double lhs = 0;
  double rhs = 0;
  // Σ S_d I_{d+β} ∫ r^{2d+1}|h| over every term, the scale of the cancellation
  double magnitude = 0;
  // |lhs − rhs| / (max(|lhs|+|rhs|, magnitude) + 1e−300)
  double residual = 0;
  std::string note;
};

IdentityResult identity_residual(const RadialProfile& u, const SpectralParam& lambda, int d, Identity which,
                                 const std::optional<PotentialSpec>& V = std::nullopt,
                                 const quad::Options& opt = {});

// ∫(V + ρ∂_ρV)|u|² against −∫V|u|², with ρ∂_ρV by central differences.
double euler_homogeneity_residual(const RadialProfile& u, int d, double c_re, const quad::Options& opt = {});

struct StressRecord {
  int trial_id = 0;
  SpectralParam lambda;
  std::string profile_spec;
  std::string potential_spec;
  Region region = Region::outside_cone;
  double lhs = 0;
  double rhs = 0;
  double bound = 0;
  std::optional<double> ratio;
  bool pass = false;
  bool error = false;
  std::string note;
};

struct BoundOverrides {
  std::optional<double> b;
  std::optional<double> b1;
  std::optional<double> b2;
};

// Constants of the applicable theorem for (d, δ, V).
struct EstimateBounds {
  int d = 1;
  double delta = 1;
  PotentialSpec V;
  double outside = 0;      // gradient bound off the cone
  double inside = 0;       // gauged-gradient bound on the cone
  double kato_yajima = 0;
  double b = 0, b1 = 0, b2 = 0;
  std::string regime;      // free | repulsive | attractive
};

EstimateBounds estimate_bounds(int d, double delta, const std::optional<PotentialSpec>& V,
                               const BoundOverrides& overrides = {});

struct EstimateOutcome {
  StressRecord gradient;
  StressRecord kato_yajima;
};

EstimateOutcome estimate_check(const RadialProfile& u, const SpectralParam& lambda, const EstimateBounds& bounds,
                               const quad::Options& opt = {});
EstimateOutcome estimate_check(const RadialProfile& u, const SpectralParam& lambda, int d, double delta,
                               const std::optional<PotentialSpec>& V = std::nullopt,
                               const quad::Options& opt = {});

}  // namespace kb::verify
