#include "kb/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "kb/constants.hpp"
#include "kb/errors.hpp"
#include "kb/specfun.hpp"

namespace kb::verify {

using radial::cplx;
using radial::Jet;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) { return radial::format_number(x); }

// One identity term S_d I_{d+β} ∫ r^{2d+1} h.
struct Term {
  double value = 0;
  double magnitude = 0;
  bool divergent = false;
};

Term J(int d, double beta, const std::function<double(double)>& h, const RadialProfile& u,
       const quad::Options& opt) {
  Term t;
  if (d + beta <= 0) {
    t.divergent = true;
    return t;
  }
  const double p = 2.0 * d + 1;
  quad::Result r = quad::integrate([&](double x) { return std::pow(x, p) * h(x); }, u.breakpoints(), opt);
  double f = specfun::sphere_area(d) * specfun::vertical_integral(d + beta);
  t.value = f * r.value;
  t.magnitude = f * r.abs_value;
  return t;
}

struct Sides {
  double lhs = 0, rhs = 0, magnitude = 0;
  bool divergent = false;
  void left(const Term& t, double k = 1) { add(t, k, lhs); }
  void right(const Term& t, double k = 1) { add(t, k, rhs); }
  void add(const Term& t, double k, double& side) {
    divergent |= t.divergent;
    side += k * t.value;
    magnitude += std::abs(k) * t.magnitude;
  }
};

double tau_of(const SpectralParam& l, int d) {
  double G = specfun::g_const(d);
  return std::abs(l.lambda2 / G) / std::sqrt(l.lambda1 / G);
}

StressRecord make_record(double lhs, double rhs, double bound, std::string note) {
  StressRecord r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.bound = bound;
  if (std::isinf(rhs)) {
    r.pass = true;
    note += ";vacuous";
  } else {
    r.ratio = lhs == 0 ? 0.0 : lhs / (bound * rhs);
    r.pass = lhs <= bound * rhs;
  }
  r.note = std::move(note);
  return r;
}

}  // namespace

std::string PotentialSpec::spec() const {
  if (is_zero()) return "";
  return "cr=" + num(c_re) + ",ci=" + num(c_im);
}

Subordination potential_subordination(const PotentialSpec& V, int d) {
  if (d < 1) throw DomainError("potential_subordination: d must be >= 1");
  Subordination s;
  double neg = std::max(0.0, -V.c_re);
  s.b = std::hypot(V.c_re, V.c_im) / d;
  s.b1 = std::sqrt(neg) / d;
  // ∂_ρ(ρV) = −V for the degree −2 family, so its positive part is V_-
  s.b2 = s.b1;
  s.b3 = std::abs(V.c_im) / d;
  s.v1_threshold = constants::v1_certificate(d, 0.0).threshold;
  s.thmV1_ok = s.b < s.v1_threshold;
  bool b12 = s.b1 < 1 && s.b2 < 1;
  s.b3_limit = b12 ? constants::b3_max(d, s.b1, s.b2) : 0.0;
  s.thmV2_ok = b12 && s.b3 < s.b3_limit;
  s.chain_ok = !s.thmV1_ok || s.b / d < 1;
  return s;
}

HardyVariant parse_hardy_variant(std::string_view s) {
  if (s == "GL") return HardyVariant::GL;
  if (s == "weightedGL") return HardyVariant::weightedGL;
  if (s == "horizontal") return HardyVariant::horizontal;
  throw ConfigError("unknown Hardy variant '" + std::string(s) + "' (GL, weightedGL, horizontal)");
}

const char* to_string(HardyVariant v) {
  switch (v) {
    case HardyVariant::GL: return "GL";
    case HardyVariant::weightedGL: return "weightedGL";
    case HardyVariant::horizontal: return "horizontal";
  }
  return "?";
}

double hardy_constant(int d, HardyVariant v) {
  switch (v) {
    case HardyVariant::GL: return 1.0 / (d * d);
    case HardyVariant::weightedGL: return std::pow(2.0 / (2 * d + 1), 2);
    case HardyVariant::horizontal:
      if (d < 2) throw DomainError("hardy horizontal: requires d >= 2, got d = " + std::to_string(d));
      return 1.0 / ((d - 1.0) * (d - 1.0));
  }
  return 0;
}

HardyResult hardy_quotient(const RadialProfile& u, int d, HardyVariant v, const quad::Options& opt) {
  if (d < 1) throw DomainError("hardy_quotient: d must be >= 1");
  double c = hardy_constant(d, v);
  radial::RadialFn du = [&u](double r) { return u(r).d1; };
  radial::Weight wl, wr;
  switch (v) {
    case HardyVariant::GL:
      wl = {-1, 1};
      wr = {0, 1};
      break;
    case HardyVariant::weightedGL:
      wl = {-0.5, 1};
      wr = {0.5, 1};
      break;
    case HardyVariant::horizontal:
      wl = {-1, -1};
      wr = {0, 1};
      break;
  }
  double lhs = radial::weighted_norm_sq(u, d, wl, opt);
  double rhs = radial::weighted_norm_sq(du, u.breakpoints(), d, wr, opt);
  return {rhs == 0 ? 0.0 : lhs / rhs, c, lhs, rhs};
}

SharpnessProbe hardy_sharpness_probe(int d, HardyVariant v, std::span<const double> eps, double R,
                                     const quad::Options& opt) {
  if (v == HardyVariant::horizontal) throw DomainError("sharpness probe: only GL and weightedGL");
  if (!(R > 1)) throw DomainError("sharpness probe: R must be > 1");
  double p = v == HardyVariant::GL ? d : d + 0.5;
  SharpnessProbe out;
  out.constant = hardy_constant(d, v);
  for (double e : eps) {
    if (!(e > 0)) throw DomainError("sharpness probe: eps must be > 0");
    RadialProfile u = RadialProfile::power_cut(p, e, R);
    double q = hardy_quotient(u, d, v, opt).quotient;
    out.eps.push_back(e);
    out.quotients.push_back(q);
    out.profiles.push_back(u.spec());
    out.sup_quotient = std::max(out.sup_quotient, q);
  }
  return out;
}

Identity parse_identity(std::string_view s) {
  if (s == "energy_real") return Identity::energy_real;
  if (s == "energy_imag") return Identity::energy_imag;
  if (s == "virial") return Identity::virial;
  if (s == "key") return Identity::key;
  if (s == "keyV") return Identity::keyV;
  throw ConfigError("unknown identity '" + std::string(s) + "'");
}

const char* to_string(Identity w) {
  switch (w) {
    case Identity::energy_real: return "energy_real";
    case Identity::energy_imag: return "energy_imag";
    case Identity::virial: return "virial";
    case Identity::key: return "key";
    case Identity::keyV: return "keyV";
  }
  return "?";
}

IdentityResult identity_residual(const RadialProfile& u, const SpectralParam& l, int d, Identity which,
                                 const std::optional<PotentialSpec>& V, const quad::Options& opt) {
  if (d < 1) throw DomainError("identity_residual: d must be >= 1");
  const double n = 2.0 * d + 1;
  const cplx lam = l.value();
  double cv = 0;
  if (which == Identity::keyV) {
    if (!V) throw ConfigError("keyV requires a potential");
    cv = V->c_re;
  }
  radial::RadialFn A = radial::horizontal_part(u, d, cv);
  auto abs2 = [&](double r) { return std::norm(u(r).v); };
  Sides s;

  switch (which) {
    case Identity::energy_real: {
      double tau = l.lambda1 > 0 ? tau_of(l, d) : 1.0;
      auto phi = [&](double r) { return 1 - tau * r; };
      auto bphi = [&](double r) { return -n * tau / r; };
      s.left(J(d, 1, [&](double r) { return 0.5 * bphi(r) * abs2(r) - phi(r) * std::norm(u(r).d1); }, u, opt));
      s.left(J(d, 0, [&](double r) { return phi(r) * abs2(r); }, u, opt), l.lambda1);
      s.right(J(d, 1, [&](double r) { return phi(r) * (std::conj(A(r)) * u(r).v).real(); }, u, opt));
      s.right(J(d, 0, [&](double r) { return phi(r) * abs2(r); }, u, opt), l.lambda1);
      break;
    }
    case Identity::energy_imag: {
      double G = specfun::g_const(d);
      s.left(J(d, 1, abs2, u, opt), l.lambda2 / G);
      s.right(J(d, 1, [&](double r) { return (A(r) * std::conj(u(r).v)).imag(); }, u, opt));
      s.right(J(d, 0, abs2, u, opt), l.lambda2);
      break;
    }
    case Identity::virial: {
      s.left(J(d, 1, [&](double r) { return std::norm(u(r).d1); }, u, opt));
      s.left(J(d, 0, [&](double r) { Jet j = u(r); return r * (std::conj(j.v) * j.d1).imag(); }, u, opt),
             -l.lambda2);
      s.right(J(d, 1, [&](double r) { return (std::conj(A(r)) * u(r).v).real(); }, u, opt), -(d + 1.0));
      s.right(J(d, 0, abs2, u, opt), -(d + 1.0) * l.lambda1);
      s.right(J(d, 1, [&](double r) { return r * (std::conj(A(r)) * u(r).d1).real(); }, u, opt), -1);
      s.right(J(d, 0, [&](double r) { Jet j = u(r); return r * (std::conj(lam) * std::conj(j.v) * j.d1).real(); },
                u, opt),
              -1);
      break;
    }
    case Identity::key:
    case Identity::keyV: {
      if (!(l.lambda1 > 0) || l.region() != Region::inside_cone)
        throw DomainError(std::string(to_string(which)) + ": requires lambda1 > 0 inside the cone");
      double c = radial::gauge_phase_coeff(l, d);
      double tau = tau_of(l, d);
      auto dv2 = [&](double r) {
        Jet j = u(r);
        return std::norm(j.d1) + c * c * std::norm(j.v) - 2 * c * (std::conj(j.v) * j.d1).imag();
      };
      auto br = [&](double r) {
        Jet j = u(r);
        return n * j.v + tau * r * j.v + 2 * r * (j.d1 - cplx(0, c) * j.v);
      };
      s.left(J(d, 1, [&](double r) { return dv2(r) * (1 + tau * r) - 0.5 * n * tau * abs2(r) / r; }, u, opt));
      if (which == Identity::keyV) {
        // V⁰(r) = cv/r² and r ∂_r V⁰ by central differences
        auto v0 = [&](double r) { return cv / (r * r); };
        auto euler = [&](double r) {
          double h = 1e-5 * r;
          return v0(r) + r * (v0(r + h) - v0(r - h)) / (2 * h);
        };
        s.left(J(d, 1, [&](double r) { return tau * r * v0(r) * abs2(r); }, u, opt));
        s.left(J(d, 1, [&](double r) { return euler(r) * abs2(r); }, u, opt), -1);
      }
      s.right(J(d, 1, [&](double r) { return (std::conj(A(r)) * br(r)).real(); }, u, opt), -1);
      s.right(J(d, 0, [&](double r) { return (std::conj(lam) * std::conj(u(r).v) * br(r)).real(); }, u, opt), -1);
      break;
    }
  }

  IdentityResult out;
  if (s.divergent) {
    out.testable = false;
    out.note = "identity not testable at this (d, lambda): divergent vertical factor";
    return out;
  }
  out.lhs = s.lhs;
  out.rhs = s.rhs;
  out.magnitude = s.magnitude;
  out.residual = std::abs(s.lhs - s.rhs) / (std::max(std::abs(s.lhs) + std::abs(s.rhs), s.magnitude) + 1e-300);
  return out;
}

double euler_homogeneity_residual(const RadialProfile& u, int d, double c, const quad::Options& opt) {
  auto v0 = [&](double r) { return c / (r * r); };
  Term a = J(d, 1,
             [&](double r) {
               double h = 1e-5 * r;
               return (v0(r) + r * (v0(r + h) - v0(r - h)) / (2 * h)) * std::norm(u(r).v);
             },
             u, opt);
  Term b = J(d, 1, [&](double r) { return v0(r) * std::norm(u(r).v); }, u, opt);
  return std::abs(a.value + b.value) / (std::abs(a.value) + std::abs(b.value) + 1e-300);
}

EstimateBounds estimate_bounds(int d, double delta, const std::optional<PotentialSpec>& V,
                               const BoundOverrides& ov) {
  if (d < 1) throw ConfigError("d must be a positive integer");
  if (!(delta > 0)) throw ConfigError("delta must be > 0");
  auto check_unit = [](const char* name, double v) {
    if (!(v >= 0 && v < 1))
      throw ConfigError(std::string("theorem hypothesis violated: ") + name + " must satisfy 0 <= " + name +
                        " < 1, got " + num(v));
  };
  EstimateBounds e;
  e.d = d;
  e.delta = delta;
  if (V) e.V = *V;
  if (e.V.c_im != 0)
    throw ConfigError("estimate check covers real potentials only (got ci = " + num(e.V.c_im) + ")");
  for (auto [name, v] : {std::pair{"b", ov.b}, std::pair{"b1", ov.b1}, std::pair{"b2", ov.b2}})
    if (v) check_unit(name, *v);

  const double left = (1 + 1 / delta) / d;
  if (e.V.c_re == 0 && !ov.b && !ov.b1 && !ov.b2) {
    e.regime = "free";
    e.outside = left;
    e.inside = constants::big_K(d, delta);
    e.kato_yajima = constants::kappa(d);
    return e;
  }
  Subordination s = potential_subordination(e.V, d);
  if (e.V.c_re >= 0 && !ov.b1 && !ov.b2) {
    e.regime = "repulsive";
    e.b = ov.b.value_or(0.0);
    e.outside = left;
    e.inside = constants::big_K_b(d, delta, e.b);
    e.kato_yajima = constants::kappa_b(d, e.b);
    return e;
  }
  e.regime = "attractive";
  if (s.b1 >= 1)
    throw ConfigError("theorem hypothesis violated: b1 = sqrt(-cr)/d = " + num(s.b1) + " must be < 1");
  e.b1 = ov.b1.value_or(s.b1);
  e.b2 = ov.b2.value_or(s.b2);
  if (e.b1 < s.b1 || e.b2 < s.b2)
    throw ConfigError("theorem hypothesis violated: b1, b2 below the subordination constants of the potential (" +
                      num(s.b1) + ", " + num(s.b2) + ")");
  e.outside = left / (1 - e.b1 * e.b1);
  e.inside = constants::big_M(d, delta, e.b2);
  e.kato_yajima = constants::mu(d, e.b1, e.b2);
  return e;
}

EstimateOutcome estimate_check(const RadialProfile& u, const SpectralParam& lambda_in, const EstimateBounds& e,
                               const quad::Options& opt) {
  SpectralParam l = lambda_in;
  l.delta = e.delta;
  const int d = e.d;
  double rhs = std::sqrt(radial::rhs_norm_sq(u, l, d, e.V.c_re, opt));
  Region region = l.region();

  EstimateOutcome out;
  if (region == Region::outside_cone) {
    radial::RadialFn du = [&u](double r) { return u(r).d1; };
    double lhs = std::sqrt(radial::weighted_norm_sq(du, u.breakpoints(), d, {0, 1}, opt));
    out.gradient = make_record(lhs, rhs, e.outside, "gradient");
  } else {
    double lhs = std::sqrt(radial::gauged_gradient_norm_sq(u, l, d, radial::GaugeSign::minus, opt));
    out.gradient = make_record(lhs, rhs, e.inside, "gauged_gradient");
  }
  double ky = std::sqrt(radial::weighted_norm_sq(u, d, {-1, 1}, opt));
  out.kato_yajima = make_record(ky, rhs, e.kato_yajima, "kato_yajima");
  for (StressRecord* r : {&out.gradient, &out.kato_yajima}) {
    r->lambda = l;
    r->profile_spec = u.spec();
    r->potential_spec = e.V.spec();
    r->region = region;
  }
  return out;
}

EstimateOutcome estimate_check(const RadialProfile& u, const SpectralParam& lambda, int d, double delta,
                               const std::optional<PotentialSpec>& V, const quad::Options& opt) {
  return estimate_check(u, lambda, estimate_bounds(d, delta, V), opt);
}

}  // namespace kb::verify
