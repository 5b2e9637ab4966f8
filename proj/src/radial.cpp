#include "kb/radial.hpp"

#include <cmath>
#include <limits>

#include "kb/errors.hpp"
#include "kb/specfun.hpp"

namespace kb::radial {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double radial_integral(const std::function<double(double)>& h, std::span<const double> breaks,
                       const quad::Options& opt) {
  return quad::integrate(h, breaks, opt).value;
}

}  // namespace

const char* to_string(Region r) { return r == Region::inside_cone ? "inside" : "outside"; }

Region SpectralParam::region() const {
  return std::abs(lambda2) <= delta * lambda1 ? Region::inside_cone : Region::outside_cone;
}

double SpectralParam::sgn() const { return lambda2 < 0 ? -1.0 : 1.0; }

double koranyi_gauge(double z, double t) { return std::pow(z * z * z * z + t * t, 0.25); }

double reduced_integral(const std::function<double(double)>& h, std::span<const double> breaks,
                        int d, double beta, const quad::Options& opt) {
  const double p = 2.0 * d + 1;
  double rad = radial_integral([&](double r) { return std::pow(r, p) * h(r); }, breaks, opt);
  double vert = specfun::vertical_integral(d + beta);
  if (std::isinf(vert)) return rad == 0 ? 0.0 : std::copysign(kInf, rad);
  return specfun::sphere_area(d) * vert * rad;
}

double weighted_norm_sq(const RadialFn& g, std::span<const double> breaks, int d, Weight w,
                        const quad::Options& opt) {
  const double p = 2.0 * d + 1 + 2 * w.a;
  if (!breaks.empty() && breaks.front() == 0 && p <= -1 && std::abs(g(0.0)) != 0) return kInf;
  double rad = radial_integral([&](double r) { return std::pow(r, p) * std::norm(g(r)); }, breaks, opt);
  double vert = specfun::vertical_integral(d + w.b);
  if (std::isinf(vert)) return rad == 0 ? 0.0 : kInf;
  return specfun::sphere_area(d) * vert * rad;
}

double weighted_norm_sq(const RadialProfile& u, int d, Weight w, const quad::Options& opt) {
  return weighted_norm_sq([&u](double r) { return u(r).v; }, u.breakpoints(), d, w, opt);
}

RadialFn sublaplacian_profile(const RadialProfile& u, int d) { return horizontal_part(u, d, 0.0); }

RadialFn horizontal_part(const RadialProfile& u, int d, double c) {
  return [u, d, c](double r) -> cplx {
    Jet j = u(r);
    if (r == 0) {
      if (std::abs(j.d1) != 0) throw SingularityError("sublaplacian_profile: u'(0) != 0");
      if (c != 0 && std::abs(j.v) != 0) throw SingularityError("potential term singular at r = 0");
      return (2.0 * d + 2) * j.d2;
    }
    return j.d2 + (2.0 * d + 1) * j.d1 / r - c * j.v / (r * r);
  };
}

double gauge_phase_coeff(const SpectralParam& l, double d) {
  return l.sgn() * std::sqrt(std::abs(l.lambda1) / specfun::g_const(d));
}

double gauge_phase_coeff_gamma(const SpectralParam& l, double d) {
  return l.sgn() * std::sqrt(d / 2) *
         std::exp(specfun::log_gamma(d / 2) - specfun::log_gamma((d + 1) / 2)) *
         std::sqrt(std::abs(l.lambda1));
}

double gauged_gradient_norm_sq(const RadialProfile& u, const SpectralParam& l, int d, GaugeSign sign,
                               const quad::Options& opt) {
  if (l.lambda1 < 0) throw DomainError("gauged_gradient_norm_sq: gauge needs lambda1 >= 0");
  double c = gauge_phase_coeff(l, d);
  if (sign == GaugeSign::plus) c = -c;
  auto h = [&](double r) {
    Jet j = u(r);
    return std::norm(j.d1) + c * c * std::norm(j.v) - 2 * c * (std::conj(j.v) * j.d1).imag();
  };
  return reduced_integral(h, u.breakpoints(), d, 1.0, opt);
}

double rhs_norm_sq(const RadialProfile& u, const SpectralParam& l, int d, double c_re,
                   const quad::Options& opt) {
  RadialFn a = horizontal_part(u, d, c_re);
  const cplx lam = l.value();
  auto r2 = [](double r) { return r * r; };
  double t1 = reduced_integral([&](double r) { return r2(r) * std::norm(a(r)); }, u.breakpoints(), d, 1.0, opt);
  if (lam == cplx(0)) return t1;
  double t2 = reduced_integral(
      [&](double r) { return r2(r) * 2 * (lam * std::conj(a(r)) * u(r).v).real(); }, u.breakpoints(), d, 0.0,
      opt);
  double t3 = reduced_integral([&](double r) { return r2(r) * std::norm(lam) * std::norm(u(r).v); },
                               u.breakpoints(), d, -1.0, opt);
  if (std::isinf(t3)) return kInf;
  return t1 + t2 + t3;
}

}  // namespace kb::radial
