#include "kb/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kb/errors.hpp"
#include "kb/quadrature.hpp"

namespace kb::specfun {

namespace {

// Lanczos series, g = 671/128, 14 terms.
constexpr double kLanczos[14] = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

double lanczos(double x) {
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : kLanczos) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x must be > 0, got " + std::to_string(x));
  if (x == 1.0 || x == 2.0) return 0.0;
  return lanczos(x);
}

double beta_ratio(double alpha, double beta) {
  if (!(alpha > 0.0)) throw DomainError("beta_ratio: alpha must be > 0");
  if (!(beta > 0.0)) throw DomainError("beta_ratio: beta must be > 0");
  return std::exp(log_gamma(alpha / 2) + log_gamma((beta + 1) / 2) - log_gamma(beta / 2) -
                  log_gamma((alpha + 1) / 2));
}

double g_const(double d) {
  if (!(d > 0.0)) throw DomainError("g_const: d must be > 0");
  return beta_ratio(d + 1, d);
}

double g_const_gamma_route(double d) {
  if (!(d > 0.0)) throw DomainError("g_const: d must be > 0");
  double q = std::exp(log_gamma((d + 1) / 2) - log_gamma(d / 2));
  return 2.0 / d * q * q;
}

double vertical_integral(double alpha) {
  if (!(alpha > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(std::numbers::pi) *
         std::exp(log_gamma(alpha / 2) - log_gamma((alpha + 1) / 2));
}

VerticalQuadrature vertical_integral_quadrature(double alpha, double tail_tol) {
  if (!(alpha > 0.0)) throw DomainError("vertical_integral_quadrature: alpha must be > 0");
  double S = std::pow(2.0 / (alpha * tail_tol), 1.0 / alpha);
  S = std::max(S, 1.0);
  auto f = [alpha](double s) { return std::pow(1.0 + s * s, -(alpha + 1) / 2); };
  // [0,1] uniform, then one panel per octave.
  std::vector<double> breaks{0.0};
  for (double b = 1.0; b < S; b *= 2.0) breaks.push_back(b);
  breaks.push_back(S);
  quad::Options opt;
  opt.rel_tol = 1e-13;
  double half = quad::integrate(f, breaks, opt).value;
  VerticalQuadrature out;
  out.value = 2.0 * half;
  out.closed_form = vertical_integral(alpha);
  out.cutoff = S;
  out.tail_bound = 2.0 * std::pow(S, -alpha) / alpha;
  out.rel_diff = std::abs(out.value - out.closed_form) / out.closed_form;
  return out;
}

double sphere_area(int d) {
  if (d < 1) throw DomainError("sphere_area: d must be >= 1, got " + std::to_string(d));
  return 2.0 * std::pow(std::numbers::pi, d) / std::exp(log_gamma(d));
}

}  // namespace kb::specfun
