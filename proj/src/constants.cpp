#include "kb/constants.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "kb/errors.hpp"
#include "kb/numeric.hpp"

namespace kb::constants {

namespace {

void require_d(double d, const char* op) {
  if (!(d > 0.0)) throw DomainError(std::string(op) + ": d must be > 0");
}

void require_unit(double b, const char* op, const char* name) {
  if (!(b >= 0.0 && b < 1.0))
    throw DomainError(std::string(op) + ": " + name + " must lie in [0,1), got " + std::to_string(b));
}

struct Min1 {
  double value;
  double gamma;
};

Min1 min_kb(double d, double delta, double b) {
  if (delta == 0.0) return {(4 * d + 1) / (d * (1 - b * b)), 0.0};
  auto f = [&](double t) { return kb_objective(d, delta, b, std::exp(t)); };
  numeric::Minimum m = numeric::scan_golden(f, -30.0, std::log(d + 1) + 3.0, 600, 1e-12);
  return {m.fx, std::exp(m.x)};
}

struct Min2 {
  double value;
  double g1;
  double g2;
};

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

Min2 min_m(double d, double delta, double b2) {
  auto g = [&](double t1, double t2) { return m_objective(d, delta, b2, std::exp(t1), logistic(t2)); };
  const int n = 32;
  const double lo1 = -20.0, hi1 = std::log(d + 1) + 3.0;
  const double lo2 = -15.0, hi2 = 15.0;
  const double h1 = (hi1 - lo1) / (n - 1), h2 = (hi2 - lo2) / (n - 1);
  double t1 = lo1, t2 = lo2, best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = g(lo1 + i * h1, lo2 + j * h2);
      if (v < best) {
        best = v;
        t1 = lo1 + i * h1;
        t2 = lo2 + j * h2;
      }
    }
  double w1 = h1, w2 = h2;
  for (int pass = 0; pass < 5000; ++pass) {
    double before = best;
    numeric::Minimum m1 = numeric::golden_section([&](double x) { return g(x, t2); }, t1 - w1, t1 + w1);
    if (m1.fx < best) {
      w1 = std::clamp(4 * std::abs(m1.x - t1), 1e-9, h1);
      t1 = m1.x;
      best = m1.fx;
    }
    numeric::Minimum m2 = numeric::golden_section([&](double x) { return g(t1, x); }, t2 - w2, t2 + w2);
    if (m2.fx < best) {
      w2 = std::clamp(4 * std::abs(m2.x - t2), 1e-9, h2);
      t2 = m2.x;
      best = m2.fx;
    }
    if (before - best < 1e-12 * best) break;
  }
  return {best, std::exp(t1), logistic(t2)};
}

// Smallest δ at which the decreasing left branch meets the increasing right one.
numeric::Root branch_crossing(const std::function<double(double)>& diff) {
  double lo = 1e-6, hi = 1.0;
  while (diff(hi) > 0) hi *= 2.0;
  while (diff(lo) < 0) lo *= 0.01;
  return numeric::solve_bracketed(diff, lo, hi, 1e-14);
}

}  // namespace

double cubic_residual(double d, double delta, double g) {
  return std::sqrt(delta) * g * g * g + (4 * d + 1) * g * g - d * d;
}

double gamma_delta(double d, double delta) {
  require_d(d, "gamma_delta");
  if (!(delta >= 0.0)) throw DomainError("gamma_delta: delta must be >= 0");
  double hi = d / std::sqrt(4 * d + 1);
  if (delta == 0.0) return hi;
  double sd = std::sqrt(delta);
  auto f = [&](double g) { return cubic_residual(d, delta, g); };
  auto df = [&](double g) { return 3 * sd * g * g + 2 * (4 * d + 1) * g; };
  return numeric::solve_bracketed(f, 0.0, hi, 1e-14, df).x;
}

double big_K(double d, double delta) {
  double g = gamma_delta(d, delta);
  return d / (g * g);
}

double big_K_implicit_residual(double d, double delta, double K) {
  return std::sqrt(d * delta) * std::pow(K, -1.5) + (4 * d + 1) / K - d;
}

double big_K_implicit(double d, double delta) {
  require_d(d, "big_K");
  if (!(delta >= 0.0)) throw DomainError("big_K: delta must be >= 0");
  double lo = (4 * d + 1) / d;
  if (delta == 0.0) return lo;
  double hi = 2 * lo;
  while (big_K_implicit_residual(d, delta, hi) > 0) hi *= 2;
  auto f = [&](double K) { return big_K_implicit_residual(d, delta, K); };
  auto df = [&](double K) { return -1.5 * std::sqrt(d * delta) * std::pow(K, -2.5) - (4 * d + 1) / (K * K); };
  return numeric::solve_bracketed(f, lo, hi, 1e-14, df).x;
}

double big_K_minimized(double d, double delta) {
  require_d(d, "big_K");
  if (!(delta >= 0.0)) throw DomainError("big_K: delta must be >= 0");
  return min_kb(d, delta, 0.0).value;
}

double delta_star_residual(double d, double x) { return x * x / std::sqrt(1 + x) + 4 * x - 1 / d; }

double delta_star(double d) {
  require_d(d, "delta_star");
  auto f = [&](double x) { return delta_star_residual(d, x); };
  auto df = [&](double x) {
    double s = std::sqrt(1 + x);
    return 2 * x / s - 0.5 * x * x / (s * s * s) + 4;
  };
  return numeric::solve_bracketed(f, 0.0, 1 / (4 * d), 1e-14, df).x;
}

double kappa(double d) {
  double ds = delta_star(d);
  return (1 + 1 / ds) / (d * d);
}

double kappa_residual(double d, double k) {
  double ik = 1 / k;
  return ik * ik / std::sqrt(d * d - ik) + (4 * d + 1) * ik - d * d;
}

double kb_objective(double d, double delta, double b, double g) {
  double s = std::sqrt(delta), c = 1 - b * b;
  double A = (8 * d + 2 + g * s) / (4 * d * c);
  return A + std::sqrt(A * A + s / (2 * g * c));
}

double big_K_b(double d, double delta, double b) {
  require_d(d, "big_K_b");
  require_unit(b, "big_K_b", "b");
  if (!(delta >= 0.0)) throw DomainError("big_K_b: delta must be >= 0");
  return min_kb(d, delta, b).value;
}

double kappa_b(double d, double b) { return report_kappa_b(d, b).value; }

double m_objective(double d, double delta, double b2, double g1, double g2) {
  double s = std::sqrt(delta), c = 1 - b2 * b2, den = c * (1 - g2 * g2);
  double extra = s / (8 * d * g2);
  double a = (4 * d + 1 + g1 * s / 2 + extra * extra / c) / (2 * d * den);
  double bb = s / (2 * g1 * den);
  return a + std::sqrt(a * a + bb);
}

double big_M(double d, double delta, double b2) {
  require_d(d, "big_M");
  require_unit(b2, "big_M", "b2");
  if (!(delta > 0.0)) throw DomainError("big_M: delta must be > 0");
  return min_m(d, delta, b2).value;
}

double mu(double d, double b1, double b2) { return report_mu(d, b1, b2).value; }

double b3_max(double d, double b1, double b2) {
  require_d(d, "b3_max");
  require_unit(b1, "b3_max", "b1");
  require_unit(b2, "b3_max", "b2");
  double s1 = std::sqrt(1 - b1 * b1);
  double X = 1 / (8 * d) + (4 * d + 1) * s1 / 2;
  double Y = d * (1 - b2 * b2) * s1;
  // -X + √(X²+Y) without cancellation
  return Y / (X + std::sqrt(X * X + Y));
}

Window delta_tilde_window(double d, double b1, double b2, double b3) {
  require_d(d, "delta_tilde_window");
  require_unit(b1, "delta_tilde_window", "b1");
  require_unit(b2, "delta_tilde_window", "b2");
  if (!(b3 >= 0.0)) throw DomainError("delta_tilde_window: b3 must be >= 0");
  if (b3 == 0.0) return {0.0, std::numeric_limits<double>::infinity(), false};
  double slo = std::sqrt(b3 / (d * (1 - b1 * b1)));
  double shi = std::sqrt(d / b3) * (1 - b2 * b2 - (4 * d + 1) * b3 / d) / (1 / (4 * d) + b3);
  Window w{slo * slo, shi > 0 ? shi * shi : 0.0, true};
  w.empty = !(shi - slo > 1e-12 * std::max(std::abs(slo), std::abs(shi)));
  return w;
}

double euclidean_dim(double de) {
  if (!(de > 2.0))
    throw DomainError("euclidean_dim: Euclidean dimension must be > 2, got " + std::to_string(de));
  return de / 2 - 1;
}

V1Certificate v1_certificate(double d, double b) {
  require_d(d, "v1_certificate");
  if (!(b >= 0.0)) throw DomainError("v1_certificate: b must be >= 0");
  double ds = delta_star(d);
  double k = (1 + 1 / ds) / (d * d);
  V1Certificate c;
  c.threshold = 1 / (d * k);
  c.admissible = b < c.threshold;
  c.outside_margin = 1 - b * (1 + 1 / ds) / d;
  c.inside_margin = 1 - std::pow(b, 1.5) * std::sqrt(ds / d) - b * (4 * d + 1) / d;
  c.margin = std::min(c.outside_margin, c.inside_margin);
  return c;
}

ConstantReport report_gamma_delta(double d, double delta) {
  ConstantReport r{"gamma_delta", d, {{"delta", delta}}, gamma_delta(d, delta), 0, {}, delta == 0.0};
  r.residual = cubic_residual(d, delta, r.value);
  return r;
}

ConstantReport report_big_K(double d, double delta) {
  double g = gamma_delta(d, delta);
  ConstantReport r{"big_K", d, {{"delta", delta}}, d / (g * g), 0, {{"gamma_delta", g}}, delta == 0.0};
  r.residual = big_K_implicit_residual(d, delta, r.value);
  return r;
}

ConstantReport report_delta_star(double d) {
  double ds = delta_star(d);
  double g = gamma_delta(d, ds);
  return {"delta_star", d, {}, ds, delta_star_residual(d, ds), {{"gamma_delta_star", g}}, false};
}

ConstantReport report_kappa(double d) {
  double ds = delta_star(d);
  double k = (1 + 1 / ds) / (d * d);
  return {"kappa", d, {}, k, kappa_residual(d, k), {{"delta_star", ds}}, false};
}

ConstantReport report_big_K_b(double d, double delta, double b) {
  require_d(d, "big_K_b");
  require_unit(b, "big_K_b", "b");
  if (!(delta >= 0.0)) throw DomainError("big_K_b: delta must be >= 0");
  Min1 m = min_kb(d, delta, b);
  ConstantReport r{"big_K_b", d, {{"delta", delta}, {"b", b}}, m.value, 0, {}, delta == 0.0};
  if (delta > 0.0) {
    r.witness["gamma"] = m.gamma;
    r.residual = std::abs(kb_objective(d, delta, b, m.gamma) - m.value);
  }
  return r;
}

ConstantReport report_kappa_b(double d, double b) {
  require_d(d, "kappa_b");
  require_unit(b, "kappa_b", "b");
  auto left = [&](double x) { return (1 + 1 / x) / (d * d); };
  auto diff = [&](double x) { return left(x) - min_kb(d, x, b).value / d; };
  numeric::Root root = branch_crossing(diff);
  double right = min_kb(d, root.x, b).value / d;
  return {"kappa_b", d, {{"b", b}}, std::max(left(root.x), right), left(root.x) - right,
          {{"delta", root.x}}, false};
}

ConstantReport report_big_M(double d, double delta, double b2) {
  require_d(d, "big_M");
  require_unit(b2, "big_M", "b2");
  if (!(delta > 0.0)) throw DomainError("big_M: delta must be > 0");
  Min2 m = min_m(d, delta, b2);
  ConstantReport r{"big_M", d, {{"delta", delta}, {"b2", b2}}, m.value, 0,
                   {{"gamma1", m.g1}, {"gamma2", m.g2}}, false};
  r.residual = std::abs(m_objective(d, delta, b2, m.g1, m.g2) - m.value);
  return r;
}

ConstantReport report_mu(double d, double b1, double b2) {
  require_d(d, "mu");
  require_unit(b1, "mu", "b1");
  require_unit(b2, "mu", "b2");
  auto left = [&](double x) { return (1 + 1 / x) / (d * d * (1 - b1 * b1)); };
  auto diff = [&](double x) { return left(x) - min_m(d, x, b2).value / d; };
  numeric::Root root = branch_crossing(diff);
  double right = min_m(d, root.x, b2).value / d;
  return {"mu", d, {{"b1", b1}, {"b2", b2}}, std::max(left(root.x), right), left(root.x) - right,
          {{"delta", root.x}}, false};
}

ConstantReport report_b3_max(double d, double b1, double b2) {
  double v = b3_max(d, b1, b2);
  double s1 = std::sqrt(1 - b1 * b1);
  double res = v * v + (1 / (4 * d) + (4 * d + 1) * s1) * v - d * (1 - b2 * b2) * s1;
  return {"b3_max", d, {{"b1", b1}, {"b2", b2}}, v, res, {}, false};
}

}  // namespace kb::constants
