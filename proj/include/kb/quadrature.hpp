#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace kb::quad {

struct Rule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

Rule gauss_legendre(int n);
const Rule& gl64();

struct Options {
  int initial_panels = 2;
  int max_doublings = 10;
  double rel_tol = 1e-10;
  // Segments with hi/lo above this ratio get geometric panels.
  double geometric_ratio = 4.0;
};

struct Result {
  double value = 0;
  double abs_value = 0;  // ∫|f|, the scale for the convergence test
  int panels = 0;
  bool converged = false;
};

namespace detail {

template <class F>
void panel(F& f, const Rule& rule, double a, double b, double& sum, double& asum) {
  double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0, as = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double v = f(mid + half * rule.nodes[i]);
    s += rule.weights[i] * v;
    as += rule.weights[i] * std::abs(v);
  }
  sum += half * s;
  asum += half * as;
}

template <class F>
Result sweep(F& f, std::span<const double> breaks, const Options& opt, int level) {
  const Rule& rule = gl64();
  Result r;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    double a = breaks[k], b = breaks[k + 1];
    if (!(b > a)) continue;
    bool geometric = a > 0 && b / a > opt.geometric_ratio;
    int n = opt.initial_panels;
    if (geometric) n = std::max(n, static_cast<int>(std::ceil(std::log2(b / a))));
    n <<= level;
    if (geometric) {
      double q = std::pow(b / a, 1.0 / n);
      double lo = a;
      for (int i = 0; i < n; ++i) {
        double hi = (i + 1 == n) ? b : lo * q;
        panel(f, rule, lo, hi, r.value, r.abs_value);
        lo = hi;
      }
    } else {
      double h = (b - a) / n;
      for (int i = 0; i < n; ++i) {
        double hi = (i + 1 == n) ? b : a + (i + 1) * h;
        panel(f, rule, a + i * h, hi, r.value, r.abs_value);
      }
    }
    r.panels += n;
  }
  return r;
}

}  // namespace detail

// Composite 64-point Gauss-Legendre over the segments between consecutive
// breakpoints; panel counts double until successive sums agree.
template <class F>
Result integrate(F&& f, std::span<const double> breaks, const Options& opt = {}) {
  Result prev = detail::sweep(f, breaks, opt, 0);
  for (int level = 1; level <= opt.max_doublings; ++level) {
    Result cur = detail::sweep(f, breaks, opt, level);
    double scale = std::max(cur.abs_value, 1e-300);
    if (std::abs(cur.value - prev.value) <= opt.rel_tol * scale) {
      cur.converged = true;
      return cur;
    }
    prev = cur;
  }
  return prev;
}

template <class F>
Result integrate(F&& f, const std::vector<double>& breaks, const Options& opt = {}) {
  return integrate(f, std::span<const double>(breaks), opt);
}

}  // namespace kb::quad
