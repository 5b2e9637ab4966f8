#include "kb/numeric.hpp"

#include <algorithm>

#include "kb/errors.hpp"

namespace kb::numeric {

Root solve_bracketed(const std::function<double(double)>& f, double lo, double hi, double width,
                     const std::function<double(double)>& df) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return {lo, 0, 0};
  if (fhi == 0) return {hi, 0, 0};
  if ((flo > 0) == (fhi > 0)) throw DomainError("solve_bracketed: bracket does not change sign");
  int it = 0;
  while (hi - lo > width * std::max(1.0, std::abs(0.5 * (lo + hi))) && it < 400) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0) return {mid, 0, it};
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    ++it;
  }
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  double slope;
  if (df) {
    slope = df(x);
  } else {
    double h = 1e-6 * std::max(std::abs(x), 1e-12);
    slope = (f(x + h) - f(x - h)) / (2 * h);
  }
  if (slope != 0 && std::isfinite(slope)) {
    double xn = x - fx / slope;
    if (xn >= lo && xn <= hi) {
      double fn = f(xn);
      if (std::abs(fn) < std::abs(fx)) {
        x = xn;
        fx = fn;
      }
    }
  }
  return {x, fx, it};
}

Minimum golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0, std::abs(c) + std::abs(d))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

Minimum scan_golden(const std::function<double(double)>& f, double lo, double hi, int steps,
                    double tol) {
  double h = (hi - lo) / (steps - 1);
  int best = 0;
  double fbest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < steps; ++i) {
    double v = f(lo + i * h);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  double a = lo + std::max(best - 1, 0) * h;
  double b = lo + std::min(best + 1, steps - 1) * h;
  Minimum m = golden_section(f, a, b, tol);
  if (fbest < m.fx) return {lo + best * h, fbest};
  return m;
}

}  // namespace kb::numeric
