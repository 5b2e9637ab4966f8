#pragma once

#include <cmath>
#include <functional>
#include <limits>

namespace kb::numeric {

struct Root {
  double x;
  double residual;
  int iterations;
};

// Bisection on a sign-changing bracket down to `width` (relative to max(1,|x|)),
// then one Newton step, kept only if it stays in the bracket and lowers |f|.
// Without `df` the derivative is a central difference.
Root solve_bracketed(const std::function<double(double)>& f, double lo, double hi,
                     double width = 1e-14,
                     const std::function<double(double)>& df = nullptr);

struct Minimum {
  double x;
  double fx;
};

Minimum golden_section(const std::function<double(double)>& f, double a, double b,
                       double tol = 1e-12);

// Uniform scan of `steps` points, then golden section around the best one.
Minimum scan_golden(const std::function<double(double)>& f, double lo, double hi, int steps,
                    double tol = 1e-12);

}  // namespace kb::numeric
