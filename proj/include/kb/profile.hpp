#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace kb::radial {

using cplx = std::complex<double>;

struct Jet {
  cplx v;
  cplx d1;
  cplx d2;
};

enum class Family { bump, spline_hat, power_cut, random_mix, custom };

// Compactly supported u⁰(r) with analytic first and second derivatives.
// Immutable; copies share the underlying evaluator.
class RadialProfile {
 public:
  using Eval = std::function<Jet(double)>;

  static RadialProfile bump(double c, double h);
  // cubic B-spline with knot spacing h, support [c-2h, c+2h]
  static RadialProfile spline_hat(double c, double h);
  // r^{-p+eps} times a smooth log-scale cutoff equal to 1 on [1,R], ramps of
  // log-width w (w <= 0 selects ln R)
  static RadialProfile power_cut(double p, double eps, double R, double w = 0);
  static RadialProfile random_mix(std::uint64_t seed, int n);
  static RadialProfile custom(std::string name, double r_lo, double r_hi, Eval eval,
                              std::vector<double> breaks = {});

  RadialProfile dilated(double k) const;

  Jet operator()(double r) const;
  Family family() const;
  double r_lo() const;
  double r_hi() const;
  const std::vector<double>& breakpoints() const;
  const std::string& spec() const;

 private:
  struct Impl;
  explicit RadialProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// `bump:c=2,h=1`, `spline:c=2,h=0.5`, `power:eps=0.1,R=100[,p=..,w=..]`,
// `mix:seed=42,n=3`. `d` supplies the default power exponent p = d.
RadialProfile parse_profile(std::string_view spec, int d);

// Deterministic family of `count` profiles; `family` is "all", "bump",
// "spline" or "mix".
std::vector<RadialProfile> make_profiles(int count, std::uint64_t seed, std::string_view family);

// Shortest round-trip decimal text of a double.
std::string format_number(double x);

}  // namespace kb::radial
