#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kb/errors.hpp"
#include "kb/radial.hpp"
#include "kb/specfun.hpp"
#include "oracle.hpp"

using namespace kb::radial;
using kb::specfun::sphere_area;
using kb::specfun::vertical_integral;
const double pi = std::numbers::pi;

namespace {

RadialProfile gaussian() {
  return RadialProfile::custom(
      "gauss", 0.0, 8.0, [](double r) -> Jet {
        double e = std::exp(-r * r / 2);
        return {e, -r * e, (r * r - 1) * e};
      });
}

std::vector<RadialProfile> sample_profiles() {
  return {RadialProfile::bump(2, 1), RadialProfile::spline_hat(2, 0.5), RadialProfile::random_mix(42, 3),
          RadialProfile::power_cut(1, 0.3, 10), RadialProfile::bump(1, 1)};
}

}  // namespace

TEST_CASE("profile derivatives match finite differences") {
  std::mt19937_64 rng(1);
  for (const RadialProfile& u : sample_profiles()) {
    auto v = [&](double r) { return u(r).v; };
    auto v1 = [&](double r) { return u(r).d1; };
    std::uniform_real_distribution<double> R(u.r_lo(), u.r_hi());
    int checked = 0;
    while (checked < 50) {
      double r = R(rng);
      bool near_break = false;
      for (double b : u.breakpoints()) near_break |= std::abs(r - b) < 1e-3;
      if (near_break) continue;
      Jet j = u(r);
      double s1 = std::max(std::abs(j.d1), 1e-3 * std::abs(j.v) + 1e-12);
      double s2 = std::max(std::abs(j.d2), 1e-3 * std::abs(j.d1) + 1e-12);
      CHECK(std::abs(oracle::fd1(v, r, 1e-6) - j.d1) < 1e-6 * s1 + 1e-9);
      CHECK(std::abs(oracle::fd1(v1, r, 1e-6) - j.d2) < 1e-6 * s2 + 1e-8);
      ++checked;
    }
    // vanishing at the support ends
    for (double r : {u.r_lo(), u.r_hi()}) {
      CHECK(std::abs(u(r).v) < 1e-12);
      CHECK(std::abs(u(r).d1) < 1e-12);
    }
    CHECK(std::abs(u(u.r_hi() + 1).v) == 0);
  }
}

TEST_CASE("profile spec grammar") {
  CHECK(parse_profile("bump:c=2,h=1", 1).spec() == "bump:c=2,h=1");
  CHECK(parse_profile("mix:seed=42,n=3", 1).spec() == "mix:seed=42,n=3");
  RadialProfile p = parse_profile("power:eps=0.1,R=100", 2);
  CHECK(p.family() == Family::power_cut);
  CHECK(p.spec().rfind("power:eps=0.1,R=100,p=2,", 0) == 0);
  CHECK(parse_profile(p.spec(), 5).spec() == p.spec());
  CHECK(parse_profile("spline:c=3,h=0.5", 1).r_hi() == 4.0);
  CHECK_THROWS_AS(parse_profile("bump:c=0.5,h=1", 1), kb::DomainError);
  CHECK_THROWS_AS(parse_profile("blob:c=1", 1), kb::ConfigError);
  CHECK_THROWS_AS(parse_profile("bump:c=2,q=1", 1), kb::ConfigError);
  CHECK_THROWS_AS(parse_profile("power:R=100", 1), kb::ConfigError);
  // the same seed gives the same profile
  RadialProfile a = RadialProfile::random_mix(9, 4), b = RadialProfile::random_mix(9, 4);
  for (double r = 0.5; r < 5; r += 0.37) CHECK(a(r).v == b(r).v);
  std::vector<RadialProfile> ps = make_profiles(9, 17, "all");
  std::vector<RadialProfile> qs = make_profiles(9, 17, "all");
  for (int i = 0; i < 9; ++i) CHECK(ps[i].spec() == qs[i].spec());
  CHECK(ps[0].family() == Family::bump);
  CHECK(ps[1].family() == Family::spline_hat);
  CHECK(ps[2].family() == Family::random_mix);
  for (const RadialProfile& u : ps) CHECK(u.r_lo() > 0);
}

TEST_CASE("koranyi gauge") {
  CHECK(koranyi_gauge(1, 0) == 1.0);
  CHECK(koranyi_gauge(0, 1) == 1.0);
  CHECK(koranyi_gauge(1, 1) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  CHECK(koranyi_gauge(0, 0) == 0.0);
  // horizontal gradient along X_j = ∂x_j + 2y_j∂t, Y_j = ∂y_j − 2x_j∂t has norm |z|/ρ
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 3;
    std::vector<double> x(d), y(d);
    for (int j = 0; j < d; ++j) {
      x[j] = U(rng);
      y[j] = U(rng);
    }
    double t = U(rng);
    auto rho = [&](const std::vector<double>& xx, const std::vector<double>& yy, double tt) {
      double z2 = 0;
      for (int j = 0; j < d; ++j) z2 += xx[j] * xx[j] + yy[j] * yy[j];
      return koranyi_gauge(std::sqrt(z2), tt);
    };
    double h = 1e-6, g2 = 0, z2 = 0;
    for (int j = 0; j < d; ++j) {
      z2 += x[j] * x[j] + y[j] * y[j];
      auto xp = x, xm = x, yp = y, ym = y;
      xp[j] += h;
      xm[j] -= h;
      double X = (rho(xp, y, t + 2 * y[j] * h) - rho(xm, y, t - 2 * y[j] * h)) / (2 * h);
      yp[j] += h;
      ym[j] -= h;
      double Y = (rho(x, yp, t - 2 * x[j] * h) - rho(x, ym, t + 2 * x[j] * h)) / (2 * h);
      g2 += X * X + Y * Y;
    }
    CHECK(std::abs(std::sqrt(g2) - std::sqrt(z2) / rho(x, y, t)) < 1e-5);
  }
}

TEST_CASE("spectral param") {
  SpectralParam a{1, 0.25, 0.25};
  CHECK(a.region() == Region::inside_cone);
  CHECK(SpectralParam{1, 0.26, 0.25}.region() == Region::outside_cone);
  CHECK(SpectralParam{-1, 0, 10}.region() == Region::outside_cone);
  CHECK(SpectralParam{0, 0, 1}.region() == Region::inside_cone);
  CHECK(SpectralParam{1, 0, 1}.sgn() == 1.0);
  CHECK(SpectralParam{1, -2, 1}.sgn() == -1.0);
}

TEST_CASE("weighted_norm_sq") {
  RadialProfile g = gaussian();
  CHECK(weighted_norm_sq(g, 1, {-1, 1}) == doctest::Approx(2 * pi).epsilon(1e-6));
  RadialProfile b = RadialProfile::bump(2, 1);
  double Q0 = oracle::integrate([&](double r) { return r * r * r * std::norm(b(r).v); }, 1, 3, 40);
  CHECK(weighted_norm_sq(b, 1, {0, 0}) == doctest::Approx(2 * pi * pi * Q0).epsilon(1e-10));
  CHECK(std::isinf(weighted_norm_sq(b, 1, {1, -1})));
  // divergent radial integral at the origin
  CHECK(std::isinf(weighted_norm_sq(g, 1, {-2, 0})));

  for (const RadialProfile& u : sample_profiles()) {
    for (int d = 1; d <= 3; ++d) {
      // dilation homogeneity
      for (Weight w : {Weight{0, 0}, Weight{-1, 1}, Weight{1, 0}, Weight{0.5, 2}}) {
        double base = weighted_norm_sq(u, d, w);
        for (double k : {0.5, 2.0, 3.0}) {
          double scaled = weighted_norm_sq(u.dilated(k), d, w);
          CHECK(oracle::rel(scaled, base * std::pow(k, 2 * d + 2 + 2 * w.a)) < 1e-10);
        }
      }
      // factorization consistency across vertical exponents
      double n1 = weighted_norm_sq(u, d, {0.3, 1}), n2 = weighted_norm_sq(u, d, {0.3, 2.5});
      CHECK(oracle::rel(n1 / n2, vertical_integral(d + 1) / vertical_integral(d + 2.5)) < 1e-13);
      // gauge modulus: |e^{-icr}u| = |u|
      SpectralParam l{2.0, 0.3, 1};
      double c = gauge_phase_coeff(l, d);
      RadialFn gauged = [&](double r) { return std::exp(cplx(0, -c * r)) * u(r).v; };
      CHECK(oracle::rel(weighted_norm_sq(gauged, u.breakpoints(), d, {-1, 1}),
                        weighted_norm_sq(u, d, {-1, 1})) < 1e-12);
    }
  }
}

TEST_CASE("weighted norms against the 2-D oracle") {
  RadialProfile u = RadialProfile::random_mix(5, 2);
  for (int d = 1; d <= 3; ++d) {
    for (Weight w : {Weight{0, 0}, Weight{-1, 1}, Weight{1, 0.5}}) {
      double ref = oracle::heisenberg_integral(
          [&](double rho, double om2) {
            return std::pow(rho, 2 * w.a) * std::pow(om2, w.b) * std::norm(u(rho).v);
          },
          d, u.r_lo(), u.r_hi());
      CHECK(oracle::rel(weighted_norm_sq(u, d, w), ref) < 1e-8);
    }
  }
}

TEST_CASE("sublaplacian profile") {
  RadialProfile sq = RadialProfile::custom("r2", 0, 1, [](double r) -> Jet { return {r * r, 2 * r, 2}; });
  for (int d = 1; d <= 4; ++d) {
    RadialFn A = sublaplacian_profile(sq, d);
    for (double r : {0.0, 0.1, 0.5, 0.9}) CHECK(std::abs(A(r) - cplx(4.0 * d + 4)) < 1e-12);
  }
  RadialProfile lin = RadialProfile::custom("lin", 0, 1, [](double r) -> Jet { return {r, 1, 0}; });
  CHECK_THROWS_AS(sublaplacian_profile(lin, 2)(0.0), kb::SingularityError);
  RadialProfile b = RadialProfile::bump(2, 1);
  auto v = [&](double r) { return b(r).v; };
  RadialFn A = sublaplacian_profile(b, 2);
  for (int i = 0; i < 50; ++i) {
    double r = 1.02 + i * 0.0392;
    cplx fd = oracle::fd2(v, r, 1e-4) + 5.0 * oracle::fd1(v, r, 1e-5) / r;
    CHECK(std::abs(fd - A(r)) < 1e-6 * std::max(1.0, std::abs(A(r))));
  }
}

TEST_CASE("gauge phase") {
  CHECK(gauge_phase_coeff({0, 3, 1}, 2) == 0.0);
  CHECK(gauge_phase_coeff({1, 1, 1}, 1) == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-14));
  CHECK(gauge_phase_coeff({1, 0, 1}, 1) == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-14));
  CHECK(gauge_phase_coeff({1, -1, 1}, 1) == doctest::Approx(-std::sqrt(pi / 2)).epsilon(1e-14));
  for (double d : {1.0, 2.0, 3.5, 7.0}) {
    SpectralParam l{2.7, -0.4, 1};
    CHECK(std::abs(gauge_phase_coeff(l, d) - gauge_phase_coeff_gamma(l, d)) < 1e-12);
  }
}

TEST_CASE("gauged gradient") {
  RadialProfile b = RadialProfile::bump(2, 1);
  for (int d = 1; d <= 3; ++d) {
    CHECK(oracle::rel(gauged_gradient_norm_sq(b, {0, 0.7, 1}, d),
                      weighted_norm_sq([&](double r) { return b(r).d1; }, b.breakpoints(), d, {0, 1})) < 1e-13);
    // real profile, λ₂ = 0: cross term vanishes
    SpectralParam l{1.5, 0, 1};
    double expect = weighted_norm_sq([&](double r) { return b(r).d1; }, b.breakpoints(), d, {0, 1}) +
                    1.5 / kb::specfun::g_const(d) * weighted_norm_sq(b, d, {0, 1});
    CHECK(oracle::rel(gauged_gradient_norm_sq(b, l, d), expect) < 1e-12);
  }
  // direct complex quadrature of |(e^{∓icr}u)'|²
  for (const RadialProfile& u : {b, RadialProfile::random_mix(3, 4)}) {
    for (GaugeSign sg : {GaugeSign::minus, GaugeSign::plus}) {
      SpectralParam l{1, 0.1, 1};
      double c = gauge_phase_coeff(l, 1) * (sg == GaugeSign::minus ? 1 : -1);
      RadialFn dv = [&](double r) {
        Jet j = u(r);
        return std::exp(cplx(0, -c * r)) * (j.d1 - cplx(0, c) * j.v);
      };
      CHECK(oracle::rel(gauged_gradient_norm_sq(u, l, 1, sg), weighted_norm_sq(dv, u.breakpoints(), 1, {0, 1})) < 1e-8);
    }
  }
  CHECK_THROWS_AS(gauged_gradient_norm_sq(b, {-1, 0, 1}, 2), kb::DomainError);
}

TEST_CASE("rhs_norm_sq") {
  RadialProfile b = RadialProfile::bump(2, 1);
  for (int d = 1; d <= 3; ++d) {
    RadialFn A = sublaplacian_profile(b, d);
    CHECK(oracle::rel(rhs_norm_sq(b, {0, 0, 1}, d),
                      weighted_norm_sq(A, b.breakpoints(), d, {1, 1})) < 1e-13);
  }
  CHECK(std::isinf(rhs_norm_sq(b, {0, 1, 1}, 1)));
  CHECK(std::isinf(rhs_norm_sq(b, {2, 0.1, 1}, 1)));
  // (ρ/ω)²|f|² integrated over the group with the numerical angular integral
  for (const RadialProfile& u : {b, RadialProfile::random_mix(8, 3)}) {
    for (int d = 2; d <= 3; ++d) {
      for (cplx lam : {cplx(1, 0), cplx(0.5, -2), cplx(-3, 1)}) {
        for (double cv : {0.0, -0.3}) {
          RadialFn A = sublaplacian_profile(u, d);
          double ref = oracle::heisenberg_integral(
              [&](double rho, double om2) {
                cplx f = om2 * (A(rho) - cv * u(rho).v / (rho * rho)) + lam * u(rho).v;
                return rho * rho / om2 * std::norm(f);
              },
              d, u.r_lo(), u.r_hi(), 16, 4);
          CHECK(oracle::rel(rhs_norm_sq(u, {lam.real(), lam.imag(), 1}, d, cv), ref) < 1e-6);
        }
      }
    }
  }
}
