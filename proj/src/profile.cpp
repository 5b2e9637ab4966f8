#include "kb/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <random>

#include "kb/errors.hpp"

namespace kb::radial {

struct RadialProfile::Impl {
  Family family;
  std::string spec;
  double lo;
  double hi;
  std::vector<double> breaks;
  Eval eval;
};

namespace {

double unit_double(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& g, double a, double b) { return a + (b - a) * unit_double(g); }

// e^{-1/(1-x²)} and its x-derivatives
void bump_jet(double x, double& u, double& u1, double& u2) {
  double q = 1 - x * x;
  if (q <= 1e-3) {
    u = u1 = u2 = 0;
    return;
  }
  u = std::exp(-1 / q);
  double g1 = -2 * x / (q * q);
  double g2 = -2 / (q * q) - 8 * x * x / (q * q * q);
  u1 = u * g1;
  u2 = u * (g1 * g1 + g2);
}

// C^∞ step: 0 for x<=0, 1 for x>=1
void smooth_step(double x, double& s, double& s1, double& s2) {
  if (x <= 1e-3) {
    s = s1 = s2 = 0;
    return;
  }
  if (x >= 1 - 1e-3) {
    s = 1;
    s1 = s2 = 0;
    return;
  }
  double y = 1 - x;
  double phi = 1 / x - 1 / y;
  double p1 = -1 / (x * x) - 1 / (y * y);
  double p2 = 2 / (x * x * x) - 2 / (y * y * y);
  s = 1 / (1 + std::exp(phi));
  double t = s * (1 - s);
  s1 = -t * p1;
  s2 = -((1 - 2 * s) * s1 * p1 + t * p2);
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

RadialProfile RadialProfile::bump(double c, double h) {
  if (!(h > 0) || !(c - h >= 0)) throw DomainError("bump: need h > 0 and c - h >= 0");
  auto eval = [c, h](double r) -> Jet {
    double u, u1, u2;
    bump_jet((r - c) / h, u, u1, u2);
    return {u, u1 / h, u2 / (h * h)};
  };
  std::string spec = "bump:c=" + format_number(c) + ",h=" + format_number(h);
  return RadialProfile(std::make_shared<Impl>(
      Impl{Family::bump, spec, c - h, c + h, {c - h, c, c + h}, eval}));
}

RadialProfile RadialProfile::spline_hat(double c, double h) {
  if (!(h > 0) || !(c - 2 * h >= 0)) throw DomainError("spline: need h > 0 and c - 2h >= 0");
  auto eval = [c, h](double r) -> Jet {
    double x = (r - c) / h, ax = std::abs(x);
    double b = 0, b1 = 0, b2 = 0;
    if (ax < 1) {
      b = 2.0 / 3 - x * x + 0.5 * ax * ax * ax;
      b1 = -2 * x + 1.5 * x * ax;
      b2 = -2 + 3 * ax;
    } else if (ax < 2) {
      double m = 2 - ax;
      b = m * m * m / 6;
      b1 = (x > 0 ? -1 : 1) * 0.5 * m * m;
      b2 = m;
    }
    return {b, b1 / h, b2 / (h * h)};
  };
  std::string spec = "spline:c=" + format_number(c) + ",h=" + format_number(h);
  std::vector<double> br;
  for (int k = -2; k <= 2; ++k) br.push_back(c + k * h);
  return RadialProfile(
      std::make_shared<Impl>(Impl{Family::spline_hat, spec, c - 2 * h, c + 2 * h, br, eval}));
}

RadialProfile RadialProfile::power_cut(double p, double eps, double R, double w) {
  if (!(eps > 0)) throw DomainError("power: eps must be > 0");
  if (!(R > 1)) throw DomainError("power: R must be > 1");
  double L = std::log(R);
  if (!(w > 0)) w = L;
  double e = -p + eps;
  auto eval = [e, w, L](double r) -> Jet {
    double l = std::log(r);
    double a, a1, a2, b, b1, b2;
    smooth_step((l + w) / w, a, a1, a2);
    smooth_step((l - L) / w, b, b1, b2);
    double wr = w * r;
    // χ = a·(1-b) as functions of r
    double ca = a, ca1 = a1 / wr, ca2 = a2 / (wr * wr) - a1 / (w * r * r);
    double cb = 1 - b, cb1 = -b1 / wr, cb2 = -b2 / (wr * wr) + b1 / (w * r * r);
    double chi = ca * cb, chi1 = ca1 * cb + ca * cb1, chi2 = ca2 * cb + 2 * ca1 * cb1 + ca * cb2;
    double re = std::pow(r, e);
    double u = re * chi;
    double u1 = re * (e * chi / r + chi1);
    double u2 = re * (e * (e - 1) * chi / (r * r) + 2 * e * chi1 / r + chi2);
    return {u, u1, u2};
  };
  std::string spec = "power:eps=" + format_number(eps) + ",R=" + format_number(R) +
                     ",p=" + format_number(p) + ",w=" + format_number(w);
  double lo = std::exp(-w), hi = R * std::exp(w);
  return RadialProfile(
      std::make_shared<Impl>(Impl{Family::power_cut, spec, lo, hi, {lo, 1.0, R, hi}, eval}));
}

RadialProfile RadialProfile::random_mix(std::uint64_t seed, int n) {
  if (n < 1 || n > 5) throw DomainError("mix: n must be in 1..5");
  std::mt19937_64 g(seed);
  struct Term {
    double c, h;
    cplx coef;
  };
  std::vector<Term> terms;
  std::vector<double> br;
  for (int i = 0; i < n; ++i) {
    Term t;
    t.c = uniform(g, 1.0, 4.0);
    t.h = uniform(g, 0.3, 1.0);
    double re = uniform(g, -1.0, 1.0), im = uniform(g, -1.0, 1.0);
    t.coef = cplx(re, im);
    terms.push_back(t);
    br.insert(br.end(), {t.c - t.h, t.c, t.c + t.h});
  }
  std::sort(br.begin(), br.end());
  auto eval = [terms](double r) -> Jet {
    Jet j{0, 0, 0};
    for (const Term& t : terms) {
      double u, u1, u2;
      bump_jet((r - t.c) / t.h, u, u1, u2);
      j.v += t.coef * u;
      j.d1 += t.coef * (u1 / t.h);
      j.d2 += t.coef * (u2 / (t.h * t.h));
    }
    return j;
  };
  std::string spec = "mix:seed=" + std::to_string(seed) + ",n=" + std::to_string(n);
  return RadialProfile(
      std::make_shared<Impl>(Impl{Family::random_mix, spec, br.front(), br.back(), br, eval}));
}

RadialProfile RadialProfile::custom(std::string name, double lo, double hi, Eval eval,
                                    std::vector<double> breaks) {
  if (!(lo >= 0 && hi > lo)) throw DomainError("custom profile: need 0 <= r_lo < r_hi");
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return RadialProfile(
      std::make_shared<Impl>(Impl{Family::custom, std::move(name), lo, hi, breaks, std::move(eval)}));
}

RadialProfile RadialProfile::dilated(double k) const {
  if (!(k > 0)) throw DomainError("dilated: k must be > 0");
  auto inner = impl_;
  auto eval = [inner, k](double r) -> Jet {
    Jet j = inner->eval(r / k);
    return {j.v, j.d1 / k, j.d2 / (k * k)};
  };
  std::vector<double> br = impl_->breaks;
  for (double& b : br) b *= k;
  return RadialProfile(std::make_shared<Impl>(Impl{impl_->family,
                                                   "dilate:k=" + format_number(k) + ";" + impl_->spec,
                                                   impl_->lo * k, impl_->hi * k, br, eval}));
}

Jet RadialProfile::operator()(double r) const {
  if (r < impl_->lo || r > impl_->hi) return {0, 0, 0};
  return impl_->eval(r);
}

Family RadialProfile::family() const { return impl_->family; }
double RadialProfile::r_lo() const { return impl_->lo; }
double RadialProfile::r_hi() const { return impl_->hi; }
const std::vector<double>& RadialProfile::breakpoints() const { return impl_->breaks; }
const std::string& RadialProfile::spec() const { return impl_->spec; }

RadialProfile parse_profile(std::string_view spec, int d) {
  auto colon = spec.find(':');
  std::string family(spec.substr(0, colon));
  std::map<std::string, double> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("profile spec: expected key=value, got '" + std::string(item) + "'");
      std::string key(item.substr(0, eq));
      std::string_view val = item.substr(eq + 1);
      double x;
      auto res = std::from_chars(val.data(), val.data() + val.size(), x);
      if (res.ec != std::errc() || res.ptr != val.data() + val.size())
        throw ConfigError("profile spec: bad number for '" + key + "'");
      kv[key] = x;
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  auto take = [&](const char* key, std::optional<double> def = std::nullopt) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (!def) throw ConfigError("profile spec '" + std::string(spec) + "': missing '" + key + "'");
      return *def;
    }
    double v = it->second;
    kv.erase(it);
    return v;
  };
  RadialProfile out = [&] {
    if (family == "bump") {
      double c = take("c", 2.0), h = take("h", 1.0);
      return RadialProfile::bump(c, h);
    }
    if (family == "spline") {
      double c = take("c", 2.0), h = take("h", 0.5);
      return RadialProfile::spline_hat(c, h);
    }
    if (family == "power") {
      double eps = take("eps"), R = take("R"), p = take("p", d), w = take("w", 0.0);
      return RadialProfile::power_cut(p, eps, R, w);
    }
    if (family == "mix") {
      double seed = take("seed", 0.0), n = take("n", 3.0);
      if (seed < 0 || seed != std::floor(seed) || n != std::floor(n))
        throw ConfigError("mix: seed and n must be non-negative integers");
      return RadialProfile::random_mix(static_cast<std::uint64_t>(seed), static_cast<int>(n));
    }
    throw ConfigError("unknown profile family '" + family + "'");
  }();
  if (!kv.empty()) throw ConfigError("profile spec: unknown key '" + kv.begin()->first + "'");
  return out;
}

std::vector<RadialProfile> make_profiles(int count, std::uint64_t seed, std::string_view family) {
  static const char* kCycle[] = {"bump", "spline", "mix"};
  if (family != "all" && family != "bump" && family != "spline" && family != "mix")
    throw ConfigError("unknown profile family filter '" + std::string(family) + "'");
  std::vector<RadialProfile> out;
  for (int i = 0; i < count; ++i) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(i)};
    std::mt19937_64 g(sq);
    std::string_view f = family == "all" ? kCycle[i % 3] : family;
    if (f == "bump") {
      double c = uniform(g, 0.8, 4.0);
      double h = uniform(g, 0.2, std::min(0.9 * c, 1.5));
      out.push_back(RadialProfile::bump(c, h));
    } else if (f == "spline") {
      double c = uniform(g, 1.0, 4.0);
      double h = uniform(g, 0.1, std::min(0.45 * c, 0.8));
      out.push_back(RadialProfile::spline_hat(c, h));
    } else {
      int n = 1 + static_cast<int>(g() % 5);
      out.push_back(RadialProfile::random_mix(g(), n));
    }
  }
  return out;
}

}  // namespace kb::radial
