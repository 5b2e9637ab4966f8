// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kb/constants.hpp"
#include "kb/profile.hpp"
#include "kb/report.hpp"
#include "kb/specfun.hpp"
#include "kb/stress.hpp"
#include "kb/verify.hpp"

using namespace kb;

namespace {

// pinned tolerances
constexpr double table_tol = 1e-5;
constexpr double table_seconds = 1.0;
constexpr double implicit_tol = 1e-10;
constexpr double implicit_seconds = 5.0;
constexpr double vertical_tol = 1e-8;
constexpr double g_route_tol = 1e-12;
constexpr double identity_tol = 1e-6;
constexpr double identity_seconds = 120.0;
constexpr double stress_seconds = 300.0;
constexpr double hardy_slack = 1e-12;
constexpr double sharpness_fraction = 0.95;
constexpr double v1_tol = 1e-10;
constexpr double b3_tol = 1e-6;
constexpr double euclid_tol = 1e-5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %d %s (%.3fs) %s\n", o.pass ? "PASS" : "FAIL", id, name, s, o.detail.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct ReferenceRow {
  int d;
  double delta_star, kappa;
};
constexpr ReferenceRow reference_rows[] = {
    {1, 0.23734, 5.21337}, {2, 0.121514, 2.30737}, {3, 0.0817278, 1.47064},
    {4, 0.0615799, 1.07744}, {5, 0.0494043, 0.849645},
};

Outcome table() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const auto& p : reference_rows) {
    worst = std::max(worst, std::abs(constants::delta_star(p.d) - p.delta_star));
    worst = std::max(worst, std::abs(constants::kappa(p.d) - p.kappa));
  }
  double s = elapsed_since(t0);
  return {worst <= table_tol && s < table_seconds, fmt("max |diff| = %.3g", worst)};
}

Outcome implicit_residuals() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  bool lower = true;
  for (int d = 1; d <= 10; ++d) {
    for (int i = 0; i < 20; ++i) {
      double delta = std::pow(10.0, -4 + 5.0 * i / 19);
      double g = constants::gamma_delta(d, delta);
      worst = std::max(worst, std::abs(constants::cubic_residual(d, delta, g)));
      worst = std::max(worst, std::abs(constants::big_K_implicit_residual(d, delta, constants::big_K(d, delta))));
    }
    worst = std::max(worst, std::abs(constants::delta_star_residual(d, constants::delta_star(d))));
    double k = constants::kappa(d);
    worst = std::max(worst, std::abs(constants::kappa_residual(d, k)));
    lower = lower && k > (4.0 * d + 1) / (1.0 * d * d);
  }
  double s = elapsed_since(t0);
  return {worst < implicit_tol && lower && s < implicit_seconds,
          fmt("max residual = %.3g, kappa lower bound ", worst) + (lower ? "holds" : "fails")};
}

Outcome closed_forms() {
  double worst_v = 0, worst_g = 0;
  for (double a : {0.5, 1.0, 2.0, 3.0, 7.0}) {
    auto q = specfun::vertical_integral_quadrature(a);
    worst_v = std::max(worst_v, std::abs(q.value - specfun::vertical_integral(a)) / specfun::vertical_integral(a));
  }
  for (int d = 1; d <= 8; ++d) {
    double a = specfun::g_const(d), b = specfun::g_const_gamma_route(d);
    worst_g = std::max(worst_g, std::abs(a - b) / std::abs(b));
  }
  return {worst_v < vertical_tol && worst_g < g_route_tol,
          fmt("vertical rel = %.3g, G_d routes rel = %.3g", worst_v, worst_g)};
}

Outcome identities() {
  auto t0 = std::chrono::steady_clock::now();
  using verify::Identity;
  const Identity plain[] = {Identity::energy_real, Identity::energy_imag, Identity::virial, Identity::key};
  double worst = 0;
  int trials = 0, skipped = 0, min_per_d = 1 << 30;
  int keyv = 0;
  std::mt19937_64 g(20240917);
  std::uniform_real_distribution<double> U(0, 1);
  for (int d = 1; d <= 5; ++d) {
    double delta = constants::delta_star(d);
    auto profiles = radial::make_profiles(20, 1000 + d, "all");
    int per_d = 0;
    for (int t = 0; t < 120; ++t) {
      const auto& u = profiles[t % profiles.size()];
      // general λ for the three energy identities, cone-interior λ for the key identity
      radial::SpectralParam gen{-3 + 9 * U(g), -5 + 10 * U(g), delta};
      double l1 = 0.1 + 6 * U(g);
      radial::SpectralParam in{l1, delta * l1 * (2 * U(g) - 1), delta};
      bool all_ok = true;
      for (Identity w : plain) {
        auto r = verify::identity_residual(u, w == Identity::key ? in : gen, d, w);
        if (!r.testable) {
          ++skipped;
          continue;
        }
        worst = std::max(worst, r.residual);
        all_ok = all_ok && r.residual < identity_tol;
      }
      per_d += all_ok;
      ++trials;
    }
    for (int t = 0; t < 12; ++t) {
      const auto& u = profiles[t % profiles.size()];
      double l1 = 0.1 + 6 * U(g);
      radial::SpectralParam in{l1, delta * l1 * (2 * U(g) - 1), delta};
      double cr = (t % 2 ? 0.6 : -0.2) * d;
      auto r = verify::identity_residual(u, in, d, Identity::keyV, verify::PotentialSpec{cr, 0});
      if (!r.testable) {
        ++skipped;
        continue;
      }
      worst = std::max(worst, r.residual);
      keyv += r.residual < identity_tol;
    }
    min_per_d = std::min(min_per_d, per_d);
  }
  double s = elapsed_since(t0);
  bool ok = worst < identity_tol && min_per_d >= 100 && keyv >= 50 && s < identity_seconds;
  std::ostringstream o;
  o << "trials=" << trials << " min_passing_per_d=" << min_per_d << " keyV_passing=" << keyv
    << " skipped=" << skipped << " max_residual=" << report::num17(worst);
  return {ok, o.str()};
}

Outcome stress_estimates() {
  auto t0 = std::chrono::steady_clock::now();
  nlohmann::ordered_json persisted = nlohmann::ordered_json::array();
  std::size_t violations = 0, errors = 0, id_fail = 0;
  int min_pairs = 1 << 30, min_inside = 1 << 30, min_outside = 1 << 30;
  double worst = 0;
  for (int d = 1; d <= 5; ++d) {
    double delta = constants::delta_star(d);
    std::vector<std::pair<double, double>> lambdas;
    for (int i = 0; i < 25; ++i) {
      double l1 = 0.05 * std::pow(200.0, i / 24.0);
      double t = -0.95 + 1.9 * i / 24.0;
      lambdas.emplace_back(l1, delta * l1 * t);               // inside the cone
      lambdas.emplace_back(l1 - 2.0, (i % 2 ? 1 : -1) * (delta * std::abs(l1 - 2.0) + 0.1 + 0.2 * i));  // outside
    }
    const std::optional<verify::PotentialSpec> potentials[] = {
        std::nullopt, verify::PotentialSpec{0.5 * d, 0}, verify::PotentialSpec{-0.09 * d * d, 0}};
    for (const auto& V : potentials) {
      stress::StressInput in;
      in.d = d;
      in.delta = delta;
      in.lambdas = lambdas;
      in.profile_count = 4;
      in.seed = 77 + d;
      in.V = V;
      auto s = stress::stress_run(in);
      int pairs = static_cast<int>(s.records.size() / 2);
      min_pairs = std::min(min_pairs, pairs);
      min_inside = std::min(min_inside, s.inside);
      min_outside = std::min(min_outside, s.outside);
      violations += s.violations.size();
      errors += s.errors;
      id_fail += s.identity_failures.size();
      worst = std::max(worst, s.max_ratio);
      auto j = report::summary_json(s);
      j.erase("bounds");
      j["d"] = d;
      j["potential"] = V ? V->spec() : "";
      j["regime"] = s.bounds.regime;
      persisted.push_back(j);
    }
  }
  std::ofstream("acceptance_max_ratios.json") << persisted.dump(2) << "\n";
  double s = elapsed_since(t0);
  bool ok = violations == 0 && errors == 0 && id_fail == 0 && min_pairs >= 200 && min_inside > 0 &&
            min_outside > 0 && s < stress_seconds;
  std::ostringstream o;
  o << "min_pairs=" << min_pairs << " violations=" << violations << " errors=" << errors
    << " identity_failures=" << id_fail << " max_ratio=" << report::num17(worst)
    << " (persisted to acceptance_max_ratios.json)";
  return {ok, o.str()};
}

Outcome hardy() {
  using verify::HardyVariant;
  bool ok = true;
  double worst_q = 0, worst_sharp = 1;
  for (int d = 1; d <= 5; ++d) {
    auto profiles = radial::make_profiles(30, 500 + d, "all");
    for (auto v : {HardyVariant::GL, HardyVariant::weightedGL, HardyVariant::horizontal}) {
      if (v == HardyVariant::horizontal && d < 2) continue;
      for (const auto& u : profiles) {
        auto h = verify::hardy_quotient(u, d, v);
        worst_q = std::max(worst_q, h.quotient / h.constant);
        ok = ok && h.quotient <= h.constant * (1 + hardy_slack);
      }
      if (v == HardyVariant::horizontal) continue;
      const double eps[] = {0.01};
      auto p = verify::hardy_sharpness_probe(d, v, eps, 1e4);
      double frac = p.sup_quotient / p.constant;
      worst_sharp = std::min(worst_sharp, frac);
      ok = ok && frac >= sharpness_fraction && p.sup_quotient <= p.constant * (1 + hardy_slack);
    }
  }
  return {ok, fmt("max quotient/constant = %.6f, min probe fraction = %.6f", worst_q, worst_sharp)};
}

Outcome certificates() {
  double worst_margin = 0;
  for (int d = 1; d <= 5; ++d)
    worst_margin = std::max(worst_margin, std::abs(constants::v1_certificate(d, 1 / (d * constants::kappa(d))).margin));
  // b3_max(1,0,0) is the positive root of t² + (1/4 + 5) t − 1 = 0
  double oracle = (-5.25 + std::sqrt(5.25 * 5.25 + 4)) / 2;
  double b3 = constants::b3_max(1, 0, 0);
  bool sweep = true;
  for (int d = 1; d <= 3; ++d) {
    double b1 = 0.1 * d, b2 = 0.2;
    double bmax = constants::b3_max(d, b1, b2);
    for (int i = 0; i < 50; ++i) {
      double t = bmax * 2.0 * i / 49.0;
      if (std::abs(t - bmax) < 1e-9 * bmax) continue;
      sweep = sweep && constants::delta_tilde_window(d, b1, b2, t).empty == (t >= bmax);
    }
  }
  bool ok = worst_margin < v1_tol && std::abs(b3 - oracle) < b3_tol && std::abs(b3 - 0.184025) < b3_tol && sweep;
  return {ok, fmt("max |v1 margin| = %.3g, b3_max(1,0,0) = %.9f, oracle diff = %.3g", worst_margin, b3,
                  std::abs(b3 - oracle)) +
                  (sweep ? ", window sweep consistent" : ", window sweep inconsistent")};
}

Outcome euclidean() {
  double k = constants::kappa(constants::euclidean_dim(6));
  return {std::abs(k - 2.30737) < euclid_tol, fmt("kappa = %.9f", k)};
}

Outcome determinism() {
  stress::StressInput in;
  in.grid = {0.1, 10, 8, -5, 5, 8};
  in.profile_count = 4;
  in.V = verify::PotentialSpec{-0.2, 0};
  std::string paths[2] = {"acceptance_det_a.csv", "acceptance_det_b.csv"};
  for (const auto& p : paths) {
    std::ostringstream o;
    report::write_csv(o, stress::stress_run(in).records);
    report::write_file_atomic(p, o.str());
  }
  std::ostringstream serial;
  report::write_csv(serial, stress::stress_run_serial(in).records);
  auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  std::string a = slurp(paths[0]), b = slurp(paths[1]);
  bool ok = !a.empty() && a == b && a == serial.str();
  return {ok, "bytes=" + std::to_string(a.size()) + (ok ? " identical (and equal to serial reference)" : " differ")};
}

}  // namespace

int main() {
  criterion(1, "table reproduction", table);
  criterion(2, "implicit-equation residuals", implicit_residuals);
  criterion(3, "closed-form cross-checks", closed_forms);
  criterion(4, "identity suite", identities);
  criterion(5, "estimate stress", stress_estimates);
  criterion(6, "Hardy suite", hardy);
  criterion(7, "V1/V2 certificates", certificates);
  criterion(8, "Euclidean mode", euclidean);
  criterion(9, "determinism", determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
