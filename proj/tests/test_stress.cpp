#include <doctest.h>

#include "kb/constants.hpp"
#include "kb/stress.hpp"

using namespace kb;

namespace {

void require_same(const stress::StressSummary& a, const stress::StressSummary& b) {
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    CHECK(x.trial_id == y.trial_id);
    CHECK(x.lhs == y.lhs);
    CHECK(x.rhs == y.rhs);
    CHECK(x.bound == y.bound);
    CHECK(x.ratio == y.ratio);
    CHECK(x.pass == y.pass);
    CHECK(x.note == y.note);
    CHECK(x.profile_spec == y.profile_spec);
  }
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.violations == b.violations);
  CHECK(a.max_identity_residual == b.max_identity_residual);
}

}  // namespace

TEST_CASE("grid points") {
  stress::LambdaGrid g{1, 2, 2, -1, 1, 3};
  auto p = g.points();
  REQUIRE(p.size() == 6);
  CHECK(p[0] == std::pair{1.0, -1.0});
  CHECK(p[1] == std::pair{1.0, 0.0});
  CHECK(p[5] == std::pair{2.0, 1.0});
}

TEST_CASE("default d=2 grid has no violations") {
  stress::StressInput in;
  auto s = stress::stress_run(in);
  CHECK(s.records.size() == 2u * 100 * 5);
  CHECK(s.violations.empty());
  CHECK(s.errors == 0);
  CHECK(s.identity_failures.empty());
  CHECK(s.identity_checks > 0);
  CHECK(s.max_ratio <= 1.0);
  CHECK(s.max_ratio > 0.0);
  CHECK(s.inside > 0);
  CHECK(s.outside > 0);
}

TEST_CASE("parallel matches serial reference") {
  stress::StressInput in;
  in.grid = {0.2, 5, 4, -3, 3, 5};
  in.profile_count = 3;
  in.V = verify::PotentialSpec{-0.3, 0};
  require_same(stress::stress_run(in), stress::stress_run_serial(in));
  in.V.reset();
  in.d = 3;
  require_same(stress::stress_run(in), stress::stress_run_serial(in));
}

TEST_CASE("repeat runs are identical") {
  stress::StressInput in;
  in.grid = {0.5, 3, 3, -2, 2, 3};
  in.seed = 7;
  require_same(stress::stress_run(in), stress::stress_run(in));
}

TEST_CASE("zero potential agrees with no potential") {
  stress::StressInput in;
  in.grid = {0.5, 3, 3, -2, 2, 3};
  auto a = stress::stress_run(in);
  in.V = verify::PotentialSpec{0, 0};
  auto b = stress::stress_run(in);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].lhs == doctest::Approx(b.records[i].lhs).epsilon(1e-12));
    CHECK(a.records[i].rhs == doctest::Approx(b.records[i].rhs).epsilon(1e-12));
  }
}

TEST_CASE("explicit lambdas and potentials stay within bounds") {
  for (int d = 1; d <= 3; ++d) {
    stress::StressInput in;
    in.d = d;
    in.delta = constants::delta_star(d);
    in.lambdas = {{1, 0}, {1, 0.5 * in.delta}, {1, 3}, {-1, 1}, {0.01, 2}, {4, -0.1}};
    in.profile_count = 4;
    for (double cr : {0.5, -0.2}) {
      in.V = verify::PotentialSpec{cr, 0};
      auto s = stress::stress_run(in);
      CHECK(s.errors == 0);
      CHECK(s.violations.empty());
      CHECK(s.identity_failures.empty());
    }
  }
}

TEST_CASE("per-record errors do not abort the run") {
  stress::StressInput in;
  in.lambdas = {{1, 0.1}, {0, 0}, {2, 0.1}};
  in.profile_count = 2;
  auto s = stress::stress_run(in);
  CHECK(s.records.size() == 12u);
  int ok = 0;
  for (auto& r : s.records) ok += !r.error;
  CHECK(ok >= 8);
}
