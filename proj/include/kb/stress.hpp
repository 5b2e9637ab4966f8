#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kb/verify.hpp"

namespace kb::stress {

struct LambdaGrid {
  double re_min = 0.1;
  double re_max = 10;
  int re_steps = 10;
  double im_min = -5;
  double im_max = 5;
  int im_steps = 10;

  // row-major over (re, im), endpoints included
  std::vector<std::pair<double, double>> points() const;

  bool operator==(const LambdaGrid&) const = default;
};

struct StressInput {
  int d = 2;
  LambdaGrid grid;
  // when non-empty, replaces the grid
  std::vector<std::pair<double, double>> lambdas;
  int profile_count = 5;
  std::uint64_t seed = 42;
  std::string family = "all";
  double delta = 0.25;
  std::optional<verify::PotentialSpec> V;
  verify::BoundOverrides overrides;
  quad::Options quad;
  bool identities = true;
  double identity_tol = 1e-6;
};

struct StressSummary {
  verify::EstimateBounds bounds;
  std::vector<verify::StressRecord> records;  // two per (λ, profile): gradient, kato_yajima
  double max_ratio = 0;
  double max_ratio_gradient = 0;
  double max_ratio_kato_yajima = 0;
  std::vector<int> violations;  // trial ids
  int inside = 0;
  int outside = 0;
  int vacuous = 0;
  int errors = 0;
  int identity_checks = 0;
  int identity_skipped = 0;
  double max_identity_residual = 0;
  std::vector<int> identity_failures;  // trial ids of the gradient record
};

// Pairs are evaluated with OpenMP; results are merged in trial order so the
// output does not depend on the schedule.
StressSummary stress_run(const StressInput& in);
// Single-threaded reference with identical output.
StressSummary stress_run_serial(const StressInput& in);

}  // namespace kb::stress
