#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kb/stress.hpp"

namespace kb::cli {

enum class Command { constants, table, hardy, identity, stress, potential };
Command parse_command(std::string_view s);
const char* to_string(Command c);

struct Tolerances {
  double quad_rel = 1e-10;   // radial quadrature convergence
  double identity = 1e-6;    // identity residual acceptance
  double sharpness = 0.95;   // required fraction of the Hardy constant in probes

  bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
  Command command = Command::stress;
  int d = 2;
  std::optional<double> euclidean_d;
  std::optional<double> delta;
  std::optional<double> b, b1, b2, b3;
  std::optional<double> cr, ci;  // potential present iff either is set
  stress::LambdaGrid grid;
  int profile_count = 5;
  std::uint64_t seed = 42;
  std::string family = "all";
  std::string out;
  std::string format = "csv";
  std::string svg;
  int dmax = 5;
  std::string which;
  std::string profile = "bump:c=2,h=1";
  double lambda_re = 1;
  double lambda_im = 0.2;
  std::vector<double> eps{0.01};
  double R = 1e4;
  Tolerances tol;

  bool operator==(const RunConfig&) const = default;
};

// Applies one key=value setting; unknown keys and bad values raise ConfigError.
void apply_setting(RunConfig& c, std::string_view key, std::string_view value);
// Flat key=value text split into ordered (key, value) pairs.
std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text);
// Flat key=value text, '#' comments and blank lines ignored.
RunConfig parse_config(std::string_view text, RunConfig base = {});
std::string serialize_config(const RunConfig& c);

// "key=value,key=value" over the tol.* keys; records "env" provenance.
void apply_tolerance_override(RunConfig& c, std::string_view list, std::map<std::string, std::string>& provenance);

// Throws ConfigError naming the offending parameter.
void validate(const RunConfig& c);

std::optional<verify::PotentialSpec> potential_of(const RunConfig& c);
stress::StressInput stress_input(const RunConfig& c);
// δ used by a run: explicit, else δ_*(d).
double effective_delta(const RunConfig& c);

}  // namespace kb::cli
