#include "kb/config.hpp"

#include <charconv>
#include <sstream>

#include "kb/constants.hpp"
#include "kb/errors.hpp"
#include "kb/profile.hpp"
#include "kb/verify.hpp"

namespace kb::cli {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, std::string_view v) {
  double x;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(v) + "'");
  return x;
}

template <class Int>
Int to_int(std::string_view key, std::string_view v) {
  Int x;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(v) + "'");
  return x;
}

std::string fmt(double x) { return radial::format_number(x); }

}  // namespace

Command parse_command(std::string_view s) {
  if (s == "constants") return Command::constants;
  if (s == "table") return Command::table;
  if (s == "hardy") return Command::hardy;
  if (s == "identity") return Command::identity;
  if (s == "stress") return Command::stress;
  if (s == "potential") return Command::potential;
  throw ConfigError("unknown command '" + std::string(s) + "'");
}

const char* to_string(Command c) {
  switch (c) {
    case Command::constants: return "constants";
    case Command::table: return "table";
    case Command::hardy: return "hardy";
    case Command::identity: return "identity";
    case Command::stress: return "stress";
    case Command::potential: return "potential";
  }
  return "?";
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view v) {
  auto dbl = [&] { return to_double(key, v); };
  auto opt = [&](std::optional<double>& o) { o = v.empty() ? std::nullopt : std::optional<double>(dbl()); };
  if (key == "command") c.command = parse_command(v);
  else if (key == "d") c.d = to_int<int>(key, v);
  else if (key == "euclidean_d") opt(c.euclidean_d);
  else if (key == "delta") opt(c.delta);
  else if (key == "b") opt(c.b);
  else if (key == "b1") opt(c.b1);
  else if (key == "b2") opt(c.b2);
  else if (key == "b3") opt(c.b3);
  else if (key == "cr") opt(c.cr);
  else if (key == "ci") opt(c.ci);
  else if (key == "re_min") c.grid.re_min = dbl();
  else if (key == "re_max") c.grid.re_max = dbl();
  else if (key == "re_steps") c.grid.re_steps = to_int<int>(key, v);
  else if (key == "im_min") c.grid.im_min = dbl();
  else if (key == "im_max") c.grid.im_max = dbl();
  else if (key == "im_steps") c.grid.im_steps = to_int<int>(key, v);
  else if (key == "profiles") c.profile_count = to_int<int>(key, v);
  else if (key == "seed") c.seed = to_int<std::uint64_t>(key, v);
  else if (key == "family") c.family = std::string(v);
  else if (key == "out") c.out = std::string(v);
  else if (key == "format") c.format = std::string(v);
  else if (key == "svg") c.svg = std::string(v);
  else if (key == "dmax") c.dmax = to_int<int>(key, v);
  else if (key == "which") c.which = std::string(v);
  else if (key == "profile") c.profile = std::string(v);
  else if (key == "lambda_re") c.lambda_re = dbl();
  else if (key == "lambda_im") c.lambda_im = dbl();
  else if (key == "eps") {
    c.eps.clear();
    std::string_view rest = v;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      c.eps.push_back(to_double(key, trim(rest.substr(0, comma))));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  } else if (key == "R") c.R = dbl();
  else if (key == "tol.quad_rel") c.tol.quad_rel = dbl();
  else if (key == "tol.identity") c.tol.identity = dbl();
  else if (key == "tol.sharpness") c.tol.sharpness = dbl();
  else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    out.emplace_back(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
  return out;
}

RunConfig parse_config(std::string_view text, RunConfig c) {
  for (auto& [k, v] : parse_settings(text)) apply_setting(c, k, v);
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  auto opt = [&](const char* k, const std::optional<double>& v) {
    if (v) o << k << '=' << fmt(*v) << '\n';
  };
  o << "command=" << to_string(c.command) << '\n';
  o << "d=" << c.d << '\n';
  opt("euclidean_d", c.euclidean_d);
  opt("delta", c.delta);
  opt("b", c.b);
  opt("b1", c.b1);
  opt("b2", c.b2);
  opt("b3", c.b3);
  opt("cr", c.cr);
  opt("ci", c.ci);
  o << "re_min=" << fmt(c.grid.re_min) << '\n'
    << "re_max=" << fmt(c.grid.re_max) << '\n'
    << "re_steps=" << c.grid.re_steps << '\n'
    << "im_min=" << fmt(c.grid.im_min) << '\n'
    << "im_max=" << fmt(c.grid.im_max) << '\n'
    << "im_steps=" << c.grid.im_steps << '\n'
    << "profiles=" << c.profile_count << '\n'
    << "seed=" << c.seed << '\n'
    << "family=" << c.family << '\n'
    << "out=" << c.out << '\n'
    << "format=" << c.format << '\n'
    << "svg=" << c.svg << '\n'
    << "dmax=" << c.dmax << '\n'
    << "which=" << c.which << '\n'
    << "profile=" << c.profile << '\n'
    << "lambda_re=" << fmt(c.lambda_re) << '\n'
    << "lambda_im=" << fmt(c.lambda_im) << '\n';
  o << "eps=";
  for (std::size_t i = 0; i < c.eps.size(); ++i) o << (i ? "," : "") << fmt(c.eps[i]);
  o << '\n'
    << "R=" << fmt(c.R) << '\n'
    << "tol.quad_rel=" << fmt(c.tol.quad_rel) << '\n'
    << "tol.identity=" << fmt(c.tol.identity) << '\n'
    << "tol.sharpness=" << fmt(c.tol.sharpness) << '\n';
  return o.str();
}

void apply_tolerance_override(RunConfig& c, std::string_view list, std::map<std::string, std::string>& prov) {
  std::string_view rest = list;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("KB_TOL_OVERRIDE: expected name=value, got '" + item + "'");
    std::string name = trim(std::string_view(item).substr(0, eq));
    if (name.rfind("tol.", 0) != 0) name = "tol." + name;
    if (name != "tol.quad_rel" && name != "tol.identity" && name != "tol.sharpness")
      throw ConfigError("KB_TOL_OVERRIDE: unknown tolerance '" + name + "'");
    apply_setting(c, name, trim(std::string_view(item).substr(eq + 1)));
    prov[name.substr(4)] = "env";
  }
}

void validate(const RunConfig& c) {
  auto unit = [](const char* name, const std::optional<double>& v) {
    if (v && !(*v >= 0 && *v < 1))
      throw ConfigError(std::string("theorem hypothesis violated: ") + name + " must satisfy 0 <= " + name +
                        " < 1 (got " + fmt(*v) + ")");
  };
  if (c.euclidean_d) {
    if (!(*c.euclidean_d > 2)) throw ConfigError("euclidean_d must be > 2 (Euclidean estimates fail in dimensions 1, 2)");
    if (c.command != Command::constants && c.command != Command::table)
      throw ConfigError("euclidean_d is only accepted by the constants command");
  }
  if (c.d < 1) throw ConfigError("d must be a positive integer (got " + std::to_string(c.d) + ")");
  if (c.delta && !(*c.delta > 0)) throw ConfigError("delta must be > 0 (got " + fmt(*c.delta) + ")");
  unit("b", c.b);
  unit("b1", c.b1);
  unit("b2", c.b2);
  if (c.b3 && !(*c.b3 >= 0)) throw ConfigError("b3 must be >= 0");
  if (c.grid.re_steps < 1 || c.grid.im_steps < 1) throw ConfigError("re_steps and im_steps must be >= 1");
  if (c.profile_count < 1) throw ConfigError("profiles must be >= 1");
  if (c.family != "all" && c.family != "bump" && c.family != "spline" && c.family != "mix")
    throw ConfigError("family must be one of all, bump, spline, mix");
  if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
  if (c.dmax < 1) throw ConfigError("dmax must be >= 1");
  if (!(c.R > 1)) throw ConfigError("R must be > 1");
  for (double e : c.eps)
    if (!(e > 0)) throw ConfigError("eps values must be > 0");
  if (!(c.tol.quad_rel > 0 && c.tol.quad_rel < 1e-2)) throw ConfigError("tol.quad_rel must lie in (0, 1e-2)");
  if (!(c.tol.identity > 0)) throw ConfigError("tol.identity must be > 0");
  if (!(c.tol.sharpness > 0 && c.tol.sharpness <= 1)) throw ConfigError("tol.sharpness must lie in (0, 1]");
  if (c.command == Command::stress && c.ci && *c.ci != 0)
    throw ConfigError("stress: ci must be 0 (estimate checks cover real potentials only)");
}

std::optional<verify::PotentialSpec> potential_of(const RunConfig& c) {
  if (!c.cr && !c.ci) return std::nullopt;
  return verify::PotentialSpec{c.cr.value_or(0.0), c.ci.value_or(0.0)};
}

double effective_delta(const RunConfig& c) { return c.delta ? *c.delta : constants::delta_star(c.d); }

stress::StressInput stress_input(const RunConfig& c) {
  stress::StressInput in;
  in.d = c.d;
  in.grid = c.grid;
  in.profile_count = c.profile_count;
  in.seed = c.seed;
  in.family = c.family;
  in.delta = effective_delta(c);
  in.V = potential_of(c);
  in.overrides.b = c.b;
  in.overrides.b1 = c.b1;
  in.overrides.b2 = c.b2;
  in.quad.rel_tol = c.tol.quad_rel;
  in.identity_tol = c.tol.identity;
  return in;
}

}  // namespace kb::cli
