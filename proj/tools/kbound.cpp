#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kb/config.hpp"
#include "kb/constants.hpp"
#include "kb/errors.hpp"
#include "kb/profile.hpp"
#include "kb/report.hpp"
#include "kb/stress.hpp"
#include "kb/verify.hpp"

using namespace kb;
using report::jnum;
using json = report::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_violation = 2;

struct Flag {
  std::string name;  // command-line flag
  std::string key;   // config key
  std::string value;
  CLI::Option* opt = nullptr;
};

using Provenance = std::map<std::string, std::string>;

json tolerances_json(const cli::RunConfig& c, const Provenance& prov) {
  json j;
  auto one = [&](const char* name, double v) {
    j[name] = {{"value", jnum(v)}, {"source", prov.at(name)}};
  };
  one("quad_rel", c.tol.quad_rel);
  one("identity", c.tol.identity);
  one("sharpness", c.tol.sharpness);
  return j;
}

void emit(const cli::RunConfig& c, const std::string& text) {
  if (c.out.empty())
    std::cout << text;
  else
    report::write_file_atomic(c.out, text);
}

quad::Options quad_opts(const cli::RunConfig& c) {
  quad::Options q;
  q.rel_tol = c.tol.quad_rel;
  return q;
}

json header(const cli::RunConfig& c, const Provenance& prov) {
  json j;
  j["command"] = cli::to_string(c.command);
  j["d"] = c.d;
  j["tolerances"] = tolerances_json(c, prov);
  return j;
}

int cmd_constants(const cli::RunConfig& c, const Provenance& prov) {
  json j = header(c, prov);
  double d = c.d;
  if (c.euclidean_d) {
    d = constants::euclidean_dim(*c.euclidean_d);
    j["euclidean_d"] = jnum(*c.euclidean_d);
    j["d"] = jnum(d);
  }
  double delta = c.delta ? *c.delta : constants::delta_star(d);
  j["delta"] = jnum(delta);
  json reps = json::array();
  reps.push_back(report::constant_json(constants::report_delta_star(d)));
  reps.push_back(report::constant_json(constants::report_kappa(d)));
  reps.push_back(report::constant_json(constants::report_gamma_delta(d, delta)));
  reps.push_back(report::constant_json(constants::report_big_K(d, delta)));
  if (c.b) {
    reps.push_back(report::constant_json(constants::report_big_K_b(d, delta, *c.b)));
    reps.push_back(report::constant_json(constants::report_kappa_b(d, *c.b)));
    auto v1 = constants::v1_certificate(d, *c.b);
    j["v1_certificate"] = {{"admissible", v1.admissible},
                           {"margin", jnum(v1.margin)},
                           {"outside_margin", jnum(v1.outside_margin)},
                           {"inside_margin", jnum(v1.inside_margin)},
                           {"threshold", jnum(v1.threshold)}};
  }
  if (c.b1 || c.b2) {
    double b1 = c.b1.value_or(0.0), b2 = c.b2.value_or(0.0);
    reps.push_back(report::constant_json(constants::report_big_M(d, delta, b2)));
    reps.push_back(report::constant_json(constants::report_mu(d, b1, b2)));
    reps.push_back(report::constant_json(constants::report_b3_max(d, b1, b2)));
    if (c.b3) {
      auto w = constants::delta_tilde_window(d, b1, b2, *c.b3);
      j["delta_tilde_window"] = {{"lo", jnum(w.lo)}, {"hi", jnum(w.hi)}, {"empty", w.empty}};
    }
  }
  j["reports"] = reps;
  emit(c, j.dump(2) + "\n");
  return exit_ok;
}

struct ReferenceRow {
  int d;
  double delta_star, kappa;
};
constexpr ReferenceRow reference_rows[] = {
    {1, 0.23734, 5.21337}, {2, 0.121514, 2.30737}, {3, 0.0817278, 1.47064},
    {4, 0.0615799, 1.07744}, {5, 0.0494043, 0.849645},
};

int cmd_table(const cli::RunConfig& c, const Provenance& prov) {
  json rows = json::array();
  bool ok = true;
  std::printf("%3s %14s %14s %10s %10s %10s %10s\n", "d", "delta_*", "kappa_d", "res_delta", "res_kappa",
              "diff_delta", "diff_kappa");
  for (int d = 1; d <= c.dmax; ++d) {
    double ds = constants::delta_star(d), k = constants::kappa(d);
    double rd = std::abs(constants::delta_star_residual(d, ds)), rk = std::abs(constants::kappa_residual(d, k));
    json r = {{"d", d}, {"delta_star", jnum(ds)}, {"kappa", jnum(k)},
              {"residual_delta_star", jnum(rd)}, {"residual_kappa", jnum(rk)}};
    char dd[16] = "-", dk[16] = "-";
    if (d <= 5) {
      const auto& p = reference_rows[d - 1];
      double e1 = std::abs(ds - p.delta_star), e2 = std::abs(k - p.kappa);
      std::snprintf(dd, sizeof dd, "%.2e", e1);
      std::snprintf(dk, sizeof dk, "%.2e", e2);
      r["reference"] = {{"delta_star", p.delta_star}, {"kappa", p.kappa}};
      r["diff"] = {{"delta_star", jnum(e1)}, {"kappa", jnum(e2)}};
      bool match = e1 <= 1e-5 && e2 <= 1e-5;
      r["match"] = match;
      ok = ok && match;
    }
    std::printf("%3d %14.9g %14.9g %10.2e %10.2e %10s %10s\n", d, ds, k, rd, rk, dd, dk);
    rows.push_back(r);
  }
  if (!c.out.empty()) {
    json j = header(c, prov);
    j["dmax"] = c.dmax;
    j["rows"] = rows;
    report::write_file_atomic(c.out, j.dump(2) + "\n");
  }
  return ok ? exit_ok : exit_violation;
}

int cmd_hardy(const cli::RunConfig& c, const Provenance& prov) {
  std::vector<verify::HardyVariant> variants;
  if (c.which.empty() || c.which == "all") {
    variants = {verify::HardyVariant::GL, verify::HardyVariant::weightedGL};
    if (c.d >= 2) variants.push_back(verify::HardyVariant::horizontal);
  } else {
    variants = {verify::parse_hardy_variant(c.which)};
  }
  auto u = radial::parse_profile(c.profile, c.d);
  auto q = quad_opts(c);
  json j = header(c, prov);
  j["profile"] = u.spec();
  json res = json::array();
  bool ok = true;
  for (auto v : variants) {
    auto h = verify::hardy_quotient(u, c.d, v, q);
    json r = {{"variant", verify::to_string(v)},
              {"constant", jnum(h.constant)},
              {"quotient", jnum(h.quotient)},
              {"lhs", jnum(h.lhs)},
              {"rhs", jnum(h.rhs)}};
    bool pass = h.quotient <= h.constant * (1 + 1e-12);
    if (v != verify::HardyVariant::horizontal) {
      auto p = verify::hardy_sharpness_probe(c.d, v, c.eps, c.R, q);
      json probes = json::array();
      for (std::size_t i = 0; i < p.eps.size(); ++i)
        probes.push_back({{"eps", jnum(p.eps[i])}, {"profile", p.profiles[i]}, {"quotient", jnum(p.quotients[i])}});
      double frac = p.sup_quotient / p.constant;
      r["sharpness"] = {{"R", jnum(c.R)}, {"sup_quotient", jnum(p.sup_quotient)}, {"fraction", jnum(frac)},
                        {"probes", probes}, {"pass", frac >= c.tol.sharpness}};
      pass = pass && frac >= c.tol.sharpness && p.sup_quotient <= p.constant * (1 + 1e-12);
    }
    r["pass"] = pass;
    ok = ok && pass;
    res.push_back(r);
  }
  j["variants"] = res;
  emit(c, j.dump(2) + "\n");
  return ok ? exit_ok : exit_violation;
}

int cmd_identity(const cli::RunConfig& c, const Provenance& prov) {
  auto V = cli::potential_of(c);
  std::vector<verify::Identity> ids;
  bool all = c.which.empty() || c.which == "all";
  if (all) {
    ids = {verify::Identity::energy_real, verify::Identity::energy_imag, verify::Identity::virial,
           verify::Identity::key};
    if (V) ids.push_back(verify::Identity::keyV);
  } else {
    ids = {verify::parse_identity(c.which)};
  }
  auto u = radial::parse_profile(c.profile, c.d);
  radial::SpectralParam lam{c.lambda_re, c.lambda_im, cli::effective_delta(c)};
  json j = header(c, prov);
  j["profile"] = u.spec();
  j["lambda"] = {{"re", jnum(lam.lambda1)}, {"im", jnum(lam.lambda2)}, {"delta", jnum(lam.delta)},
                 {"region", radial::to_string(lam.region())}};
  if (V) j["potential"] = V->spec();
  json res = json::array();
  bool ok = true;
  for (auto w : ids) {
    json r = {{"identity", verify::to_string(w)}};
    try {
      auto ir = verify::identity_residual(u, lam, c.d, w, V, quad_opts(c));
      bool pass = !ir.testable || ir.residual < c.tol.identity;
      r.update({{"testable", ir.testable}, {"lhs", jnum(ir.lhs)}, {"rhs", jnum(ir.rhs)},
                {"magnitude", jnum(ir.magnitude)}, {"residual", jnum(ir.residual)}, {"pass", pass},
                {"note", ir.note}});
      ok = ok && pass;
    } catch (const DomainError& e) {
      if (!all) throw;
      r.update({{"testable", false}, {"note", e.what()}});
    }
    res.push_back(r);
  }
  j["identities"] = res;
  emit(c, j.dump(2) + "\n");
  return ok ? exit_ok : exit_violation;
}

int cmd_potential(const cli::RunConfig& c, const Provenance& prov) {
  verify::PotentialSpec V = cli::potential_of(c).value_or(verify::PotentialSpec{});
  auto s = verify::potential_subordination(V, c.d);
  json j = header(c, prov);
  j["potential"] = {{"cr", jnum(V.c_re)}, {"ci", jnum(V.c_im)}};
  j["subordination"] = {{"b", jnum(s.b)},
                        {"b1", jnum(s.b1)},
                        {"b2", jnum(s.b2)},
                        {"b3", jnum(s.b3)},
                        {"thmV1_ok", s.thmV1_ok},
                        {"thmV2_ok", s.thmV2_ok},
                        {"v1_threshold", jnum(s.v1_threshold)},
                        {"b3_limit", jnum(s.b3_limit)},
                        {"chain_ok", s.chain_ok}};
  if (s.b1 < 1 && s.b2 < 1) {
    auto w = constants::delta_tilde_window(c.d, s.b1, s.b2, s.b3);
    j["delta_tilde_window"] = {{"lo", jnum(w.lo)}, {"hi", jnum(w.hi)}, {"empty", w.empty}};
  }
  if (V.c_im == 0) {
    verify::BoundOverrides ov{c.b, c.b1, c.b2};
    auto b = verify::estimate_bounds(c.d, cli::effective_delta(c), V, ov);
    j["bounds"] = report::bounds_json(b);
  } else {
    j["bounds"] = nullptr;
  }
  emit(c, j.dump(2) + "\n");
  return exit_ok;
}

int cmd_stress(const cli::RunConfig& c, const Provenance& prov) {
  auto in = cli::stress_input(c);
  // raises ConfigError on violated hypotheses before anything is written
  (void)verify::estimate_bounds(in.d, in.delta, in.V, in.overrides);
  auto s = stress::stress_run(in);

  json summ = report::summary_json(s);
  summ["tolerances"] = tolerances_json(c, prov);
  std::string body;
  if (c.format == "csv") {
    std::ostringstream o;
    report::write_csv(o, s.records);
    body = o.str();
  } else {
    json j;
    j["summary"] = summ;
    j["records"] = report::records_json(s.records);
    body = j.dump(2) + "\n";
  }
  std::string svg;
  if (!c.svg.empty()) svg = report::heatmap_svg(s, c.grid, c.profile_count);

  if (c.out.empty()) {
    std::cout << body;
  } else {
    report::write_file_atomic(c.out + ".config", cli::serialize_config(c));
    if (c.format == "csv") report::write_file_atomic(c.out + ".summary.json", summ.dump(2) + "\n");
    report::write_file_atomic(c.out, body);
  }
  if (!c.svg.empty()) report::write_file_atomic(c.svg, svg);

  std::fprintf(stderr, "records=%zu inside=%d outside=%d vacuous=%d errors=%d violations=%zu max_ratio=%.6g "
               "identity_checks=%d identity_failures=%zu max_identity_residual=%.3g\n",
               s.records.size(), s.inside, s.outside, s.vacuous, s.errors, s.violations.size(), s.max_ratio,
               s.identity_checks, s.identity_failures.size(), s.max_identity_residual);
  return s.violations.empty() && s.identity_failures.empty() ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for uniform resolvent estimates on the Heisenberg group"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::vector<Flag> flags;
  std::string config_path;
  struct Sub {
    cli::Command cmd;
    CLI::App* app;
  };
  std::vector<Sub> subs;

  auto add_flag = [&](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
    flags.push_back({name, key, "", nullptr});
    Flag& f = flags.back();
    f.opt = sub->add_option(name, f.value, help);
  };

  const std::vector<std::pair<cli::Command, std::string>> commands = {
      {cli::Command::constants, "closed-form and implicit constants with residuals"},
      {cli::Command::table, "delta_* and kappa_d table with reference diff"},
      {cli::Command::hardy, "Hardy quotients and sharpness probes"},
      {cli::Command::identity, "integral identity residuals for one profile and lambda"},
      {cli::Command::stress, "estimate stress run over a lambda grid"},
      {cli::Command::potential, "subordination constants and bounds for an inverse-square potential"},
  };
  flags.reserve(256);
  for (auto& [cmd, help] : commands) {
    auto* sub = app.add_subcommand(cli::to_string(cmd), help);
    subs.push_back({cmd, sub});
    sub->add_option("--config", config_path, "key=value config file (flags override it)");
    add_flag(sub, "--d", "d", "dimension parameter of H^d");
    add_flag(sub, "--euclidean-d", "euclidean_d", "Euclidean dimension (> 2), constants only");
    add_flag(sub, "--delta", "delta", "cone aperture (default delta_*(d))");
    add_flag(sub, "--b", "b", "subordination constant b");
    add_flag(sub, "--b1", "b1", "subordination constant b1");
    add_flag(sub, "--b2", "b2", "subordination constant b2");
    add_flag(sub, "--b3", "b3", "subordination constant b3");
    add_flag(sub, "--cr", "cr", "real part of the potential coefficient");
    add_flag(sub, "--ci", "ci", "imaginary part of the potential coefficient");
    add_flag(sub, "--seed", "seed", "profile seed");
    add_flag(sub, "--out", "out", "output path (stdout when omitted)");
    add_flag(sub, "--format", "format", "csv or json");
    add_flag(sub, "--svg", "svg", "SVG heatmap path");
    switch (cmd) {
      case cli::Command::table:
        add_flag(sub, "--dmax", "dmax", "largest d");
        break;
      case cli::Command::hardy:
        add_flag(sub, "--which", "which", "GL, weightedGL, horizontal or all");
        add_flag(sub, "--profile", "profile", "profile spec, e.g. bump:c=2,h=1");
        add_flag(sub, "--eps", "eps", "comma-separated probe eps values");
        add_flag(sub, "--R", "R", "probe outer radius");
        break;
      case cli::Command::identity:
        add_flag(sub, "--which", "which", "energy_real, energy_imag, virial, key, keyV or all");
        add_flag(sub, "--profile", "profile", "profile spec, e.g. mix:seed=42,n=3");
        add_flag(sub, "--lambda-re", "lambda_re", "Re lambda");
        add_flag(sub, "--lambda-im", "lambda_im", "Im lambda");
        break;
      case cli::Command::stress:
        add_flag(sub, "--re-min", "re_min", "grid Re lambda min");
        add_flag(sub, "--re-max", "re_max", "grid Re lambda max");
        add_flag(sub, "--re-steps", "re_steps", "grid Re lambda steps");
        add_flag(sub, "--im-min", "im_min", "grid Im lambda min");
        add_flag(sub, "--im-max", "im_max", "grid Im lambda max");
        add_flag(sub, "--im-steps", "im_steps", "grid Im lambda steps");
        add_flag(sub, "--profiles", "profiles", "profiles per lambda");
        add_flag(sub, "--family", "family", "all, bump, spline or mix");
        break;
      default:
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config;
  }

  cli::RunConfig c;
  for (auto& s : subs)
    if (s.app->parsed()) c.command = s.cmd;

  try {
    Provenance prov{{"quad_rel", "default"}, {"identity", "default"}, {"sharpness", "default"}};
    auto track = [&](const std::string& key, const char* source) {
      if (key.rfind("tol.", 0) == 0) prov[key.substr(4)] = source;
    };
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw IoError("cannot read config file '" + config_path + "'");
      std::stringstream ss;
      ss << f.rdbuf();
      for (auto& [k, v] : cli::parse_settings(ss.str())) {
        if (k == "command") continue;
        cli::apply_setting(c, k, v);
        track(k, "config");
      }
    }
    for (auto& f : flags)
      if (f.opt->count() > 0) {
        try {
          cli::apply_setting(c, f.key, f.value);
        } catch (const ConfigError& e) {
          throw ConfigError(f.name + ": " + e.what());
        }
      }
    if (const char* env = std::getenv("KB_TOL_OVERRIDE")) cli::apply_tolerance_override(c, env, prov);
    cli::validate(c);

    switch (c.command) {
      case cli::Command::constants: return cmd_constants(c, prov);
      case cli::Command::table: return cmd_table(c, prov);
      case cli::Command::hardy: return cmd_hardy(c, prov);
      case cli::Command::identity: return cmd_identity(c, prov);
      case cli::Command::stress: return cmd_stress(c, prov);
      case cli::Command::potential: return cmd_potential(c, prov);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
  }
  return exit_config;
}
