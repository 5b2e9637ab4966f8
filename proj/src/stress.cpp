#include "kb/stress.hpp"

#include <algorithm>
#include <exception>

#include "kb/errors.hpp"

namespace kb::stress {

using verify::StressRecord;

std::vector<std::pair<double, double>> LambdaGrid::points() const {
  if (re_steps < 1 || im_steps < 1) throw ConfigError("lambda grid: steps must be >= 1");
  auto lin = [](double a, double b, int n, int i) { return n == 1 ? a : a + (b - a) * i / (n - 1); };
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < re_steps; ++i)
    for (int j = 0; j < im_steps; ++j) out.emplace_back(lin(re_min, re_max, re_steps, i), lin(im_min, im_max, im_steps, j));
  return out;
}

namespace {

struct Pair {
  StressRecord grad;
  StressRecord ky;
  int identity_checks = 0;
  int identity_skipped = 0;
  double identity_max = 0;
};

struct Plan {
  verify::EstimateBounds bounds;
  std::vector<std::pair<double, double>> lambdas;
  std::vector<radial::RadialProfile> profiles;
};

Plan plan(const StressInput& in) {
  Plan p;
  p.bounds = verify::estimate_bounds(in.d, in.delta, in.V, in.overrides);
  p.lambdas = in.lambdas.empty() ? in.grid.points() : in.lambdas;
  if (p.lambdas.empty()) throw ConfigError("stress: lambda grid is empty");
  if (in.profile_count < 1) throw ConfigError("stress: profile count must be >= 1");
  p.profiles = radial::make_profiles(in.profile_count, in.seed, in.family);
  return p;
}

Pair evaluate(const StressInput& in, const Plan& p, std::size_t k) {
  const std::size_t np = p.profiles.size();
  const auto& u = p.profiles[k % np];
  auto [re, im] = p.lambdas[k / np];
  verify::SpectralParam l{re, im, in.delta};
  Pair out;
  try {
    verify::EstimateOutcome o = verify::estimate_check(u, l, p.bounds, in.quad);
    out.grad = std::move(o.gradient);
    out.ky = std::move(o.kato_yajima);
    if (in.identities) {
      std::vector<std::pair<verify::Identity, std::optional<verify::PotentialSpec>>> todo{
          {verify::Identity::virial, std::nullopt}};
      if (l.region() == radial::Region::inside_cone && l.lambda1 > 0) {
        if (p.bounds.V.c_re != 0)
          todo.emplace_back(verify::Identity::keyV, p.bounds.V);
        else
          todo.emplace_back(verify::Identity::key, std::nullopt);
      }
      for (auto& [w, V] : todo) {
        verify::IdentityResult r = verify::identity_residual(u, l, in.d, w, V, in.quad);
        if (!r.testable) {
          ++out.identity_skipped;
          continue;
        }
        ++out.identity_checks;
        out.identity_max = std::max(out.identity_max, r.residual);
      }
    }
  } catch (const std::exception& e) {
    for (StressRecord* r : {&out.grad, &out.ky}) {
      r->lambda = l;
      r->profile_spec = u.spec();
      r->potential_spec = p.bounds.V.spec();
      r->region = l.region();
      r->error = true;
      r->pass = false;
      r->note = std::string("error: ") + e.what();
    }
    out.grad.note = "gradient;" + out.grad.note;
    out.ky.note = "kato_yajima;" + out.ky.note;
  }
  return out;
}

StressSummary merge(const StressInput& in, Plan& p, std::vector<Pair>& pairs) {
  StressSummary s;
  s.bounds = p.bounds;
  s.records.reserve(2 * pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Pair& pr = pairs[k];
    pr.grad.trial_id = static_cast<int>(2 * k);
    pr.ky.trial_id = static_cast<int>(2 * k + 1);
    (pr.grad.region == radial::Region::inside_cone ? s.inside : s.outside)++;
    s.identity_checks += pr.identity_checks;
    s.identity_skipped += pr.identity_skipped;
    s.max_identity_residual = std::max(s.max_identity_residual, pr.identity_max);
    if (pr.identity_max >= in.identity_tol) s.identity_failures.push_back(pr.grad.trial_id);
    for (StressRecord* r : {&pr.grad, &pr.ky}) {
      if (r->error) {
        ++s.errors;
      } else if (!r->pass) {
        s.violations.push_back(r->trial_id);
      }
      if (!r->ratio && !r->error) ++s.vacuous;
      if (r->ratio) {
        s.max_ratio = std::max(s.max_ratio, *r->ratio);
        double& m = r == &pr.grad ? s.max_ratio_gradient : s.max_ratio_kato_yajima;
        m = std::max(m, *r->ratio);
      }
      s.records.push_back(std::move(*r));
    }
  }
  return s;
}

}  // namespace

StressSummary stress_run(const StressInput& in) {
  Plan p = plan(in);
  const long n = static_cast<long>(p.lambdas.size() * p.profiles.size());
  std::vector<Pair> pairs(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) pairs[k] = evaluate(in, p, static_cast<std::size_t>(k));
  return merge(in, p, pairs);
}

StressSummary stress_run_serial(const StressInput& in) {
  Plan p = plan(in);
  const std::size_t n = p.lambdas.size() * p.profiles.size();
  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) pairs.push_back(evaluate(in, p, k));
  return merge(in, p, pairs);
}

}  // namespace kb::stress
