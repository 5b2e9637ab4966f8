#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "kb/stress.hpp"

using namespace kb;

namespace {

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same(const stress::StressSummary& a, const stress::StressSummary& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.lhs != y.lhs || x.rhs != y.rhs || x.ratio != y.ratio || x.pass != y.pass) return false;
  }
  return a.max_identity_residual == b.max_identity_residual;
}

}  // namespace

int main(int argc, char** argv) {
  int d = argc > 1 ? std::atoi(argv[1]) : 2;
  int steps = argc > 2 ? std::atoi(argv[2]) : 20;
  stress::StressInput in;
  in.d = d;
  in.grid.re_steps = steps;
  in.grid.im_steps = steps;
  in.profile_count = 5;

  stress::StressSummary ser, par;
  double ts = seconds([&] { ser = stress::stress_run_serial(in); });
  double tp = seconds([&] { par = stress::stress_run(in); });
  bool eq = same(ser, par);
  std::printf("d=%d pairs=%zu threads=%d serial=%.3fs parallel=%.3fs speedup=%.2f equal=%s\n", d,
              ser.records.size() / 2, omp_get_max_threads(), ts, tp, ts / tp, eq ? "yes" : "no");
  return eq ? 0 : 1;
}
