// Compares the serial reference path against the OpenMP multistart on the
// same start set and checks that both produce identical solution lists.
// Usage: bench_multistart [budget] [N] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tqlab/bae_solver.hpp"
#include "tqlab/parallel.hpp"

using namespace tqlab;
using Clock = std::chrono::steady_clock;

namespace {

double time_run(const ChainSpec& spec, const EnumerationOptions& opts,
                std::vector<BetheRootSet>& out) {
  const auto t0 = Clock::now();
  out = enumerate_solutions(spec, opts);
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool identical(const std::vector<BetheRootSet>& a, const std::vector<BetheRootSet>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].mu.size() != b[i].mu.size()) return false;
    for (size_t k = 0; k < a[i].mu.size(); ++k)
      if (a[i].mu[k] != b[i].mu[k]) return false;
    if (a[i].defect != b[i].defect) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int budget = argc > 1 ? std::atoi(argv[1]) : 4000;
  const int n = argc > 2 ? std::atoi(argv[2]) : 3;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

  const ChainSpec spec = ChainSpec::homogeneous(n, Cplx(0.0, -0.69315));
  EnumerationOptions serial;
  serial.budget = budget;
  serial.parallel = false;
  EnumerationOptions parallel = serial;
  parallel.parallel = true;

  std::printf("multistart benchmark: N=%d budget=%d workers=%d\n", n, budget, worker_count());
  double best_serial = 1e300, best_parallel = 1e300;
  std::vector<BetheRootSet> ref, par;
  for (int r = 0; r < repeats; ++r) {
    best_serial = std::min(best_serial, time_run(spec, serial, ref));
    best_parallel = std::min(best_parallel, time_run(spec, parallel, par));
    if (!identical(ref, par)) {
      std::printf("MISMATCH between serial and parallel solution lists\n");
      return 1;
    }
  }
  std::printf("serial reference: %8.3f s\n", best_serial);
  std::printf("openmp          : %8.3f s  (speedup %.2fx)\n", best_parallel,
              best_serial / best_parallel);
  std::printf("solutions: %zu, results identical across paths\n", ref.size());
  return 0;
}
