#include "tqlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tqlab {

namespace {
std::atomic<int> g_workers{0};

int resolve_default() {
  if (const char* env = std::getenv("TQLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}
}  // namespace

int worker_count() {
  int w = g_workers.load();
  if (w <= 0) {
    w = resolve_default();
    g_workers.store(w);
  }
  return w;
}

void set_worker_count(int n) { g_workers.store(n > 0 ? n : 0); }

void parallel_for(int n, const std::function<void(int)>& body, bool parallel) {
  const int workers = worker_count();
  if (!parallel || workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (int i = 0; i < n; ++i) body(i);
#else
  for (int i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace tqlab
