#ifndef TQLAB_PARALLEL_HPP
#define TQLAB_PARALLEL_HPP

#include <functional>

namespace tqlab {

// Worker count used by the OpenMP kernels. Resolution order: explicit
// set_worker_count, TQLAB_THREADS environment variable, hardware concurrency.
int worker_count();
void set_worker_count(int n);

// Runs body(i) for i in [0, n). With parallel=false the loop is the plain
// serial reference path; results must be written to per-index slots so both
// paths produce identical output.
void parallel_for(int n, const std::function<void(int)>& body, bool parallel = true);

}  // namespace tqlab

#endif
