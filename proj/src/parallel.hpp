#pragma once

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace sgl {

// Worker count for OpenMP kernels. SIEGELLAB_THREADS caps it; 1 forces the
// serial path everywhere, which is also the reference behaviour in tests.
inline int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("SIEGELLAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return std::max(1, n);
}

}  // namespace sgl
