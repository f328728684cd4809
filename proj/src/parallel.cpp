#include "spectral_glue/parallel.hpp"

#include <algorithm>
#include <cstdlib>

#include <omp.h>

namespace spectral_glue {

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("SPECTRAL_GLUE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(1, n);
}

}  // namespace spectral_glue
