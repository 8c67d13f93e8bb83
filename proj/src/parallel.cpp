#include "bel/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace bel {

int thread_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("BEL_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = std::min<long>(v, 1024);
  }
  return std::max(1, n);
}

namespace detail {

void run_indexed(std::size_t n, Exec exec, void* ctx, void (*body)(void*, std::size_t)) {
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(ctx, i);
    return;
  }
  const int threads = thread_count();
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    body(ctx, static_cast<std::size_t>(i));
  }
}

}  // namespace detail
}  // namespace bel
