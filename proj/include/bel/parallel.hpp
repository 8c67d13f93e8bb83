#pragma once

#include <cstddef>
#include <cstdint>

namespace bel {

// Every data-parallel kernel in the library comes in two flavours selected by
// this tag: a straightforward serial loop (the reference implementation, used
// by tests as ground truth) and an OpenMP version. Both fill independent
// output slots and combine them in a fixed order, so results are bitwise
// identical regardless of thread count.
enum class Exec { Serial, OpenMP };

// Number of threads the OpenMP kernels may use. Capped by the BEL_THREADS
// environment variable when set; otherwise the OpenMP default.
int thread_count();

namespace detail {
void run_indexed(std::size_t n, Exec exec, void* ctx, void (*body)(void*, std::size_t));
}

// out-of-line type-erased driver keeps the OpenMP pragma in one TU
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& fn) {
  auto thunk = [](void* ctx, std::size_t i) { (*static_cast<F*>(ctx))(i); };
  detail::run_indexed(n, exec, &fn, thunk);
}

}  // namespace bel
