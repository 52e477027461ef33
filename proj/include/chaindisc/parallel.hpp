#pragma once
#include <cstddef>

namespace chaindisc::par {

// Runtime thread cap (CLI --threads). 0 = use OpenMP default.
void set_max_threads(int n);
int max_threads();

int effective_threads();

namespace detail {
void run_indexed(std::ptrdiff_t n, void* ctx, void (*fn)(void*, std::ptrdiff_t));
}

// Parallel loop over [0, n). Bodies must only write to slots owned by their
// index; every reduction in this codebase folds the slot array serially
// afterwards, so results cannot depend on the thread count.
template <class F>
void parallel_for(std::ptrdiff_t n, F&& f) {
  detail::run_indexed(n, &f, [](void* ctx, std::ptrdiff_t i) {
    (*static_cast<F*>(ctx))(i);
  });
}

}  // namespace chaindisc::par
