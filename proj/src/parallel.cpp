#include "chaindisc/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chaindisc::par {

namespace {
std::atomic<int> g_cap{0};
}

void set_max_threads(int n) { g_cap.store(n < 0 ? 0 : n); }
int max_threads() { return g_cap.load(); }

int effective_threads() {
#ifdef _OPENMP
  int cap = g_cap.load();
  int dflt = omp_get_max_threads();
  return cap > 0 ? cap : dflt;
#else
  return 1;
#endif
}

namespace detail {

void run_indexed(std::ptrdiff_t n, void* ctx, void (*fn)(void*, std::ptrdiff_t)) {
  if (n <= 0) return;
#ifdef _OPENMP
  int nt = effective_threads();
  if (nt > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(ctx, i);
    return;
  }
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(ctx, i);
}

}  // namespace detail

}  // namespace chaindisc::par
