// Timing comparison: the chunked/Gray-code kernels against their naive
// serial references. Run with OMP_NUM_THREADS set to see the scaling.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "chaindisc/coloring.hpp"
#include "chaindisc/enum_kernel.hpp"
#include "chaindisc/parallel.hpp"
#include "chaindisc/ref_kernels.hpp"
#include "chaindisc/rng.hpp"

using namespace chaindisc;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::vector<std::vector<double>> random_cols(std::size_t n, std::size_t m,
                                             std::uint64_t seed) {
  std::vector<std::vector<double>> cols(n, std::vector<double>(m));
  Rng rng(seed);
  for (auto& c : cols)
    for (auto& v : c) v = rng.uniform(-1.0, 1.0);
  return cols;
}

void row(const char* name, double fast_ms, double ref_ms, double delta) {
  std::printf("%-22s fast %9.1f ms   naive %9.1f ms   x%5.1f   |delta| %.3g\n",
              name, fast_ms, ref_ms, ref_ms / fast_ms, delta);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", par::effective_threads());

  {
    auto cols = random_cols(22, 48, 7);
    double t0 = now_ms();
    kernel::MinSup fast = kernel::min_sup_enum(cols, {}, true);
    double t1 = now_ms();
    ref::MinSup naive = ref::min_sup_naive(cols, {}, true);
    double t2 = now_ms();
    row("min_sup 2^21 x 48", t1 - t0, t2 - t1,
        std::abs(fast.value - naive.value));
  }
  {
    auto cols = random_cols(22, 48, 11);
    double t0 = now_ms();
    double fast = kernel::mean_sup_enum(cols);
    double t1 = now_ms();
    double naive = ref::mean_sup_naive(cols);
    double t2 = now_ms();
    row("mean_sup 2^21 x 48", t1 - t0, t2 - t1, std::abs(fast - naive));
  }
  {
    std::vector<std::vector<double>> rows(64, std::vector<double>(256));
    Rng rng(3);
    for (auto& r : rows)
      for (auto& v : r) v = rng.gauss();
    PointSet V(rows, 256);
    double t0 = now_ms();
    double fast = disc_heuristic(V, 4096, 5).value;
    double t1 = now_ms();
    double mc = ref::mc_sign_sup_naive(rows, 2048, 5);
    double t2 = now_ms();
    std::printf(
        "%-22s heuristic %7.1f ms   serial-mc %7.1f ms   (values %.3f / %.3f)\n",
        "disc 64x256", t1 - t0, t2 - t1, fast, mc);
  }
  return 0;
}
