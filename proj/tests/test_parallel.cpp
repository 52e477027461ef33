#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "chaindisc/coloring.hpp"
#include "chaindisc/enum_kernel.hpp"
#include "chaindisc/lab.hpp"
#include "chaindisc/parallel.hpp"
#include "chaindisc/ref_kernels.hpp"
#include "chaindisc/rng.hpp"

using namespace chaindisc;

namespace {

std::vector<std::vector<double>> random_cols(std::size_t n, std::size_t m,
                                             std::uint64_t seed) {
  std::vector<std::vector<double>> cols(n, std::vector<double>(m));
  Rng rng(seed);
  for (auto& c : cols)
    for (auto& v : c) v = rng.uniform(-1.0, 1.0);
  return cols;
}

}  // namespace

TEST_CASE("fast min-sup kernel agrees with the naive one") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    auto cols = random_cols(12, 9, seed);
    std::vector<double> base(9);
    Rng rng(seed + 100);
    for (auto& v : base) v = rng.uniform(-0.5, 0.5);

    auto fast = kernel::min_sup_enum(cols, base, false);
    auto slow = ref::min_sup_naive(cols, base, false);
    CHECK(std::abs(fast.value - slow.value) <= 1e-12);
    CHECK(fast.mask == slow.mask);

    auto fast0 = kernel::min_sup_enum(cols, {}, true);
    auto slow0 = ref::min_sup_naive(cols, {}, true);
    CHECK(std::abs(fast0.value - slow0.value) <= 1e-12);
    CHECK(fast0.mask == slow0.mask);
  }
}

TEST_CASE("fast mean-sup kernel agrees with the naive one") {
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    auto cols = random_cols(10, 6, seed);
    CHECK(std::abs(kernel::mean_sup_enum(cols) - ref::mean_sup_naive(cols)) <=
          1e-12);
  }
}

TEST_CASE("parallel monte carlo folds like the serial loop") {
  Rng rng(42);
  std::vector<std::vector<double>> rows(3, std::vector<double>(30));
  for (auto& r : rows)
    for (auto& v : r) v = rng.gauss();
  PointSet V(std::vector<std::vector<double>>(rows), 30);

  Estimate mc = emp_sign_sup(V, false, 5000, 99);
  double naive = ref::mc_sign_sup_naive(rows, 5000, 99);
  CHECK(mc.value == naive);  // identical streams, identical fold order
}

TEST_CASE("thread count never changes results") {
  PointSet T = PointSet(random_cols(10, 8, 5), 8);  // 10 points in R^8

  par::set_max_threads(1);
  DiscResult d1 = disc_heuristic(T, 512, 7);
  par::set_max_threads(4);
  DiscResult d4 = disc_heuristic(T, 512, 7);
  par::set_max_threads(0);
  CHECK(d1.value == d4.value);
  CHECK(d1.witness.signs() == d4.witness.signs());

  PointSet S = PointSet(random_cols(4, 16, 11), 16);
  Schedule sched = schedule_gamma(16);
  AdmissibleSequence seq =
      build_admissible(S, Metric::euclidean(), BuildStrategy::greedy);
  par::set_max_threads(1);
  PartialColorResult p1 = partial_color(S, sched, seq, 20000, 13);
  par::set_max_threads(4);
  PartialColorResult p4 = partial_color(S, sched, seq, 20000, 13);
  par::set_max_threads(0);
  CHECK(p1.success == p4.success);
  CHECK(p1.measured_sup == p4.measured_sup);
  CHECK(p1.eta.signs() == p4.eta.signs());
}

TEST_CASE("thread plumbing basics") {
  par::set_max_threads(0);
  CHECK(par::effective_threads() >= 1);
  par::set_max_threads(3);
  CHECK(par::max_threads() == 3);
  par::set_max_threads(0);
}
