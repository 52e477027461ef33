#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chaindisc/errors.hpp"
#include "chaindisc/lab.hpp"

using namespace chaindisc;

namespace {

PointSet sphere_points(std::size_t m, std::size_t d, std::uint64_t seed) {
  std::vector<std::vector<double>> rows(m, std::vector<double>(d));
  for (std::size_t j = 0; j < m; ++j) {
    Rng rng = Rng::child(seed, j);
    double n2 = 0.0;
    for (auto& v : rows[j]) {
      v = rng.gauss();
      n2 += v * v;
    }
    for (auto& v : rows[j]) v /= std::sqrt(n2);
  }
  return PointSet(std::move(rows), d);
}

}  // namespace

TEST_CASE("measure construction and validation") {
  MeasureSpec g = MeasureSpec::gaussian(3);
  CHECK(g.dim == 3);
  Rng rng(1);
  CHECK(g.sample(rng).size() == 3);

  MeasureSpec c = MeasureSpec::cube(2);
  for (int i = 0; i < 20; ++i) {
    auto x = c.sample(rng);
    for (double v : x) CHECK(std::abs(v) == 1.0);
  }

  // a fair +-1 marginal is mean zero, variance one
  MeasureSpec ok = MeasureSpec::custom(2, {-1.0, 1.0}, {0.5, 0.5}, 2.0);
  auto x = ok.sample(rng);
  CHECK((x[0] == 1.0 || x[0] == -1.0));

  CHECK_THROWS_AS(MeasureSpec::custom(1, {1.0}, {1.0}, 1.0), config_error);
  CHECK_THROWS_AS(MeasureSpec::custom(1, {-1.0, 1.0}, {0.6, 0.5}, 1.0),
                  config_error);
  CHECK_THROWS_AS(MeasureSpec::custom(1, {-2.0, 1.0}, {0.5, 0.5}, 1.0),
                  config_error);
  CHECK_THROWS_AS(MeasureSpec::custom(1, {-1.0, 1.0}, {0.5, 0.5}, 0.0),
                  config_error);
  CHECK_THROWS_AS(MeasureSpec::gaussian(0), config_error);
}

TEST_CASE("sampled projection shape and determinism") {
  LinearClass cls{PointSet({{1.0, 0.0}, {0.5, 0.5}}, 2), MeasureSpec::gaussian(2)};
  auto [win, P] = sample_projection(cls, 5, 42);
  CHECK(win.sigma.size() == 5);
  CHECK(P.size() == 2);
  CHECK(P.dim() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(P[0][i] == doctest::Approx(win.sigma[i][0]).epsilon(1e-15));

  auto [win2, P2] = sample_projection(cls, 5, 42);
  CHECK(P.rows() == P2.rows());
  CHECK_THROWS_AS(sample_projection(cls, 0, 1), config_error);
}

TEST_CASE("psi2 proxy on pinned inputs") {
  std::vector<double> ones(200, 1.0);
  // every p-norm of a constant is 1, so the sup sits at p = 2
  CHECK(psi2_estimate(ones) == doctest::Approx(1.0 / std::sqrt(2.0)));
  std::vector<double> few(5, 1.0);
  CHECK_THROWS_AS(psi2_estimate(few), size_error);

  Rng rng(7);
  std::vector<double> gs(100000);
  for (auto& v : gs) v = rng.gauss();
  double p = psi2_estimate(gs);
  CHECK(p >= 0.5);
  CHECK(p <= 2.0);
}

TEST_CASE("sign sup: exact enumeration matches the closed form") {
  PointSet V({{1.0, 1.0}}, 2);
  Estimate e = emp_sign_sup(V, true, 0, 0);
  CHECK(e.exact);
  // |e1 + e2| is 0 or 2 with equal probability
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));

  Estimate mc = emp_sign_sup(V, false, 4000, 5);
  CHECK(!mc.exact);
  CHECK(std::abs(mc.value - 1.0) <= 5.0 * mc.ci_half + 1e-9);

  PointSet wide(std::vector<std::vector<double>>{std::vector<double>(21, 1.0)},
                21);
  CHECK_THROWS_AS(emp_sign_sup(wide, true, 0, 0), size_error);
}

TEST_CASE("gaussian width of a singleton") {
  PointSet V({{3.0, 4.0}}, 2);
  Estimate e = gauss_mean_width(V, 20000, 3);
  // closed form: |v| sqrt(2/pi)
  double want = 5.0 * std::sqrt(2.0 / 3.14159265358979323846);
  CHECK(std::abs(e.value - want) <= 5.0 * e.ci_half);
  CHECK_THROWS_AS(gauss_mean_width(V, 50, 1), config_error);
}

TEST_CASE("decomposition reconstructs exactly") {
  LinearClass cls{sphere_points(12, 4, 9), MeasureSpec::gaussian(4)};
  Decomposition dec = decompose(cls, 64, 8);
  CHECK(dec.m == 8);
  CHECK(dec.k == 64);
  REQUIRE(dec.f1_part.size() == cls.T.size());
  for (std::size_t r = 0; r < cls.T.size(); ++r)
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(dec.f1_part[r][i] + dec.f2_part[r][i] == cls.T[r][i]);
  // the projected part lives in the source set
  for (std::size_t r = 0; r < cls.T.size(); ++r)
    CHECK(dec.f2_part[r] == cls.T[dec.net_rows[r]]);
  CHECK(dec.net_size >= 1);
  CHECK_THROWS_AS(decompose(cls, 4, 5), config_error);
  CHECK_THROWS_AS(decompose(cls, 4, 0), config_error);
}

TEST_CASE("deep target level degenerates to the identity net") {
  LinearClass cls{sphere_points(6, 3, 2), MeasureSpec::gaussian(3)};
  // tau_m(8, 256) far exceeds the depth of a 6-point greedy sequence
  Decomposition dec = decompose(cls, 256, 128);
  CHECK(dec.level <= dec.tau);
  CHECK(dec.degenerate);
  for (std::size_t r = 0; r < cls.T.size(); ++r)
    for (double v : dec.f1_part[r]) CHECK(v == 0.0);
}

TEST_CASE("wide sets leave a genuine residual") {
  // 300 points exceed the 256-point cap at the target level, so the net
  // cannot swallow the whole set
  LinearClass cls{sphere_points(300, 4, 31), MeasureSpec::gaussian(4)};
  Decomposition dec = decompose(cls, 32, 1);
  CHECK(dec.tau == 3);
  CHECK(dec.level == 3);
  CHECK(!dec.degenerate);
  CHECK(dec.net_size == 256);
  CHECK(dec.gamma_tau > 0.0);
  for (std::size_t r = 0; r < cls.T.size(); ++r)
    CHECK(dec.f2_part[r] == cls.T[dec.net_rows[r]]);

  auto [win, P] = sample_projection(cls, 32, 77);
  WeakL2Report wk = verify_weak_l2_containment(dec, win);
  CHECK(!wk.degenerate);
  CHECK(wk.max_radius > 0.0);
  CHECK(wk.c1_hat > 0.0);

  ShrinkReport sh = verify_shrinking(dec, win, 200, 19);
  CHECK(sh.pairs + sh.skipped == 200);
  CHECK(sh.pairs >= 150);
  CHECK(sh.c2_hat > 0.0);
}

TEST_CASE("weak l2 report wiring") {
  LinearClass cls{sphere_points(10, 4, 5), MeasureSpec::gaussian(4)};
  Decomposition dec = decompose(cls, 32, 4);
  auto [win, P] = sample_projection(cls, 32, 7);
  WeakL2Report rep = verify_weak_l2_containment(dec, win);
  CHECK(rep.vectors == 10);
  CHECK(rep.max_radius >= 0.0);
  if (!rep.degenerate)
    CHECK(rep.c1_hat == doctest::Approx(rep.max_radius / rep.gamma_bound));

  SampleWindow other;
  other.sigma.resize(5);
  CHECK_THROWS_AS(verify_weak_l2_containment(dec, other), config_error);
}

TEST_CASE("shrinking pairs bookkeeping") {
  LinearClass cls{sphere_points(10, 4, 6), MeasureSpec::gaussian(4)};
  Decomposition dec = decompose(cls, 32, 4);
  auto [win, P] = sample_projection(cls, 32, 11);
  ShrinkReport rep = verify_shrinking(dec, win, 64, 13);
  CHECK(rep.pairs >= 1);
  CHECK(rep.violations <= rep.pairs);
  CHECK(rep.c2_hat >= 0.0);
  CHECK(rep.full_ratio_max >= 0.0);
}

TEST_CASE("single-vector shrink quantiles") {
  ShrinkSingleReport rep =
      shrink_single({1.0, 0.0}, MeasureSpec::gaussian(2), 16, 200, 3);
  REQUIRE(rep.constants.size() == 200);
  for (std::size_t i = 1; i < rep.constants.size(); ++i)
    CHECK(rep.constants[i] >= rep.constants[i - 1]);
  CHECK(rep.quantile(0.5) <= rep.quantile(0.95));
  CHECK(rep.quantile(1.0) == rep.constants.back());
  CHECK(rep.constants.front() > 0.0);

  ShrinkSingleReport zero =
      shrink_single({0.0}, MeasureSpec::gaussian(1), 4, 100, 1);
  CHECK(zero.quantile(0.95) == 0.0);
  CHECK_THROWS_AS(shrink_single({1.0}, MeasureSpec::gaussian(1), 4, 10, 1),
                  config_error);
}

TEST_CASE("order statistics anchors and shape") {
  OrderStatsReport rep = order_stats(1, 40000, 21, {1});
  // E|g| = sqrt(2/pi)
  CHECK(rep.mean_sorted[0] ==
        doctest::Approx(std::sqrt(2.0 / 3.14159265358979323846)).epsilon(0.03));

  OrderStatsReport r8 = order_stats(8, 2000, 5, {1, 4, 16});
  CHECK(r8.mean_sorted.size() == 8);
  CHECK(r8.ratio.size() == 4);  // i <= n/2
  CHECK(r8.m_grid == std::vector<std::size_t>{1, 4});  // 16 > n dropped
  for (double v : r8.ratio) {
    CHECK(v > 0.2);
    CHECK(v < 2.0);
  }
  // sorted means decrease
  for (std::size_t i = 1; i < 8; ++i)
    CHECK(r8.mean_sorted[i] <= r8.mean_sorted[i - 1]);
  CHECK_THROWS_AS(order_stats(0, 1000, 1, {1}), config_error);
  CHECK_THROWS_AS(order_stats(4, 10, 1, {1}), config_error);
}

TEST_CASE("mean width ratio rows") {
  LinearClass cls{sphere_points(8, 3, 4), MeasureSpec::gaussian(3)};
  MeanWidthReport rep = meanwidth_ratio(cls, 16, {2, 8, 32}, 5, 400, 17);
  CHECK(rep.ell_T > 0.0);
  REQUIRE(rep.rows.size() == 2);  // m = 32 > k dropped
  for (const auto& row : rep.rows) {
    CHECK(row.c3_hat > 0.0);
    CHECK(row.lower_ratio >= 0.0);
  }
}

TEST_CASE("almost isometry: the cube anchor never violates") {
  // every coordinate of a sign vector squares to 1, so e1 projects to
  // exactly unit empirical norm in every trial
  LinearClass cls{PointSet({{1.0, 0.0, 0.0}}, 3), MeasureSpec::cube(3)};
  IsometryReport rep = almost_isometry(cls, 16, 50, 0.0, 3, 1.0);
  CHECK(rep.checked == 50);
  CHECK(rep.violations == 0);
  CHECK(rep.rate == 0.0);
}

TEST_CASE("isometry threshold excludes short points") {
  LinearClass cls{PointSet({{0.0, 0.0}, {1.0, 0.0}}, 2), MeasureSpec::gaussian(2)};
  // threshold 10/sqrt(4) = 5 kills even the unit vector
  IsometryReport rep = almost_isometry(cls, 4, 10, 10.0, 1, 1.0);
  CHECK(rep.checked == 0);
  CHECK(rep.rate == 0.0);
}

TEST_CASE("truncation splits and re-sums exactly") {
  PointSet V({{0.5, -2.0}}, 2);
  auto [lo, hi] = truncate_split(V, 1.0);
  CHECK(lo[0][0] == 0.5);
  CHECK(lo[0][1] == -1.0);
  CHECK(hi[0][0] == 0.0);
  CHECK(hi[0][1] == -1.0);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(lo[0][i] + hi[0][i] == V[0][i]);

  auto [all, none] = truncate_split(V, 5.0);
  CHECK(none[0][0] == 0.0);
  CHECK(none[0][1] == 0.0);
  CHECK_THROWS_AS(truncate_split(V, 0.0), config_error);
}

TEST_CASE("bound curve evaluation") {
  // 16^{1/4} = 2 makes this instance exact arithmetic
  double want = 0.5 * std::sqrt(1.0 + std::log(16.0)) +
                2.0 * std::log(256.0) / 2.0;
  CHECK(eval_a_n(16, 256, 0.5, 2.0, 0.25) == doctest::Approx(want).epsilon(1e-12));
  CHECK(eval_a_n(16, 16, 0.0, 0.0, 0.25) == 0.0);
  CHECK_THROWS_AS(eval_a_n(4, 2, 1.0, 1.0, 0.25), config_error);
  CHECK_THROWS_AS(eval_a_n(2, 4, 1.0, 1.0, 0.5), config_error);
  CHECK_THROWS_AS(eval_a_n(2, 4, 1.0, 1.0, 0.0), config_error);

  CHECK(s0_for(16) == 2);
  CHECK(s0_for(256) == 3);
  CHECK(s0_for(1) == 0);
  CHECK(s0_for(2) == 0);
}

TEST_CASE("isotropy of the named measures") {
  std::vector<double> x{0.3, -0.7, 0.2};
  for (auto mu : {MeasureSpec::gaussian(3), MeasureSpec::cube(3)}) {
    double r = isotropy_ratio(mu, x, 100000, 11);
    CHECK(r >= 0.9);
    CHECK(r <= 1.1);
  }
  CHECK_THROWS_AS(isotropy_ratio(MeasureSpec::gaussian(2), {0.0, 0.0}, 10, 1),
                  config_error);
}

TEST_CASE("tail fits return usable constants") {
  MeasureSpec mu = MeasureSpec::gaussian(2);
  TailFit f = psi2_tail_check(mu, {1.0, 0.0}, 8, 500, 9);
  REQUIRE(f.t_grid.size() == f.emp_prob.size());
  CHECK(f.c_fit >= 0.0);
  for (double p : f.emp_prob) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }

  TailFit b = bernstein_check(mu, {1.0, 0.0}, 8, 500, 9);
  CHECK(b.c_fit >= 0.0);
}

TEST_CASE("gap experiment handles degenerate classes") {
  LinearClass zero{PointSet({{0.0, 0.0}}, 2), MeasureSpec::gaussian(2)};
  GapReport rep = gap_experiment(zero, {4}, 64, 5, 0.25, 3);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].degenerate_trials == 5);
  CHECK(rep.rows[0].median_ratio == 0.0);
  CHECK(rep.sigma_f == 0.0);
}

TEST_CASE("gap ratio shrinks with the window") {
  LinearClass cls{PointSet({{0.6, 0.8}, {-0.8, 0.6}}, 2),
                  MeasureSpec::gaussian(2)};
  GapReport rep = gap_experiment(cls, {4, 16}, 512, 12, 0.25, 8);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].degenerate_trials == 0);
  CHECK(rep.rows[1].median_ratio < rep.rows[0].median_ratio);
  for (const auto& row : rep.rows) {
    CHECK(row.min_anchor > 0.1);
    CHECK(row.a_k > 0.0);
  }
}
