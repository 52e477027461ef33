#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chaindisc/core.hpp"
#include "chaindisc/errors.hpp"

using namespace chaindisc;

TEST_CASE("index set basics") {
  IndexSet I({2, 0, 5});
  CHECK(I.size() == 3);
  CHECK(I.contains(0));
  CHECK(I.contains(2));
  CHECK(I.contains(5));
  CHECK(!I.contains(1));
  CHECK(I[0] == 0);  // stored sorted
  CHECK(I[2] == 5);

  IndexSet full = IndexSet::full(4);
  CHECK(full.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(full[i] == i);
}

TEST_CASE("point set dedup and origin") {
  PointSet T({{1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}, 2);
  CHECK(T.size() == 3);
  PointSet D = T.deduplicated();
  CHECK(D.size() == 2);
  CHECK(D.contains_origin());
  PointSet N({{1.0, 2.0}}, 2);
  CHECK(!N.contains_origin());
}

TEST_CASE("projection keeps row order and picks columns") {
  PointSet T({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}}, 3);
  PointSet P = project(T, IndexSet({0, 2}));
  CHECK(P.dim() == 2);
  CHECK(P[0][0] == 1.0);
  CHECK(P[0][1] == 3.0);
  CHECK(P[1][1] == 6.0);
}

TEST_CASE("coloring zero bookkeeping") {
  Coloring c({1, 0, -1, 0});
  CHECK(c.size() == 4);
  CHECK(c.zero_count() == 2);
  CHECK(!c.full());
  CHECK(c.zero_set().size() == 2);
  c.set(1, -1);
  CHECK(c.zero_count() == 1);
  CHECK_THROWS_AS(Coloring({2}), config_error);
}

TEST_CASE("signed sum matches direct evaluation") {
  std::vector<double> t{0.5, -1.0, 2.0};
  Coloring eta({1, -1, 1});
  CHECK(signed_sum(t, eta) == doctest::Approx(3.5).epsilon(1e-12));
  Coloring part({1, 0, 1});
  CHECK(signed_sum(t, part) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("metrics") {
  std::vector<double> a{1.0, 0.0}, b{0.0, 1.0};
  Metric e = Metric::euclidean();
  CHECK(e.dist(a, b) == doctest::Approx(std::sqrt(2.0)));
  // empirical metric normalizes by the window size
  Metric emp = Metric::empirical(2);
  CHECK(emp.dist(a, b) == doctest::Approx(1.0));
  Metric er = Metric::euclidean_on(IndexSet({0}));
  CHECK(er.dist(a, b) == doctest::Approx(1.0));
}

TEST_CASE("rearrangement sorts by magnitude") {
  auto r = rearrange_nonincreasing({-3.0, 1.0, 2.0});
  CHECK(r[0] == 3.0);
  CHECK(r[1] == 2.0);
  CHECK(r[2] == 1.0);
}

TEST_CASE("weak l2 ball membership and radius") {
  // x_i* <= r / sqrt(i)
  std::vector<double> x{1.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(3.0)};
  CHECK(weak_l2_membership(x, 1.0));
  CHECK(!weak_l2_membership(x, 0.9));
  CHECK(weak_l2_radius(x) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weak_l2_radius({0.0, 0.0}) == 0.0);
  // radius is monotone under coordinate growth
  CHECK(weak_l2_radius({2.0, 1.0}) >= weak_l2_radius({1.0, 1.0}));
}

TEST_CASE("weak l2 radius certifies membership") {
  std::vector<double> x{0.3, -2.0, 0.7, 1.1};
  double r = weak_l2_radius(x);
  CHECK(weak_l2_membership(x, r));
  CHECK(!weak_l2_membership(x, r * (1.0 - 1e-6)));
}
