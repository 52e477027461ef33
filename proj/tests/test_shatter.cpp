#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chaindisc/errors.hpp"
#include "chaindisc/rng.hpp"
#include "chaindisc/shatter.hpp"

using namespace chaindisc;

namespace {

PointSet cube2() {
  std::vector<std::vector<double>> rows;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) rows.push_back({double(a), double(b)});
  return PointSet(rows, 2);
}

PointSet random_box(std::size_t m, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows(m, std::vector<double>(n));
  for (auto& r : rows)
    for (auto& v : r) v = rng.uniform(-1.0, 1.0);
  return PointSet(std::move(rows), n);
}

}  // namespace

TEST_CASE("two separated values shatter one coordinate") {
  PointSet T({{0.0, 0.0}, {2.0, 0.0}}, 2);
  auto w = is_shattered(T, IndexSet({0}), 1.0, false);
  REQUIRE(w.has_value());
  CHECK(w->levels.size() == 1);
  // the only admissible level is the midpoint
  CHECK(w->levels[0] == doctest::Approx(1.0));
  CHECK(witness_valid(T, 1.0, *w));
  // margin 1 is tight: nothing wider fits
  CHECK(!is_shattered(T, IndexSet({0}), 1.0 + 1e-9, false).has_value());
  // the flat coordinate is never shattered
  CHECK(!is_shattered(T, IndexSet({1}), 0.1, false).has_value());
}

TEST_CASE("the sign cube shatters everything at margin 1") {
  PointSet T = cube2();
  auto w = is_shattered(T, IndexSet({0, 1}), 1.0, false);
  REQUIRE(w.has_value());
  CHECK(witness_valid(T, 1.0, *w));
  CHECK(w->assignment.size() == 4);  // one witness per pattern
  CHECK(vc_dim(T, 1.0, false) == 2);
}

TEST_CASE("tampered witnesses fail replay") {
  PointSet T = cube2();
  auto w = is_shattered(T, IndexSet({0, 1}), 1.0, false);
  REQUIRE(w.has_value());
  ShatterWitness bad = *w;
  bad.levels[0] += 0.5;
  CHECK(!witness_valid(T, 1.0, bad));
}

TEST_CASE("cardinality prunes shattering") {
  // 3 rows can never realize the 4 patterns of a pair
  PointSet T({{0.0, 0.0}, {2.0, 2.0}, {2.0, 0.0}}, 2);
  CHECK(!is_shattered(T, IndexSet({0, 1}), 0.5, false).has_value());
  CHECK(is_shattered(T, IndexSet({0}), 1.0, false).has_value());
  CHECK(vc_dim(T, 0.5, false) == 1);
}

TEST_CASE("empty subset is vacuously shattered") {
  PointSet T({{1.0}}, 1);
  CHECK(is_shattered(T, IndexSet(std::vector<std::size_t>{}), 1.0, false)
            .has_value());
}

TEST_CASE("vc dimension is monotone in the margin") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    PointSet T = random_box(6, 4, seed);
    std::size_t prev = 5;
    for (double eps : {0.1, 0.3, 0.6, 1.0}) {
      std::size_t v = vc_dim(T, eps, false);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("hull shattering on a segment") {
  PointSet T({{1.0, 0.0}}, 2);
  CHECK(hull_generators(T).size() == 2);  // e1 and -e1
  auto w = is_shattered(T, IndexSet({0}), 1.0, true);
  REQUIRE(w.has_value());
  CHECK(w->hull);
  CHECK(witness_valid(T, 1.0, *w));
  CHECK(!is_shattered(T, IndexSet({0}), 1.0 + 1e-6, true).has_value());
  // hull witnesses carry convex weights, one row per pattern
  CHECK(w->weights.size() == 2);
}

TEST_CASE("cross polytope: pairs need margin <= 1/2") {
  PointSet T({{1.0, 0.0}, {0.0, 1.0}}, 2);
  // the box s +- eps on both coordinates must fit in |x|_1 <= 1
  CHECK(vc_dim(T, 0.4, true) == 2);
  CHECK(vc_dim(T, 0.6, true) == 1);
  auto w = is_shattered(T, IndexSet({0, 1}), 0.5, true);
  CHECK(w.has_value());  // corners exactly on the boundary
  if (w) CHECK(witness_valid(T, 0.5, *w));
}

TEST_CASE("rank bounds hull shattering") {
  // three collinear directions: rank 1, so no pair is ever hull-shattered
  PointSet T({{1.0, 1.0}, {2.0, 2.0}, {-0.5, -0.5}}, 2);
  CHECK(!is_shattered(T, IndexSet({0, 1}), 0.1, true).has_value());
  CHECK(vc_dim(T, 0.1, true) == 1);
}

TEST_CASE("shatter input guards") {
  PointSet T = cube2();
  CHECK_THROWS_AS(is_shattered(T, IndexSet({0}), 0.0, false), config_error);
  CHECK_THROWS_AS(is_shattered(T, IndexSet({7}), 0.5, false), config_error);
  PointSet wide = random_box(2, 17, 1);
  CHECK_THROWS_AS(vc_dim(wide, 0.5, false), size_error);
}

TEST_CASE("packing sweep against a declared dimension") {
  // nested intervals have VC dimension 1
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < 5; ++j) {
    std::vector<double> r(8, 0.0);
    for (std::size_t i = 3 - std::min<std::size_t>(3, j);
         i <= 4 + std::min<std::size_t>(3, j); ++i)
      r[i] = 1.0;
    rows.push_back(r);
  }
  PointSet T(rows, 8);
  HausslerReport rep = haussler_check(T, 1, 9);
  CHECK(rep.declared_d == 1);
  CHECK(rep.vc_checked);
  CHECK(rep.measured_vc == 1);
  CHECK(!rep.violation);
  CHECK(!rep.entries.empty());
  CHECK(rep.implied_constant > 0.0);
  for (const auto& e : rep.entries) {
    CHECK(e.packing >= 1.0);
    double scaled = e.packing * std::pow(e.eps / std::sqrt(double(e.subset.size())), 2.0);
    CHECK(e.implied == doctest::Approx(scaled).epsilon(1e-9));
  }
  CHECK_THROWS_AS(haussler_check(T, 0, 1), config_error);
}

TEST_CASE("shattering lower bound for hereditary discrepancy") {
  PointSet T = cube2();
  CHECK(hdisc_vc_lower(T, {1.0}) == doctest::Approx(2.0));
  CHECK(hdisc_vc_lower(T, {1.0, 0.5, 0.25}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(hdisc_vc_lower(T, {}), config_error);
  CHECK_THROWS_AS(hdisc_vc_lower(T, {-1.0}), config_error);
}
