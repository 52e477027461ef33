#pragma once
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaindisc/errors.hpp"

namespace chaindisc {

// Sorted, duplicate-free set of coordinate indices. 0-based in memory;
// file/CLI round trips add or strip 1 at the boundary.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<std::size_t> idx);
  static IndexSet full(std::size_t n);

  const std::vector<std::size_t>& indices() const { return idx_; }
  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  bool contains(std::size_t i) const;
  std::size_t operator[](std::size_t pos) const { return idx_[pos]; }

  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

 private:
  std::vector<std::size_t> idx_;
};

// Finite set of vectors sharing one ambient dimension. Construction rejects
// NaN/inf and ragged rows; everything downstream can assume clean data.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::vector<std::vector<double>> rows, std::size_t dim);
  static PointSet from_rows(std::vector<std::vector<double>> rows);

  std::size_t size() const { return pts_.size(); }
  std::size_t dim() const { return dim_; }
  bool empty() const { return pts_.empty(); }
  const std::vector<double>& operator[](std::size_t i) const { return pts_[i]; }
  const std::vector<std::vector<double>>& rows() const { return pts_; }

  void push_back(std::vector<double> p);

  // distinct rows, first occurrence kept, order preserved
  PointSet deduplicated() const;
  bool contains_origin() const;

 private:
  std::vector<std::vector<double>> pts_;
  std::size_t dim_ = 0;
};

// Signs in {-1,0,+1}. A full coloring has no zeros; a partial one leaves the
// zero coordinates for later rounds.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<int> signs);
  static Coloring ones(std::size_t n);

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<int>& signs() const { return signs_; }
  void set(std::size_t i, int s);

  std::size_t zero_count() const { return zeros_; }
  bool full() const { return zeros_ == 0; }
  IndexSet zero_set() const;

 private:
  std::vector<int> signs_;
  std::size_t zeros_ = 0;
};

// Distance between vectors, either plain Euclidean or the empirical L2 norm
// (Euclidean / sqrt(#coords)), optionally restricted to an index set.
struct Metric {
  enum class Kind { euclidean, empirical_l2 };
  Kind kind = Kind::euclidean;
  std::optional<IndexSet> restrict_to;  // nullopt = all coordinates

  static Metric euclidean() { return {Kind::euclidean, std::nullopt}; }
  static Metric empirical(std::size_t n) {
    return {Kind::empirical_l2, IndexSet::full(n)};
  }
  static Metric euclidean_on(IndexSet I) { return {Kind::euclidean, std::move(I)}; }
  static Metric empirical_on(IndexSet I) {
    return {Kind::empirical_l2, std::move(I)};
  }

  double dist(const std::vector<double>& a, const std::vector<double>& b) const;
  double norm(const std::vector<double>& a) const;
};

// ---- small vector helpers ------------------------------------------------

// keep only the coordinates in I (result dim = |I|)
PointSet project(const PointSet& T, const IndexSet& I);
std::vector<double> project(const std::vector<double>& t, const IndexSet& I);

// sum_i eta_i * t_i with Neumaier-compensated accumulation
double signed_sum(const std::vector<double>& t, const Coloring& eta);

// absolute values sorted nonincreasing: (x_1^*, ..., x_n^*)
std::vector<double> rearrange_nonincreasing(const std::vector<double>& x);

// x_j^* <= r/sqrt(j) for all j (1-based), within tol
bool weak_l2_membership(const std::vector<double>& x, double r, double tol = 1e-9);

// smallest r such that x lies in the weak-l2 ball of radius r
double weak_l2_radius(const std::vector<double>& x);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double l2norm(const std::vector<double>& a);
double l2dist(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace chaindisc
