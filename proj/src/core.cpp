#include "chaindisc/core.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

namespace chaindisc {

IndexSet::IndexSet(std::vector<std::size_t> idx) : idx_(std::move(idx)) {
  std::sort(idx_.begin(), idx_.end());
  idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

IndexSet IndexSet::full(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  IndexSet s;
  s.idx_ = std::move(v);
  return s;
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

PointSet::PointSet(std::vector<std::vector<double>> rows, std::size_t dim)
    : pts_(std::move(rows)), dim_(dim) {
  for (const auto& p : pts_) {
    if (p.size() != dim_) throw config_error("point set has ragged rows");
    for (double v : p)
      if (!std::isfinite(v)) throw config_error("point set has non-finite entry");
  }
}

PointSet PointSet::from_rows(std::vector<std::vector<double>> rows) {
  std::size_t d = rows.empty() ? 0 : rows.front().size();
  return PointSet(std::move(rows), d);
}

void PointSet::push_back(std::vector<double> p) {
  if (pts_.empty() && dim_ == 0) dim_ = p.size();
  if (p.size() != dim_) throw config_error("point dimension mismatch");
  for (double v : p)
    if (!std::isfinite(v)) throw config_error("point has non-finite entry");
  pts_.push_back(std::move(p));
}

PointSet PointSet::deduplicated() const {
  PointSet out;
  out.dim_ = dim_;
  std::map<std::vector<double>, bool> seen;
  for (const auto& p : pts_) {
    if (seen.emplace(p, true).second) out.pts_.push_back(p);
  }
  return out;
}

bool PointSet::contains_origin() const {
  for (const auto& p : pts_) {
    bool zero = true;
    for (double v : p)
      if (v != 0.0) {
        zero = false;
        break;
      }
    if (zero) return true;
  }
  return false;
}

Coloring::Coloring(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s < -1 || s > 1) throw config_error("coloring entries must be -1, 0 or +1");
    if (s == 0) ++zeros_;
  }
}

Coloring Coloring::ones(std::size_t n) { return Coloring(std::vector<int>(n, 1)); }

void Coloring::set(std::size_t i, int s) {
  assert(s >= -1 && s <= 1);
  if (signs_[i] == 0) --zeros_;
  if (s == 0) ++zeros_;
  signs_[i] = s;
}

IndexSet Coloring::zero_set() const {
  std::vector<std::size_t> z;
  for (std::size_t i = 0; i < signs_.size(); ++i)
    if (signs_[i] == 0) z.push_back(i);
  return IndexSet(std::move(z));
}

double Metric::dist(const std::vector<double>& a, const std::vector<double>& b) const {
  assert(a.size() == b.size());
  double s = 0.0;
  std::size_t m = 0;
  if (restrict_to) {
    for (std::size_t i : *restrict_to) {
      double d = a[i] - b[i];
      s += d * d;
    }
    m = restrict_to->size();
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      double d = a[i] - b[i];
      s += d * d;
    }
    m = a.size();
  }
  double r = std::sqrt(s);
  if (kind == Kind::empirical_l2 && m > 0) r /= std::sqrt(double(m));
  return r;
}

double Metric::norm(const std::vector<double>& a) const {
  std::vector<double> zero(a.size(), 0.0);
  return dist(a, zero);
}

PointSet project(const PointSet& T, const IndexSet& I) {
  for (std::size_t i : I)
    if (i >= T.dim()) throw config_error("projection index out of range");
  std::vector<std::vector<double>> rows;
  rows.reserve(T.size());
  for (std::size_t r = 0; r < T.size(); ++r) rows.push_back(project(T[r], I));
  return PointSet(std::move(rows), I.size());
}

std::vector<double> project(const std::vector<double>& t, const IndexSet& I) {
  std::vector<double> out;
  out.reserve(I.size());
  for (std::size_t i : I) out.push_back(t[i]);
  return out;
}

double signed_sum(const std::vector<double>& t, const Coloring& eta) {
  if (t.size() != eta.size()) throw config_error("signed_sum: length mismatch");
  // Neumaier: running sum plus a compensation for lost low-order bits
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    int s = eta[i];
    if (s == 0) continue;
    double term = s > 0 ? t[i] : -t[i];
    double next = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - next) + term;
    else
      comp += (term - next) + sum;
    sum = next;
  }
  return sum + comp;
}

std::vector<double> rearrange_nonincreasing(const std::vector<double>& x) {
  std::vector<double> a(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a[i] = std::abs(x[i]);
  std::sort(a.begin(), a.end(), std::greater<double>());
  return a;
}

bool weak_l2_membership(const std::vector<double>& x, double r, double tol) {
  auto a = rearrange_nonincreasing(x);
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > r / std::sqrt(double(j + 1)) + tol) return false;
  return true;
}

double weak_l2_radius(const std::vector<double>& x) {
  auto a = rearrange_nonincreasing(x);
  double r = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    r = std::max(r, a[j] * std::sqrt(double(j + 1)));
  return r;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l2norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double l2dist(const std::vector<double>& a, const std::vector<double>& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace chaindisc
