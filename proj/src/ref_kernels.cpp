#include "chaindisc/ref_kernels.hpp"

#include <cassert>
#include <cmath>

#include "chaindisc/rng.hpp"

namespace chaindisc::ref {

namespace {

double sup_for(const std::vector<std::vector<double>>& cols,
               const std::vector<double>& base, std::uint64_t mask,
               std::size_t m) {
  double worst = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    double s = base.empty() ? 0.0 : base[t];
    for (std::size_t i = 0; i < cols.size(); ++i)
      s += ((mask >> i) & 1) ? -cols[i][t] : cols[i][t];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace

MinSup min_sup_naive(const std::vector<std::vector<double>>& cols,
                     const std::vector<double>& base, bool fix_last) {
  std::size_t n = cols.size();
  assert(n >= 1 && n <= 24);
  std::size_t m = cols[0].size();
  std::uint64_t total = std::uint64_t(1) << (fix_last ? n - 1 : n);
  MinSup best;
  best.value = sup_for(cols, base, 0, m);
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    double v = sup_for(cols, base, mask, m);
    if (v < best.value) {
      best.value = v;
      best.mask = mask;
    }
  }
  return best;
}

double mean_sup_naive(const std::vector<std::vector<double>>& cols) {
  std::size_t n = cols.size();
  assert(n >= 1 && n <= 24);
  std::size_t m = cols[0].size();
  std::uint64_t total = std::uint64_t(1) << n;
  double acc = 0.0;
  for (std::uint64_t mask = 0; mask < total; ++mask)
    acc += sup_for(cols, {}, mask, m);
  return acc / double(total);
}

double mc_sign_sup_naive(const std::vector<std::vector<double>>& rows,
                         std::uint64_t trials, std::uint64_t seed) {
  if (rows.empty() || trials == 0) return 0.0;
  std::size_t k = rows[0].size();
  double acc = 0.0;
  for (std::uint64_t tr = 0; tr < trials; ++tr) {
    chaindisc::Rng rng = chaindisc::Rng::child(seed, tr);
    std::vector<double> eps(k);
    for (auto& v : eps) v = double(rng.rademacher());
    double sup = 0.0;
    for (const auto& row : rows) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += eps[i] * row[i];
      sup = std::max(sup, std::abs(s));
    }
    acc += sup;
  }
  return acc / double(trials);
}

}  // namespace chaindisc::ref
