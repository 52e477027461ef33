#include "chaindisc/entropy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

namespace chaindisc {

namespace {
constexpr double kMergeTol = 1e-12;
constexpr std::size_t kMaxLen = 24;
}  // namespace

double phi(double t) {
  if (!(t > 0.0)) throw config_error("phi: argument must be positive");
  if (t <= 1.0) return 1.0 - std::log(t);  // log(e/t)
  return t * std::exp(1.0 - t);
}

SignedSumLaw signed_sum_law(const std::vector<double>& a) {
  if (a.size() > kMaxLen)
    throw size_error("signed_sum_law: exact law capped at 24 coordinates");
  for (double v : a)
    if (!std::isfinite(v)) throw config_error("signed_sum_law: non-finite entry");

  std::vector<std::pair<double, std::uint64_t>> law{{0.0, 1}};
  for (double ai : a) {
    // merge the two shifted copies of the current support
    std::vector<std::pair<double, std::uint64_t>> next;
    next.reserve(law.size() * 2);
    std::size_t lo = 0, hi = 0;  // cursors into law - ai and law + ai
    while (lo < law.size() || hi < law.size()) {
      double vlo = lo < law.size() ? law[lo].first - std::abs(ai) : 0.0;
      double vhi = hi < law.size() ? law[hi].first + std::abs(ai) : 0.0;
      double v;
      std::uint64_t c;
      if (hi >= law.size() || (lo < law.size() && vlo <= vhi)) {
        v = vlo;
        c = law[lo++].second;
      } else {
        v = vhi;
        c = law[hi++].second;
      }
      if (!next.empty() && v - next.back().first <= kMergeTol)
        next.back().second += c;
      else
        next.emplace_back(v, c);
    }
    law = std::move(next);
  }

  SignedSumLaw out;
  out.n = a.size();
  out.values.reserve(law.size());
  out.counts.reserve(law.size());
  for (auto& [v, c] : law) {
    out.values.push_back(v);
    out.counts.push_back(c);
  }
  return out;
}

QuantizedLaw quantized_law(const SignedSumLaw& law) {
  std::map<long long, std::uint64_t> acc;
  for (std::size_t i = 0; i < law.values.size(); ++i) {
    double z = law.values[i];
    long long w = static_cast<long long>(std::floor(std::abs(z)));
    if (z < 0) w = -w;
    acc[w] += law.counts[i];
  }
  QuantizedLaw out;
  out.n = law.n;
  for (auto& [w, c] : acc) {
    out.values.push_back(w);
    out.counts.push_back(c);
  }
  return out;
}

double entropy(const QuantizedLaw& law, LogBase base) {
  double total = std::ldexp(1.0, int(law.n));
  double h = 0.0;
  for (std::uint64_t c : law.counts) {
    if (c == 0) continue;
    double p = double(c) / total;
    h -= p * std::log(p);
  }
  if (h < 0.0) h = 0.0;  // guard tiny negative round-off
  return base == LogBase::nat ? h : h / std::log(2.0);
}

double w_entropy(const std::vector<double>& a, LogBase base) {
  return entropy(quantized_law(signed_sum_law(a)), base);
}

EntropicReport verify_entropic_estimate(const PointSet& grid, LogBase base) {
  EntropicReport rep;
  rep.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& a = grid[i];
    EntropicRow row;
    row.index = i;
    row.H = w_entropy(a, base);
    double norm2 = dot(a, a);
    if (norm2 == 0.0) {
      row.degenerate = true;
      rep.any_degenerate = true;
    } else {
      row.phi_bound = phi(1.0 / (2.0 * norm2));
      if (base == LogBase::two) row.phi_bound /= std::log(2.0);
      row.ratio = row.H / row.phi_bound;  // phi > 0 always
      if (row.ratio > rep.max_ratio) {
        rep.max_ratio = row.ratio;
        rep.argmax = i;
      }
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace chaindisc
