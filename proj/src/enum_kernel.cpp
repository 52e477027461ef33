#include "chaindisc/enum_kernel.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chaindisc/parallel.hpp"

namespace chaindisc::kernel {

namespace {

struct Walk {
  const std::vector<std::vector<double>>& cols;
  std::size_t m;
  std::size_t n_bits;
  bool fixed_plus_last;
};

double sup_abs(const std::vector<double>& sums) {
  double v = 0.0;
  for (double s : sums) v = std::max(v, std::abs(s));
  return v;
}

// initialize per-point sums for the Gray pattern of `code`
void init_sums(const Walk& w, const std::vector<double>& base, std::uint64_t code,
               std::vector<double>& sums) {
  std::uint64_t g = code ^ (code >> 1);
  sums.assign(w.m, 0.0);
  if (!base.empty())
    for (std::size_t t = 0; t < w.m; ++t) sums[t] = base[t];
  for (std::size_t i = 0; i < w.n_bits; ++i) {
    double sign = ((g >> i) & 1ull) ? -1.0 : 1.0;
    const auto& c = w.cols[i];
    for (std::size_t t = 0; t < w.m; ++t) sums[t] += sign * c[t];
  }
  if (w.fixed_plus_last) {
    const auto& c = w.cols.back();
    for (std::size_t t = 0; t < w.m; ++t) sums[t] += c[t];
  }
}

// number of chunks depends only on the problem size, never on threads
std::size_t chunk_count(std::size_t n_bits) {
  if (n_bits <= 14) return 1;
  std::size_t c = std::size_t(1) << (n_bits - 14);
  return c > 256 ? 256 : c;
}

}  // namespace

MinSup min_sup_enum(const std::vector<std::vector<double>>& cols,
                    const std::vector<double>& base, bool fix_last) {
  std::size_t n = cols.size();
  std::size_t m = n ? cols[0].size() : base.size();
  if (fix_last && n == 0)
    throw std::invalid_argument("min_sup_enum: fix_last needs a column");
  if (fix_last && !base.empty())
    throw std::invalid_argument("min_sup_enum: fix_last requires zero base");
  std::size_t n_bits = n - (fix_last ? 1 : 0);
  if (n_bits > 40) throw std::invalid_argument("min_sup_enum: too many columns");

  Walk w{cols, m, n_bits, fix_last};
  std::uint64_t total = std::uint64_t(1) << n_bits;
  std::size_t chunks = chunk_count(n_bits);
  std::vector<MinSup> best(chunks,
                           {std::numeric_limits<double>::infinity(), ~0ull});

  par::parallel_for(std::ptrdiff_t(chunks), [&](std::ptrdiff_t ci) {
    std::uint64_t lo = total / chunks * ci + std::min<std::uint64_t>(ci, total % chunks);
    std::uint64_t len = total / chunks + (std::uint64_t(ci) < total % chunks ? 1 : 0);
    if (len == 0) return;
    std::vector<double> sums;
    init_sums(w, base, lo, sums);
    std::uint64_t g = lo ^ (lo >> 1);
    MinSup loc{sup_abs(sums), g};
    for (std::uint64_t c = lo + 1; c < lo + len; ++c) {
      unsigned b = unsigned(__builtin_ctzll(c));
      g ^= (1ull << b);
      double sign = ((g >> b) & 1ull) ? -2.0 : 2.0;
      const auto& col = w.cols[b];
      for (std::size_t t = 0; t < m; ++t) sums[t] += sign * col[t];
      double v = sup_abs(sums);
      if (v < loc.value || (v == loc.value && g < loc.mask)) loc = {v, g};
    }
    best[ci] = loc;
  });

  MinSup out{std::numeric_limits<double>::infinity(), ~0ull};
  for (const auto& b : best)
    if (b.value < out.value || (b.value == out.value && b.mask < out.mask)) out = b;
  if (!std::isfinite(out.value)) out = {sup_abs(base.empty() ? std::vector<double>(m, 0.0) : base), 0};
  return out;
}

double mean_sup_enum(const std::vector<std::vector<double>>& cols) {
  std::size_t n = cols.size();
  if (n == 0) return 0.0;
  std::size_t m = cols[0].size();
  std::size_t n_bits = n - 1;  // last sign pinned; |.| is flip-symmetric
  if (n_bits > 40) throw std::invalid_argument("mean_sup_enum: too many columns");

  Walk w{cols, m, n_bits, true};
  std::uint64_t total = std::uint64_t(1) << n_bits;
  std::size_t chunks = chunk_count(n_bits);
  std::vector<double> part(chunks, 0.0);

  par::parallel_for(std::ptrdiff_t(chunks), [&](std::ptrdiff_t ci) {
    std::uint64_t lo = total / chunks * ci + std::min<std::uint64_t>(ci, total % chunks);
    std::uint64_t len = total / chunks + (std::uint64_t(ci) < total % chunks ? 1 : 0);
    if (len == 0) return;
    std::vector<double> sums;
    init_sums(w, {}, lo, sums);
    std::uint64_t g = lo ^ (lo >> 1);
    // Neumaier within the chunk
    double acc = sup_abs(sums), comp = 0.0;
    for (std::uint64_t c = lo + 1; c < lo + len; ++c) {
      unsigned b = unsigned(__builtin_ctzll(c));
      g ^= (1ull << b);
      double sign = ((g >> b) & 1ull) ? -2.0 : 2.0;
      const auto& col = w.cols[b];
      for (std::size_t t = 0; t < m; ++t) sums[t] += sign * col[t];
      double term = sup_abs(sums);
      double next = acc + term;
      if (std::abs(acc) >= std::abs(term))
        comp += (acc - next) + term;
      else
        comp += (term - next) + acc;
      acc = next;
    }
    part[ci] = acc + comp;
  });

  double total_sum = 0.0, comp = 0.0;
  for (double p : part) {
    double next = total_sum + p;
    if (std::abs(total_sum) >= std::abs(p))
      comp += (total_sum - next) + p;
    else
      comp += (p - next) + total_sum;
    total_sum = next;
  }
  return (total_sum + comp) / double(total);
}

}  // namespace chaindisc::kernel
