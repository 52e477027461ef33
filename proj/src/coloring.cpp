#include "chaindisc/coloring.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <unordered_map>

#include "chaindisc/enum_kernel.hpp"
#include "chaindisc/parallel.hpp"
#include "chaindisc/rng.hpp"

namespace chaindisc {

namespace {

std::vector<std::vector<double>> columns(const PointSet& T,
                                         const std::vector<std::size_t>& which) {
  std::vector<std::vector<double>> cols(which.size(),
                                        std::vector<double>(T.size()));
  for (std::size_t c = 0; c < which.size(); ++c)
    for (std::size_t t = 0; t < T.size(); ++t) cols[c][t] = T[t][which[c]];
  return cols;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

double sup_signed(const PointSet& T, const Coloring& eps) {
  double v = 0.0;
  for (std::size_t t = 0; t < T.size(); ++t)
    v = std::max(v, std::abs(signed_sum(T[t], eps)));
  return v;
}

// ---- local search ---------------------------------------------------------

// one random full coloring improved by steepest single-flip descent,
// plus a pair-flip polish when the dimension is small enough to afford it
std::pair<std::vector<int>, double> full_descent(const PointSet& T, Rng rng) {
  std::size_t n = T.dim(), m = T.size();
  std::vector<int> eps(n);
  for (std::size_t i = 0; i < n; ++i) eps[i] = rng.rademacher();
  std::vector<double> sums(m, 0.0);
  for (std::size_t t = 0; t < m; ++t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += eps[i] * T[t][i];
    sums[t] = s;
  }
  auto sup = [&]() {
    double v = 0.0;
    for (double s : sums) v = std::max(v, std::abs(s));
    return v;
  };
  double cur = sup();
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t step = 0; step < 8 * n; ++step) {
      std::size_t best_i = n;
      double best_v = cur;
      for (std::size_t i = 0; i < n; ++i) {
        double v = 0.0;
        for (std::size_t t = 0; t < m; ++t)
          v = std::max(v, std::abs(sums[t] - 2.0 * eps[i] * T[t][i]));
        if (v < best_v) {
          best_v = v;
          best_i = i;
        }
      }
      if (best_i == n) break;
      for (std::size_t t = 0; t < m; ++t)
        sums[t] -= 2.0 * eps[best_i] * T[t][best_i];
      eps[best_i] = -eps[best_i];
      cur = best_v;
      moved = true;
    }
    if (n > 32) break;
    // pair flips escape the single-flip plateaus that small instances hit
    bool pair_moved = false;
    for (std::size_t i = 0; i + 1 < n && !pair_moved; ++i)
      for (std::size_t j = i + 1; j < n && !pair_moved; ++j) {
        double v = 0.0;
        for (std::size_t t = 0; t < m; ++t)
          v = std::max(v, std::abs(sums[t] - 2.0 * eps[i] * T[t][i] -
                                   2.0 * eps[j] * T[t][j]));
        if (v < cur - 1e-15) {
          for (std::size_t t = 0; t < m; ++t)
            sums[t] -= 2.0 * eps[i] * T[t][i] + 2.0 * eps[j] * T[t][j];
          eps[i] = -eps[i];
          eps[j] = -eps[j];
          cur = v;
          pair_moved = true;
        }
      }
    moved = pair_moved;
  }
  return {std::move(eps), cur};
}

// best partial coloring with exactly `zeros` zero coordinates: greedy signing
// in a random order, then flip descent on the signed coordinates; `base` holds
// per-row offsets already accumulated by earlier rounds so the search cancels
// them instead of treating each round in isolation
std::pair<Coloring, double> local_partial(const PointSet& T, std::size_t zeros,
                                          std::size_t restarts,
                                          std::uint64_t seed,
                                          const std::vector<double>* base =
                                              nullptr) {
  std::size_t n = T.dim(), m = T.size();
  assert(zeros <= n);
  assert(!base || base->size() == m);
  std::vector<double> vals(restarts, 0.0);

  auto run = [&](std::size_t r, std::vector<int>* out) {
    Rng rng = Rng::child(seed, r);
    std::vector<std::size_t> perm = all_indices(n);
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<int> eta(n, 0);
    std::vector<double> sums = base ? *base : std::vector<double>(m, 0.0);
    std::size_t signed_cnt = n - zeros;
    for (std::size_t j = 0; j < signed_cnt; ++j) {
      std::size_t i = perm[j];
      double plus = 0.0, minus = 0.0;
      for (std::size_t t = 0; t < m; ++t) {
        plus = std::max(plus, std::abs(sums[t] + T[t][i]));
        minus = std::max(minus, std::abs(sums[t] - T[t][i]));
      }
      int s = plus <= minus ? 1 : -1;
      eta[i] = s;
      for (std::size_t t = 0; t < m; ++t) sums[t] += s * T[t][i];
    }
    double cur = 0.0;
    for (double s : sums) cur = std::max(cur, std::abs(s));
    for (std::size_t step = 0; step < 8 * n; ++step) {
      std::size_t best_i = n;
      double best_v = cur;
      for (std::size_t j = 0; j < signed_cnt; ++j) {
        std::size_t i = perm[j];
        double v = 0.0;
        for (std::size_t t = 0; t < m; ++t)
          v = std::max(v, std::abs(sums[t] - 2.0 * eta[i] * T[t][i]));
        if (v < best_v) {
          best_v = v;
          best_i = i;
        }
      }
      if (best_i == n) break;
      for (std::size_t t = 0; t < m; ++t)
        sums[t] -= 2.0 * eta[best_i] * T[t][best_i];
      eta[best_i] = -eta[best_i];
      cur = best_v;
    }
    vals[r] = cur;
    if (out) *out = std::move(eta);
  };

  par::parallel_for(std::ptrdiff_t(restarts),
                    [&](std::ptrdiff_t r) { run(std::size_t(r), nullptr); });
  std::size_t best_r = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (vals[r] < vals[best_r]) best_r = r;
  std::vector<int> eta;
  run(best_r, &eta);
  return {Coloring(std::move(eta)), vals[best_r]};
}

// ---- chain fingerprints ----------------------------------------------------

struct ChainData {
  // increments per level s = 1..S, deduplicated in first-appearance order
  std::vector<std::vector<std::vector<double>>> inc;
  std::vector<std::vector<double>> scale;  // |u| * Q_s per increment
  std::size_t S = 0;
  std::size_t fp_len = 0;
  double chain_bound = 0.0;
};

ChainData build_chain(const PointSet& T, const Schedule& sched,
                      const AdmissibleSequence& seq) {
  if (seq.source_size != T.size())
    throw config_error("partial_color: sequence built for a different set");
  std::size_t depth = seq.depth();
  std::size_t S = std::max<std::size_t>(depth, 1);
  if (S > sched.depth())
    throw config_error("partial_color: schedule shallower than the sequence");

  ChainData cd;
  cd.S = S;
  cd.inc.assign(S + 1, {});
  cd.scale.assign(S + 1, {});

  std::size_t n = T.dim(), m = T.size();
  std::vector<double> zero(n, 0.0);
  auto image = [&](std::size_t s, std::size_t i) -> const std::vector<double>& {
    if (s == 0) return zero;  // chain anchored at the origin
    return T[seq.proj[std::min(s, depth)][i]];
  };

  for (std::size_t s = 1; s <= S; ++s) {
    double q = sched.q(s);
    std::map<std::vector<double>, bool> seen;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& hi = image(s, i);
      const auto& lo = image(s - 1, i);
      std::vector<double> u(n);
      double norm2 = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        u[c] = hi[c] - lo[c];
        norm2 += u[c] * u[c];
      }
      if (norm2 == 0.0) continue;
      if (seen.emplace(u, true).second) {
        cd.inc[s].push_back(std::move(u));
        cd.scale[s].push_back(std::sqrt(norm2) * q);
        ++cd.fp_len;
      }
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t s = 1; s <= S; ++s) {
      const auto& hi = image(s, i);
      const auto& lo = image(s - 1, i);
      double norm2 = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        double d = hi[c] - lo[c];
        norm2 += d * d;
      }
      acc += sched.q(s) * std::sqrt(norm2);
    }
    cd.chain_bound = std::max(cd.chain_bound, acc);
  }
  return cd;
}

constexpr long long kWClamp = 1ll << 62;

void fingerprint(const ChainData& cd, const std::vector<int>& eps,
                 std::vector<long long>& out) {
  out.clear();
  for (std::size_t s = 1; s <= cd.S; ++s)
    for (std::size_t j = 0; j < cd.inc[s].size(); ++j) {
      const auto& u = cd.inc[s][j];
      double z = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) z += eps[i] * u[i];
      double v = z / cd.scale[s][j];
      long long w;
      if (v >= double(kWClamp))
        w = kWClamp;
      else if (v <= -double(kWClamp))
        w = -kWClamp;
      else
        w = static_cast<long long>(std::trunc(v));
      out.push_back(w);
    }
}

std::uint64_t fp_hash(const std::vector<long long>& fp) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (long long w : fp) h = splitmix64(h ^ std::uint64_t(w));
  return h;
}

void sample_signs(std::uint64_t seed, std::uint64_t j, std::size_t n,
                  std::vector<int>& eps) {
  Rng rng = Rng::child(seed, j);
  eps.resize(n);
  for (std::size_t i = 0; i < n; ++i) eps[i] = rng.rademacher();
}

std::size_t hamming(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t h = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++h;
  return h;
}

struct PairOutcome {
  bool ok = false;
  std::vector<int> eta;
};

PairOutcome try_pair(const ChainData& cd, const std::vector<int>& ea,
                     const std::vector<int>& eb, std::size_t zero_lo,
                     std::size_t zero_hi, double bound) {
  PairOutcome out;
  std::size_t n = ea.size();
  std::size_t agree = n - hamming(ea, eb);
  if (agree < zero_lo || agree > zero_hi) return out;
  std::vector<long long> fa, fb;
  fingerprint(cd, ea, fa);
  fingerprint(cd, eb, fb);
  if (fa != fb) return out;  // hash collision, not a real match
  out.eta.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eta[i] = (ea[i] - eb[i]) / 2;
  // the certificate must hold; guard against quantizer clamping
  double worst = 0.0;
  for (std::size_t s = 1; s <= cd.S; ++s)
    for (std::size_t j = 0; j < cd.inc[s].size(); ++j) {
      const auto& u = cd.inc[s][j];
      double z = 0.0;
      for (std::size_t i = 0; i < n; ++i) z += out.eta[i] * u[i];
      worst = std::max(worst, std::abs(z) - cd.scale[s][j]);
    }
  (void)bound;
  if (worst > 1e-9) return out;
  out.ok = true;
  return out;
}

}  // namespace

// ---- exact and heuristic discrepancy --------------------------------------

DiscResult disc_exact(const PointSet& T) {
  std::size_t n = T.dim();
  if (n > 24) throw size_error("disc_exact: dimension capped at 24");
  DiscResult res;
  res.exact = true;
  if (n == 0 || T.empty()) {
    res.witness = Coloring::ones(n);
    res.value = 0.0;
    res.evaluated = 1;
    return res;
  }
  auto cols = columns(T, all_indices(n));
  auto out = kernel::min_sup_enum(cols, {}, /*fix_last=*/true);
  std::vector<int> eps(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    eps[i] = ((out.mask >> i) & 1ull) ? -1 : 1;
  eps[n - 1] = 1;
  res.value = out.value;
  res.witness = Coloring(std::move(eps));
  res.evaluated = std::uint64_t(1) << (n - 1);
  return res;
}

DiscResult disc_heuristic(const PointSet& T, std::uint64_t budget,
                          std::uint64_t seed) {
  if (budget == 0) throw config_error("disc_heuristic: budget must be >= 1");
  std::size_t n = T.dim();
  DiscResult res;
  res.exact = false;
  if (n == 0 || T.empty()) {
    res.witness = Coloring::ones(n);
    res.evaluated = 1;
    return res;
  }

  std::vector<double> vals(budget, 0.0);
  par::parallel_for(std::ptrdiff_t(budget), [&](std::ptrdiff_t r) {
    vals[r] = full_descent(T, Rng::child(seed, std::uint64_t(r))).second;
  });
  std::size_t best_r = 0;
  for (std::size_t r = 1; r < budget; ++r)
    if (vals[r] < vals[best_r]) best_r = r;
  auto [eps, value] = full_descent(T, Rng::child(seed, best_r));
  res.value = value;
  res.witness = Coloring(std::move(eps));
  res.evaluated = budget;
  return res;
}

// ---- pigeonhole partial coloring -------------------------------------------

PartialColorResult partial_color(const PointSet& T, const Schedule& sched,
                                 const AdmissibleSequence& seq,
                                 std::uint64_t budget, std::uint64_t seed) {
  std::size_t n = T.dim();
  if (n == 0) throw config_error("partial_color: dimension must be >= 1");
  ChainData cd = build_chain(T, sched, seq);

  PartialColorResult res;
  res.zero_lo = (n + 3) / 4;
  res.zero_hi = (3 * n) / 4;
  res.eta = Coloring(std::vector<int>(n, 0));
  res.chain_bound = cd.chain_bound;
  if (res.zero_lo > res.zero_hi) return res;  // n too small for the window

  auto finish = [&](const std::vector<int>& eta) {
    res.eta = Coloring(eta);
    Coloring& e = res.eta;
    double sup = 0.0;
    for (std::size_t t = 0; t < T.size(); ++t)
      sup = std::max(sup, std::abs(signed_sum(T[t], e)));
    res.measured_sup = sup;
    res.success = true;
  };

  // sampling phase
  if (budget > 0) {
    constexpr std::size_t kBatch = 2048;
    constexpr std::size_t kBucketCap = 128;
    struct Bucket {
      std::vector<std::uint32_t> ids;
      std::uint64_t total = 0;
    };
    std::unordered_map<std::uint64_t, Bucket> buckets;
    std::vector<std::uint64_t> hashes(kBatch);
    std::vector<int> ea, eb;

    for (std::uint64_t start = 0; start < budget && !res.success;
         start += kBatch) {
      std::uint64_t len = std::min<std::uint64_t>(kBatch, budget - start);
      par::parallel_for(std::ptrdiff_t(len), [&](std::ptrdiff_t off) {
        std::vector<int> eps;
        std::vector<long long> fp;
        sample_signs(seed, start + off, n, eps);
        fingerprint(cd, eps, fp);
        hashes[off] = fp_hash(fp);
      });
      for (std::uint64_t off = 0; off < len && !res.success; ++off) {
        std::uint64_t j = start + off;
        Bucket& b = buckets[hashes[off]];
        ++b.total;
        sample_signs(seed, j, n, eb);
        for (std::uint32_t a : b.ids) {
          sample_signs(seed, a, n, ea);
          PairOutcome po =
              try_pair(cd, ea, eb, res.zero_lo, res.zero_hi, cd.chain_bound);
          if (po.ok) {
            finish(po.eta);
            res.samples_used = j + 1;
            break;
          }
        }
        if (!res.success && b.ids.size() < kBucketCap)
          b.ids.push_back(std::uint32_t(j));
      }
    }
    res.buckets = buckets.size();
    for (const auto& [h, b] : buckets)
      res.largest_bucket = std::max<std::size_t>(res.largest_bucket, b.total);
    if (res.success) return res;
    res.samples_used = budget;
  }

  // exhaustive phase
  if (n <= 20) {
    res.exhaustive_used = true;
    std::uint64_t total = std::uint64_t(1) << n;
    std::vector<std::uint64_t> hashes(total);
    constexpr std::uint64_t kChunk = 1ull << 14;
    std::uint64_t chunks = (total + kChunk - 1) / kChunk;
    par::parallel_for(std::ptrdiff_t(chunks), [&](std::ptrdiff_t ci) {
      std::vector<int> eps(n);
      std::vector<long long> fp;
      std::uint64_t lo = std::uint64_t(ci) * kChunk;
      std::uint64_t hi = std::min(total, lo + kChunk);
      for (std::uint64_t code = lo; code < hi; ++code) {
        for (std::size_t i = 0; i < n; ++i)
          eps[i] = ((code >> i) & 1ull) ? -1 : 1;
        fingerprint(cd, eps, fp);
        hashes[code] = fp_hash(fp);
      }
    });
    std::vector<std::uint32_t> order(total);
    for (std::uint64_t i = 0; i < total; ++i) order[i] = std::uint32_t(i);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                return hashes[a] != hashes[b] ? hashes[a] < hashes[b] : a < b;
              });

    std::size_t runs = 0, largest_run = 0;
    std::vector<int> ea(n), eb(n);
    auto decode = [&](std::uint32_t code, std::vector<int>& e) {
      for (std::size_t i = 0; i < n; ++i)
        e[i] = ((code >> i) & 1u) ? -1 : 1;
    };
    std::uint64_t lo = 0;
    while (lo < total && !res.success) {
      std::uint64_t hi = lo + 1;
      while (hi < total && hashes[order[hi]] == hashes[order[lo]]) ++hi;
      ++runs;
      largest_run = std::max<std::size_t>(largest_run, hi - lo);
      for (std::uint64_t b = lo + 1; b < hi && !res.success; ++b) {
        decode(order[b], eb);
        for (std::uint64_t a = lo; a < b && !res.success; ++a) {
          // disagreement count straight from the code bits
          unsigned diff = unsigned(__builtin_popcount(order[a] ^ order[b]));
          std::size_t agree = n - diff;
          if (agree < res.zero_lo || agree > res.zero_hi) continue;
          decode(order[a], ea);
          PairOutcome po =
              try_pair(cd, ea, eb, res.zero_lo, res.zero_hi, cd.chain_bound);
          if (po.ok) finish(po.eta);
        }
      }
      lo = hi;
    }
    res.buckets = runs;
    res.largest_bucket = largest_run;
  }
  return res;
}

double fingerprint_entropy_bits(const PointSet& T, const Schedule& sched,
                                const AdmissibleSequence& seq) {
  ChainData cd = build_chain(T, sched, seq);
  double bits = 0.0;
  for (std::size_t s = 1; s <= cd.S; ++s) {
    double q = sched.q(s);
    double sigma = 1.0 / q;  // z / (|u| Q_s) has scale 1/Q_s
    double b = std::log2(std::sqrt(2.0 * M_PI * std::exp(1.0)) * sigma) - 1.1;
    if (b < 0.0) b = 0.0;
    bits += b * double(cd.inc[s].size());
  }
  return bits;
}

BudgetCheck entropy_budget_check(const Schedule& sched, std::size_t n) {
  if (n == 0) throw config_error("entropy_budget_check: n must be >= 1");
  double k1 = 1.0, k2 = 1.0;
  if (auto it = sched.constants.find("k1"); it != sched.constants.end())
    k1 = it->second;
  if (auto it = sched.constants.find("k2"); it != sched.constants.end())
    k2 = it->second;

  BudgetCheck out;
  out.rhs = double(n) / 100.0;
  double lhs = 0.0;
  for (std::size_t s = 1; s <= sched.depth(); ++s) {
    double log_t = 2.0 * (std::log(k2) + sched.log_q[s]);
    double term;
    if (log_t <= 0.0)
      term = std::exp(sched.log_lambda[s] + std::log(1.0 - log_t));
    else
      term = std::exp(sched.log_lambda[s] + log_t + 1.0 - std::exp(log_t));
    out.terms.push_back(term);
    lhs += term;
  }
  out.lhs = k1 * lhs;
  out.ratio = out.lhs / out.rhs;
  out.pass = out.lhs <= out.rhs;
  return out;
}

// ---- halving drivers -------------------------------------------------------

namespace {

HalvingResult halving_driver(const PointSet& T, std::uint64_t budget,
                             std::uint64_t seed,
                             const std::map<std::string, double>& consts,
                             bool set_system) {
  std::size_t n = T.dim(), m = T.size();
  HalvingResult res;
  res.coloring = Coloring(std::vector<int>(n, 0));
  if (n == 0) {
    res.coloring = Coloring::ones(0);
    return res;
  }

  std::vector<int> signs(n, 0);
  std::vector<std::size_t> alive = all_indices(n);
  std::size_t round = 0;

  while (alive.size() > 10) {
    std::size_t nj = alive.size();
    PointSet P = project(T, IndexSet(alive));
    PointSet Pd = P.deduplicated();
    if (!Pd.contains_origin()) Pd.push_back(std::vector<double>(nj, 0.0));

    Schedule sched = schedule_entropy(nj, consts);
    std::vector<double> caps(sched.depth() + 1, 1.0);
    for (std::size_t s = 1; s <= sched.depth(); ++s)
      caps[s] = std::exp(sched.log_lambda[s]);
    AdmissibleSequence seq = build_capped_levels(Pd, Metric::euclidean(), caps);

    RoundRecord rec;
    rec.round = round;
    rec.n_coords = nj;

    bool done = false;
    std::vector<int> eta;
    double hbits = fingerprint_entropy_bits(Pd, sched, seq);
    double feasible_bits = 2.0 * std::log2(double(budget) + 1.0) + 8.0;
    if ((budget > 0 && hbits <= feasible_bits) || nj <= 20) {
      std::uint64_t b = (budget > 0 && hbits <= feasible_bits) ? budget : 0;
      PartialColorResult pr =
          partial_color(Pd, sched, seq, b, splitmix64(seed) + round);
      rec.samples = pr.samples_used;
      if (pr.success) {
        eta = pr.eta.signs();
        rec.method = "pigeonhole";
        rec.bound = pr.chain_bound;
        rec.certified = true;
        done = true;
      }
    }
    if (!done) {
      // the dedup'd projection would collapse rows that differ only in their
      // already-colored coordinates, so hand the raw projection plus per-row
      // offsets to the local search and let it cancel earlier rounds
      std::vector<double> base(m, 0.0);
      for (std::size_t t = 0; t < m; ++t) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          if (signs[i] != 0) s += signs[i] * T[t][i];
        base[t] = s;
      }
      auto [lc, lsup] = local_partial(
          P, nj / 2, 16, splitmix64(seed ^ 0x85ebca6bull) + round, &base);
      (void)lsup;
      eta = lc.signs();
      rec.method = "local";
      // record this round's own contribution so the per-round bounds still
      // telescope to an upper bound on the stitched value
      double contrib = 0.0;
      for (std::size_t t = 0; t < m; ++t) {
        double s = 0.0;
        for (std::size_t pos = 0; pos < nj; ++pos)
          if (eta[pos] != 0) s += eta[pos] * P[t][pos];
        contrib = std::max(contrib, std::abs(s));
      }
      rec.bound = contrib;
      rec.certified = false;
      res.any_fallback = true;
    }

    std::vector<std::size_t> next;
    for (std::size_t pos = 0; pos < nj; ++pos) {
      if (eta[pos] == 0)
        next.push_back(alive[pos]);
      else
        signs[alive[pos]] = eta[pos];
    }
    rec.colored = nj - next.size();
    assert(rec.colored > 0);
    if (set_system)
      res.round_integrals.push_back(
          entropy_integral_u(Pd, Metric::euclidean()).value);
    res.rounds.push_back(rec);
    alive = std::move(next);
    ++round;
  }

  if (!alive.empty()) {
    auto cols = columns(T, alive);
    std::vector<double> base(m, 0.0);
    for (std::size_t t = 0; t < m; ++t) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (signs[i] != 0) s += signs[i] * T[t][i];
      base[t] = s;
    }
    auto mk = kernel::min_sup_enum(cols, base, /*fix_last=*/false);
    RoundRecord rec;
    rec.round = round;
    rec.n_coords = alive.size();
    rec.colored = alive.size();
    rec.method = "tail";
    rec.certified = true;
    double tail_sup = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      double s = 0.0;
      for (std::size_t pos = 0; pos < alive.size(); ++pos) {
        int sg = ((mk.mask >> pos) & 1ull) ? -1 : 1;
        s += sg * T[t][alive[pos]];
      }
      tail_sup = std::max(tail_sup, std::abs(s));
    }
    rec.bound = tail_sup;
    res.rounds.push_back(rec);
    for (std::size_t pos = 0; pos < alive.size(); ++pos)
      signs[alive[pos]] = ((mk.mask >> pos) & 1ull) ? -1 : 1;
  }

  res.coloring = Coloring(std::move(signs));
  res.value = sup_signed(T, res.coloring);
  res.bound_sum = 0.0;
  for (const auto& r : res.rounds) res.bound_sum += r.bound;
  return res;
}

}  // namespace

HalvingResult spencer_color(const PointSet& T, std::uint64_t budget,
                            std::uint64_t seed,
                            const std::map<std::string, double>& consts) {
  HalvingResult res = halving_driver(T, budget, seed, consts, false);
  std::size_t n = T.dim(), m = T.size();
  for (std::size_t t = 0; t < m && !res.input_warning; ++t)
    for (double v : T[t])
      if (std::abs(v) > 1.0 + 1e-9) {
        res.input_warning = true;
        break;
      }
  if (n > 0 && m > 0) {
    double arg = std::log(std::exp(1.0) * double(m) / double(n));
    res.reference_scale = arg > 0.0 ? std::sqrt(double(n) * arg) : 0.0;
    if (res.reference_scale > 0.0)
      res.implied_constant = res.value / res.reference_scale;
  }
  return res;
}

HalvingResult matousek_color(const PointSet& T, std::size_t vc_d,
                             std::uint64_t budget, std::uint64_t seed,
                             const std::map<std::string, double>& consts) {
  if (vc_d == 0) throw config_error("matousek_color: dimension d must be >= 1");
  for (std::size_t t = 0; t < T.size(); ++t)
    for (double v : T[t])
      if (v != 0.0 && v != 1.0)
        throw config_error("matousek_color: entries must be 0/1");
  HalvingResult res = halving_driver(T, budget, seed, consts, true);
  std::size_t n = T.dim();
  if (n > 0) {
    res.reference_scale =
        std::pow(double(n), 0.5 - 0.5 / double(vc_d));
    res.implied_constant = res.value / res.reference_scale;
  }
  return res;
}

// ---- hereditary discrepancy ------------------------------------------------

HdiscResult hdisc_exact(const PointSet& T) {
  std::size_t n = T.dim();
  if (n > 16) throw size_error("hdisc_exact: dimension capped at 16");
  HdiscResult res;
  if (n == 0 || T.empty()) {
    res.witness = Coloring::ones(0);
    return res;
  }

  std::uint32_t total = (std::uint32_t(1) << n) - 1;  // nonempty masks
  constexpr std::uint32_t kChunk = 1024;
  std::uint32_t chunks = (total + kChunk - 1) / kChunk;
  struct Best {
    double value = -1.0;
    std::uint32_t mask = 0;
    std::uint64_t gray = 0;
  };
  std::vector<Best> best(chunks);

  par::parallel_for(std::ptrdiff_t(chunks), [&](std::ptrdiff_t ci) {
    Best loc;
    std::uint32_t lo = std::uint32_t(ci) * kChunk + 1;
    std::uint32_t hi = std::min<std::uint32_t>(total, lo + kChunk - 1);
    std::vector<std::size_t> idx;
    for (std::uint32_t mask = lo; mask <= hi; ++mask) {
      idx.clear();
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) idx.push_back(i);
      auto cols = columns(T, idx);
      auto mk = kernel::min_sup_enum(cols, {}, /*fix_last=*/true);
      if (mk.value > loc.value) loc = {mk.value, mask, mk.mask};
    }
    best[ci] = loc;
  });

  Best glob;
  for (const auto& b : best)
    if (b.value > glob.value || (b.value == glob.value && b.mask < glob.mask && b.value >= 0.0))
      glob = b;

  res.value = glob.value < 0.0 ? 0.0 : glob.value;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if ((glob.mask >> i) & 1u) idx.push_back(i);
  res.witness_index_set = IndexSet(idx);
  std::vector<int> eps(idx.size(), 1);
  for (std::size_t pos = 0; pos + 1 < idx.size(); ++pos)
    eps[pos] = ((glob.gray >> pos) & 1ull) ? -1 : 1;
  res.witness = Coloring(std::move(eps));
  res.subsets = total;
  return res;
}

}  // namespace chaindisc
