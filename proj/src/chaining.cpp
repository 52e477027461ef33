#include "chaindisc/chaining.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace chaindisc {

namespace {

constexpr std::size_t kExactCap = 12;  // exact cover/packing search limit

// indices of the first occurrence of each distinct row
std::vector<std::size_t> distinct_indices(const PointSet& T) {
  std::map<std::vector<double>, bool> seen;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < T.size(); ++i)
    if (seen.emplace(T[i], true).second) idx.push_back(i);
  return idx;
}

std::vector<double> sorted_positive_distances(const PointSet& T, const Metric& d,
                                              const std::vector<std::size_t>& idx) {
  std::vector<double> dist;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      double v = d.dist(T[idx[a]], T[idx[b]]);
      if (v > 0.0) dist.push_back(v);
    }
  std::sort(dist.begin(), dist.end());
  dist.erase(std::unique(dist.begin(), dist.end()), dist.end());
  return dist;
}

struct Traversal {
  std::vector<std::size_t> order;  // point indices, farthest-point order
  std::vector<double> radii;       // radii[j] = d(order[j], {order[0..j-1]}), radii[0] = inf
};

// Farthest-point traversal over `universe`. Seed minimizes the maximum
// distance to the rest (ties: lowest index); later picks maximize the
// distance to the chosen prefix (ties: lowest index).
Traversal farthest_traversal(const PointSet& T, const Metric& d,
                             const std::vector<std::size_t>& universe,
                             std::optional<std::size_t> seed = std::nullopt) {
  Traversal tr;
  std::size_t m = universe.size();
  if (m == 0) return tr;

  std::size_t start = 0;
  if (seed) {
    for (std::size_t p = 0; p < m; ++p)
      if (universe[p] == *seed) start = p;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < m; ++p) {
      double ecc = 0.0;
      for (std::size_t q = 0; q < m; ++q)
        ecc = std::max(ecc, d.dist(T[universe[p]], T[universe[q]]));
      if (ecc < best) {
        best = ecc;
        start = p;
      }
    }
  }

  std::vector<double> dist_to_set(m);
  std::vector<bool> used(m, false);
  used[start] = true;
  tr.order.push_back(universe[start]);
  tr.radii.push_back(std::numeric_limits<double>::infinity());
  for (std::size_t p = 0; p < m; ++p)
    dist_to_set[p] = d.dist(T[universe[p]], T[universe[start]]);

  for (std::size_t step = 1; step < m; ++step) {
    std::size_t pick = m;
    double best = -1.0;
    for (std::size_t p = 0; p < m; ++p) {
      if (used[p]) continue;
      if (dist_to_set[p] > best) {
        best = dist_to_set[p];
        pick = p;
      }
    }
    used[pick] = true;
    tr.order.push_back(universe[pick]);
    tr.radii.push_back(best);
    for (std::size_t p = 0; p < m; ++p) {
      if (used[p]) continue;
      dist_to_set[p] = std::min(dist_to_set[p], d.dist(T[universe[p]], T[universe[pick]]));
    }
  }
  return tr;
}

// exact maximum eps-separated subset size over <= kExactCap distinct points
std::size_t exact_max_separated(const PointSet& T, const Metric& d,
                                const std::vector<std::size_t>& idx, double eps) {
  std::size_t m = idx.size();
  std::vector<std::uint32_t> conflict(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && d.dist(T[idx[a]], T[idx[b]]) < eps)
        conflict[a] |= (1u << b);
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a)
      if ((mask >> a) & 1u)
        if (conflict[a] & mask) ok = false;
    if (ok) best = std::max<std::size_t>(best, __builtin_popcount(mask));
  }
  return best;
}

// exact minimum ball cover (centers in the set) over <= kExactCap points;
// closed == true uses dist <= eps, else dist < eps
std::size_t exact_min_cover(const PointSet& T, const Metric& d,
                            const std::vector<std::size_t>& idx, double eps,
                            bool closed) {
  std::size_t m = idx.size();
  std::vector<std::uint32_t> cov(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double v = d.dist(T[idx[a]], T[idx[b]]);
      if (closed ? v <= eps : v < eps) cov[a] |= (1u << b);
    }
  std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1u);
  std::size_t best = m;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::size_t k = __builtin_popcount(mask);
    if (k >= best) continue;
    std::uint32_t u = 0;
    for (std::size_t a = 0; a < m; ++a)
      if ((mask >> a) & 1u) u |= cov[a];
    if (u == full) best = k;
  }
  return best;
}

std::size_t greedy_cover(const PointSet& T, const Metric& d,
                         const std::vector<std::size_t>& idx, double eps,
                         bool closed) {
  std::size_t m = idx.size();
  std::size_t words = (m + 63) / 64;
  std::vector<std::vector<std::uint64_t>> cov(m,
                                              std::vector<std::uint64_t>(words, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double v = d.dist(T[idx[a]], T[idx[b]]);
      if (closed ? v <= eps : v < eps) cov[a][b / 64] |= (1ull << (b % 64));
    }
  std::vector<std::uint64_t> uncovered(words, ~0ull);
  if (m % 64) uncovered[words - 1] = (1ull << (m % 64)) - 1ull;
  std::size_t covered = 0, picks = 0;
  while (covered < m) {
    std::size_t pick = m, gain_best = 0;
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t gain = 0;
      for (std::size_t w = 0; w < words; ++w)
        gain += __builtin_popcountll(cov[a][w] & uncovered[w]);
      if (gain > gain_best) {
        gain_best = gain;
        pick = a;
      }
    }
    if (pick == m) break;  // nothing coverable (open balls, eps tiny): bail out
    for (std::size_t w = 0; w < words; ++w) uncovered[w] &= ~cov[pick][w];
    covered += gain_best;
    ++picks;
  }
  if (covered < m) picks += (m - covered);  // each stray point covers itself only
  return picks;
}

std::size_t cover_count(const PointSet& T, const Metric& d,
                        const std::vector<std::size_t>& idx, double eps,
                        bool closed, bool& exact) {
  if (idx.size() <= kExactCap) {
    exact = true;
    return exact_min_cover(T, d, idx, eps, closed);
  }
  exact = false;
  return greedy_cover(T, d, idx, eps, closed);
}

double level_cap(std::size_t s) {
  // |T_0| = 1, |T_s| <= 2^{2^s}; saturates quickly
  if (s == 0) return 1.0;
  if (s >= 6) return std::numeric_limits<double>::infinity();
  return std::ldexp(1.0, 1 << s);
}

std::vector<std::size_t> nearest_assignment(const PointSet& T, const Metric& d,
                                            const std::vector<std::size_t>& level) {
  std::vector<std::size_t> proj(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = level.front();
    for (std::size_t j : level) {
      double v = d.dist(T[i], T[j]);
      if (v < best || (v == best && j < arg)) {
        best = v;
        arg = j;
      }
    }
    proj[i] = arg;
  }
  return proj;
}

}  // namespace

CountResult packing_number(const PointSet& T, double eps, const Metric& d) {
  if (!(eps > 0.0)) throw config_error("packing_number: eps must be positive");
  if (T.empty()) return {0, true};
  auto idx = distinct_indices(T);
  if (idx.size() <= kExactCap) return {exact_max_separated(T, d, idx, eps), true};
  Traversal tr = farthest_traversal(T, d, idx);
  std::size_t cnt = 1;
  for (std::size_t j = 1; j < tr.radii.size(); ++j)
    if (tr.radii[j] >= eps) ++cnt;
  return {cnt, false};
}

CountResult covering_number(const PointSet& T, double eps, const Metric& d) {
  if (!(eps > 0.0)) throw config_error("covering_number: eps must be positive");
  if (T.empty()) return {0, true};
  auto idx = distinct_indices(T);
  bool exact = true;
  std::size_t v = cover_count(T, d, idx, eps, /*closed=*/false, exact);
  return {v, exact};
}

EntropyNumberResult entropy_number(const PointSet& T, std::size_t k, const Metric& d) {
  if (T.empty()) return {0.0, true};
  auto idx = distinct_indices(T);
  std::size_t m0 = idx.size();
  if (k >= 63 || m0 <= (std::size_t(1) << k)) return {0.0, true};
  std::uint64_t limit = std::uint64_t(1) << k;

  auto dist = sorted_positive_distances(T, d, idx);
  // N(eps) for eps in (dist[i], dist[i+1]] equals the closed cover at dist[i];
  // e_k is the left endpoint of the first interval where N drops to <= 2^k.
  bool exact_all = m0 <= kExactCap;
  bool ex = true;
  std::size_t lo = 0, hi = dist.size() - 1;
  // N at the largest threshold is 1 <= limit, so hi is always feasible.
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    std::size_t n = cover_count(T, d, idx, dist[mid], /*closed=*/true, ex);
    if (n <= limit)
      hi = mid;
    else
      lo = mid + 1;
  }
  return {dist[lo], exact_all};
}

AdmissibleSequence build_admissible(const PointSet& T, const Metric& d,
                                    BuildStrategy strategy) {
  if (T.empty()) throw config_error("build_admissible: empty point set");
  AdmissibleSequence seq;
  seq.source_size = T.size();

  if (strategy == BuildStrategy::greedy) {
    std::vector<std::size_t> all(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) all[i] = i;
    Traversal tr = farthest_traversal(T, d, all);
    std::size_t s = 0;
    for (;;) {
      double cap = level_cap(s);
      std::size_t take = cap >= double(T.size()) ? T.size()
                                                 : std::size_t(cap);
      seq.levels.emplace_back(tr.order.begin(), tr.order.begin() + take);
      if (take == T.size()) break;
      ++s;
    }
    for (const auto& lvl : seq.levels)
      seq.proj.push_back(nearest_assignment(T, d, lvl));
    return seq;
  }

  // exhaustive: minimize gamma2 at s0 = 0 over all nested admissible chains
  if (T.size() > 6)
    throw size_error("build_admissible: exhaustive strategy capped at 6 points");
  auto idx = distinct_indices(T);
  std::size_t md = idx.size();
  std::size_t smax = 0;
  while (level_cap(smax) < double(md)) ++smax;

  std::vector<std::vector<std::size_t>> best_levels;
  double best_val = std::numeric_limits<double>::infinity();

  // chains[s] are bitmasks over idx; nested, |chain[s]| <= cap(s), top = all
  std::uint32_t full = (1u << md) - 1u;
  std::vector<std::uint32_t> chain(smax + 1, 0);
  auto eval_chain = [&]() {
    std::vector<std::vector<std::size_t>> levels(smax + 1);
    for (std::size_t s = 0; s <= smax; ++s)
      for (std::size_t p = 0; p < md; ++p)
        if ((chain[s] >> p) & 1u) levels[s].push_back(idx[p]);
    double worst = 0.0;
    for (std::size_t i = 0; i < T.size(); ++i) {
      double acc = 0.0;
      for (std::size_t s = 0; s <= smax; ++s) {
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t j : levels[s]) dmin = std::min(dmin, d.dist(T[i], T[j]));
        acc += std::pow(2.0, double(s) / 2.0) * dmin;
      }
      worst = std::max(worst, acc);
    }
    if (worst < best_val) {
      best_val = worst;
      best_levels = std::move(levels);
    }
  };

  // depth-first over levels; level s ranges over supersets of level s-1
  auto rec = [&](auto&& self, std::size_t s) -> void {
    if (s > smax) {
      eval_chain();
      return;
    }
    if (s == smax) {
      chain[s] = full;
      self(self, s + 1);
      return;
    }
    double cap = level_cap(s);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (s > 0 && (mask & chain[s - 1]) != chain[s - 1]) continue;  // nested
      if (double(__builtin_popcount(mask)) > cap) continue;
      chain[s] = mask;
      self(self, s + 1);
    }
  };
  rec(rec, 0);

  seq.levels = std::move(best_levels);
  for (const auto& lvl : seq.levels)
    seq.proj.push_back(nearest_assignment(T, d, lvl));
  return seq;
}

AdmissibleSequence build_capped_levels(const PointSet& T, const Metric& d,
                                       const std::vector<double>& caps) {
  if (T.empty()) throw config_error("build_capped_levels: empty point set");
  std::size_t origin = T.size();
  for (std::size_t i = 0; i < T.size(); ++i) {
    bool zero = true;
    for (double v : T[i])
      if (v != 0.0) {
        zero = false;
        break;
      }
    if (zero) {
      origin = i;
      break;
    }
  }
  if (origin == T.size())
    throw config_error("build_capped_levels: point set must contain the origin");

  std::vector<std::size_t> all(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) all[i] = i;
  Traversal tr = farthest_traversal(T, d, all, origin);

  AdmissibleSequence seq;
  seq.source_size = T.size();
  seq.nearest_projection = false;
  seq.levels.push_back({origin});
  for (std::size_t s = 1; s < caps.size(); ++s) {
    double cap = std::max(1.0, std::floor(caps[s]));
    std::size_t take = cap >= double(T.size()) ? T.size() : std::size_t(cap);
    if (take < seq.levels.back().size()) take = seq.levels.back().size();
    seq.levels.emplace_back(tr.order.begin(), tr.order.begin() + take);
    if (take == T.size()) break;
  }
  if (seq.levels.back().size() != T.size())
    seq.levels.emplace_back(tr.order.begin(), tr.order.end());

  // chained projections: top level is the identity, each level below assigns
  // the nearest point to the image one level up
  std::size_t depth = seq.levels.size() - 1;
  seq.proj.assign(depth + 1, std::vector<std::size_t>(T.size()));
  for (std::size_t i = 0; i < T.size(); ++i) seq.proj[depth][i] = i;
  for (std::size_t s = depth; s-- > 0;) {
    const auto& lvl = seq.levels[s];
    for (std::size_t i = 0; i < T.size(); ++i) {
      const auto& target = T[seq.proj[s + 1][i]];
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = lvl.front();
      for (std::size_t j : lvl) {
        double v = d.dist(target, T[j]);
        if (v < best || (v == best && j < arg)) {
          best = v;
          arg = j;
        }
      }
      seq.proj[s][i] = arg;
    }
  }
  return seq;
}

double gamma2(const PointSet& T, const Metric& d, std::size_t s0,
              const AdmissibleSequence& seq) {
  if (seq.source_size != T.size())
    throw config_error("gamma2: sequence was built for a different point set");
  if (seq.levels.empty()) throw config_error("gamma2: empty sequence");
  double worst = 0.0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    double acc = 0.0;
    for (std::size_t s = s0; s < seq.levels.size(); ++s)
      acc += std::pow(2.0, double(s) / 2.0) * d.dist(T[i], T[seq.proj[s][i]]);
    worst = std::max(worst, acc);
  }
  return worst;
}

IntegralResult dudley_integral(const PointSet& T, const Metric& d) {
  if (T.empty()) return {0.0, true};
  auto idx = distinct_indices(T);
  std::size_t m0 = idx.size();
  if (m0 <= 1) return {0.0, true};
  auto dist = sorted_positive_distances(T, d, idx);

  bool exact_all = m0 <= kExactCap;
  bool ex = true;
  double total = dist.front() * std::sqrt(std::log(double(m0)));
  for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
    std::size_t n = cover_count(T, d, idx, dist[i], /*closed=*/true, ex);
    if (n > 1) total += (dist[i + 1] - dist[i]) * std::sqrt(std::log(double(n)));
  }
  return {total, exact_all};
}

namespace {
double u_profile(double D, double n) {
  if (D >= n) return std::sqrt(std::log(std::exp(1.0) * D / n));
  return std::exp(1.0 - std::sqrt(n / D));
}
}  // namespace

IntegralResult entropy_integral_u(const PointSet& T, const Metric& d) {
  if (T.dim() == 0) throw config_error("entropy_integral_u: ambient dimension 0");
  double n = double(T.dim());
  auto idx = distinct_indices(T);
  std::size_t m0 = idx.size();
  if (m0 <= 1) return {0.0, true};

  if (m0 <= kExactCap) {
    auto dist = sorted_positive_distances(T, d, idx);
    double total = 0.0, prev = 0.0;
    for (double thr : dist) {
      double D = double(exact_max_separated(T, d, idx, thr));
      total += (thr - prev) * u_profile(D, n);
      prev = thr;
    }
    return {total, true};
  }

  // greedy: farthest-point insertion radii give a maximal separated set of
  // every size in one pass
  Traversal tr = farthest_traversal(T, d, idx);
  double diam = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      diam = std::max(diam, d.dist(T[idx[a]], T[idx[b]]));

  // distinct radii descending with the prefix count reached at each
  std::vector<std::pair<double, std::size_t>> steps;  // (radius, count >= eps)
  for (std::size_t j = 1; j < tr.radii.size(); ++j) {
    double r = tr.radii[j];
    if (!steps.empty() && steps.back().first == r)
      steps.back().second = j + 1;
    else
      steps.emplace_back(r, j + 1);
  }
  double total = 0.0;
  if (!steps.empty() && diam > steps.front().first)
    total += (diam - steps.front().first) * u_profile(1.0, n);
  for (std::size_t l = 0; l < steps.size(); ++l) {
    double hi = steps[l].first;
    double lo = (l + 1 < steps.size()) ? steps[l + 1].first : 0.0;
    total += (hi - lo) * u_profile(double(steps[l].second), n);
  }
  return {total, false};
}

double Schedule::lambda(std::size_t s) const {
  if (s == 0 || s >= log_lambda.size())
    throw config_error("schedule: level index out of range");
  return std::exp(log_lambda[s]);
}

double Schedule::q(std::size_t s) const {
  if (s == 0 || s >= log_q.size())
    throw config_error("schedule: level index out of range");
  return std::exp(log_q[s]);
}

Schedule Schedule::custom(const std::vector<double>& lambda,
                          const std::vector<double>& q) {
  if (lambda.size() != q.size() || lambda.empty())
    throw config_error("custom schedule: lambda and q must match and be nonempty");
  Schedule s;
  s.log_lambda.assign(1, std::numeric_limits<double>::quiet_NaN());
  s.log_q.assign(1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] > 0.0) || !(q[i] > 0.0))
      throw config_error("custom schedule: entries must be positive");
    s.log_lambda.push_back(std::log(lambda[i]));
    s.log_q.push_back(std::log(q[i]));
  }
  return s;
}

namespace {
std::map<std::string, double> merge_constants(
    const std::map<std::string, double>& user,
    const std::map<std::string, double>& defaults, const char* what) {
  std::map<std::string, double> out = defaults;
  for (const auto& [k, v] : user) {
    auto it = out.find(k);
    if (it == out.end())
      throw config_error(std::string(what) + ": unknown constant " + k);
    it->second = v;
  }
  return out;
}
}  // namespace

Schedule schedule_gamma(std::size_t n, const std::map<std::string, double>& kappa,
                        std::size_t depth) {
  if (n == 0) throw config_error("schedule_gamma: n must be >= 1");
  auto c = merge_constants(
      kappa, {{"k1", 1.0}, {"k2", 1.0}, {"k3", 1.0}, {"k4", 1.0}, {"k5", 1.0}},
      "schedule_gamma");
  const double ln2 = std::log(2.0);

  Schedule s;
  s.constants = c;
  double bound = std::log(c.at("k3") * double(n));
  std::optional<int> sn;
  for (int cand = 0; cand < 64; ++cand) {
    if (std::ldexp(1.0, cand + 1) * ln2 <= bound)
      sn = cand;
    else
      break;
  }
  s.s_n = sn;
  s.degenerate = !sn.has_value();

  s.log_lambda.assign(1, std::numeric_limits<double>::quiet_NaN());
  s.log_q.assign(1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t lvl = 1; lvl <= depth; ++lvl) {
    // lambda caps the chain-increment count |T_s| * |T_{s-1}| of a
    // doubly-exponential sequence: 2^{2^s} * 2^{2^{s-1}} = 2^{3 * 2^{s-1}}
    s.log_lambda.push_back(3.0 * std::ldexp(1.0, int(lvl) - 1) * ln2);
    double lq = std::log(c.at("k4"));
    if (sn && int(lvl) < *sn)
      lq -= c.at("k5") * std::sqrt(double(n));
    else if (sn && int(lvl) == *sn)
      ;  // kappa4 alone
    else
      lq += 0.5 * double(lvl) * ln2;
    s.log_q.push_back(lq);
  }
  return s;
}

Schedule schedule_entropy(std::size_t n, const std::map<std::string, double>& cc,
                          std::size_t depth) {
  if (n == 0) throw config_error("schedule_entropy: n must be >= 1");
  auto c = merge_constants(cc, {{"c1", 1.0}, {"c2", 1.0}, {"c3", 1.0}, {"c4", 1.0}},
                           "schedule_entropy");
  const double ln2 = std::log(2.0);

  Schedule s;
  s.constants = c;
  double cap = c.at("c1") * double(n);
  std::optional<int> nu;
  for (int cand = 0; cand < 64; ++cand) {
    if (std::ldexp(1.0, cand) <= cap)
      nu = cand;
    else
      break;
  }
  s.nu_n = nu;
  s.degenerate = !nu.has_value();
  int nun = nu.value_or(0);

  s.log_lambda.assign(1, std::numeric_limits<double>::quiet_NaN());
  s.log_q.assign(1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t lvl = 1; lvl <= depth; ++lvl) {
    int rel = int(lvl) - nun;
    if (nu && rel <= 0) {
      s.log_lambda.push_back(std::log(c.at("c2")) + double(lvl) * ln2);
      s.log_q.push_back(std::log(c.at("c4")) -
                        2.0 * std::pow(2.0, double(rel) / 2.0));
    } else {
      s.log_lambda.push_back(std::log(c.at("c3")) + std::log(double(n)) +
                             (std::ldexp(1.0, rel) - 1.0) * ln2);
      s.log_q.push_back(0.5 * double(rel) * ln2);
    }
  }
  return s;
}

std::size_t tau_m(std::size_t m, std::size_t k) {
  if (m == 0 || m > k) throw config_error("tau_m: need 1 <= m <= k");
  double target = double(m) * std::log(std::exp(1.0) * double(k) / double(m));
  const double ln2 = std::log(2.0);
  for (std::size_t s = 0; s < 64; ++s)
    if (std::ldexp(1.0, int(s)) * ln2 >= target) return s;
  return 64;
}

}  // namespace chaindisc
