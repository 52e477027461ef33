#include "chaindisc/shatter.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>

#include "chaindisc/chaining.hpp"
#include "chaindisc/parallel.hpp"
#include "chaindisc/rng.hpp"

namespace chaindisc {

namespace {

// ---- dense two-phase simplex (Bland's rule) --------------------------------

struct LpSolution {
  bool feasible = false;
  std::vector<double> x;
};

// minimize c.x subject to A x = b, x >= 0.  Rows with b < 0 are negated
// internally.  Bland's entering rule plus a pivot cap as a float-world
// anti-cycling backstop; an unbounded phase-2 ray just stops early (the
// callers only need feasibility and a reasonable margin).
LpSolution lp_solve(std::vector<std::vector<double>> A, std::vector<double> b,
                    const std::vector<double>& c, std::size_t max_pivots) {
  constexpr double kTol = 1e-9;
  std::size_t m = A.size();
  std::size_t n = c.size();
  for (std::size_t i = 0; i < m; ++i) {
    assert(A[i].size() == n);
    if (b[i] < 0.0) {
      for (auto& v : A[i]) v = -v;
      b[i] = -b[i];
    }
  }

  std::size_t width = n + m + 1;  // vars | artificials | rhs
  std::vector<std::vector<double>> tab(m + 1, std::vector<double>(width, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(A[i].begin(), A[i].end(), tab[i].begin());
    tab[i][n + i] = 1.0;
    tab[i][width - 1] = b[i];
    basis[i] = n + i;
  }
  auto& cost = tab[m];
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += tab[i][j];
    cost[j] = -s;
  }

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    double pv = tab[pr][pc];
    for (auto& v : tab[pr]) v /= pv;
    tab[pr][pc] = 1.0;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr) continue;
      double f = tab[r][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) tab[r][j] -= f * tab[pr][j];
      tab[r][pc] = 0.0;
    }
    basis[pr] = pc;
  };

  auto run = [&](std::size_t col_limit) {
    for (std::size_t it = 0; it < max_pivots; ++it) {
      std::size_t enter = width;
      for (std::size_t j = 0; j < col_limit; ++j)
        if (cost[j] < -kTol) {
          enter = j;
          break;
        }
      if (enter == width) return;
      std::size_t leave = m;
      double best = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double a = tab[i][enter];
        if (a <= kTol) continue;
        double ratio = tab[i][width - 1] / a;
        if (ratio < 0.0) ratio = 0.0;
        if (leave == m || ratio < best - 1e-12 ||
            (std::abs(ratio - best) <= 1e-12 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return;  // unbounded direction
      pivot(leave, enter);
    }
  };

  run(width - 1);  // phase 1: artificial reduced costs are 0, never re-enter

  double art = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) art += tab[i][width - 1];
  LpSolution sol;
  if (art > 1e-7) return sol;

  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(tab[i][j]) > kTol) {
        pivot(i, j);
        break;
      }
  }

  for (std::size_t j = 0; j < n; ++j) {
    double s = c[j];
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) s -= c[basis[i]] * tab[i][j];
    cost[j] = s;
  }
  run(n);

  sol.feasible = true;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = std::max(0.0, tab[i][width - 1]);
  return sol;
}

// ---- shared helpers ---------------------------------------------------------

// fixed accumulation order: construction and replay must agree bit for bit
std::vector<double> mix(const PointSet& G, const std::vector<double>& w,
                        const std::vector<std::size_t>& idx) {
  std::vector<double> f(idx.size(), 0.0);
  for (std::size_t p = 0; p < idx.size(); ++p) {
    double s = 0.0;
    for (std::size_t j = 0; j < G.size(); ++j) s += w[j] * G[j][idx[p]];
    f[p] = s;
  }
  return f;
}

std::vector<double> restrict_row(const std::vector<double>& row,
                                 const std::vector<std::size_t>& idx) {
  std::vector<double> f(idx.size());
  for (std::size_t p = 0; p < idx.size(); ++p) f[p] = row[idx[p]];
  return f;
}

// ---- finite mode ------------------------------------------------------------

std::vector<double> level_candidates(const PointSet& T, std::size_t coord,
                                     double eps) {
  std::vector<double> vals;
  vals.reserve(T.size());
  for (std::size_t r = 0; r < T.size(); ++r) vals.push_back(T[r][coord]);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<double> cands;
  for (double v : vals) {
    cands.push_back(v - eps);
    cands.push_back(v + eps);
  }
  for (std::size_t j = 0; j + 1 < vals.size(); ++j)
    cands.push_back(0.5 * (vals[j] + vals[j + 1]));
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

struct FiniteSearch {
  const PointSet& T;
  const std::vector<std::size_t>& idx;
  double eps;
  std::vector<std::vector<double>> cands;
  std::vector<double> levels;
  std::vector<std::vector<std::uint32_t>> leaf;  // pattern sets at full depth
  bool found = false;

  bool dfs(std::size_t p, const std::vector<std::vector<std::uint32_t>>& sets) {
    if (p == idx.size()) {
      leaf = sets;
      return true;
    }
    std::size_t coord = idx[p];
    for (double s : cands[p]) {
      std::vector<std::vector<std::uint32_t>> next(sets.size() * 2);
      bool ok = true;
      for (std::size_t q = 0; q < sets.size() && ok; ++q) {
        auto& below = next[q];
        auto& above = next[q | (std::size_t(1) << p)];
        for (std::uint32_t r : sets[q]) {
          double v = T[r][coord];
          if (v >= s + eps)
            above.push_back(r);
          else if (v <= s - eps)
            below.push_back(r);
        }
        ok = !above.empty() && !below.empty();
      }
      if (!ok) continue;
      levels[p] = s;
      if (dfs(p + 1, next)) return true;
    }
    return false;
  }
};

std::optional<ShatterWitness> finite_shatter(const PointSet& T,
                                             const std::vector<std::size_t>& idx,
                                             double eps) {
  std::size_t k = idx.size();
  if (k < 64 && T.size() < (std::size_t(1) << k)) return std::nullopt;

  FiniteSearch fs{T, idx, eps, {}, std::vector<double>(k, 0.0), {}, false};
  fs.cands.reserve(k);
  for (std::size_t p = 0; p < k; ++p)
    fs.cands.push_back(level_candidates(T, idx[p], eps));

  std::vector<std::vector<std::uint32_t>> root(1);
  for (std::uint32_t r = 0; r < T.size(); ++r) root[0].push_back(r);
  if (!fs.dfs(0, root)) return std::nullopt;

  ShatterWitness w;
  w.indices = IndexSet(idx);
  w.levels = fs.levels;
  w.hull = false;
  std::size_t patterns = std::size_t(1) << k;
  w.rows.resize(patterns);
  w.assignment.resize(patterns);
  for (std::size_t P = 0; P < patterns; ++P) {
    w.rows[P] = fs.leaf[P].front();  // lowest row index in scan order
    w.assignment[P] = restrict_row(T[w.rows[P]], idx);
  }
  return w;
}

// ---- hull mode --------------------------------------------------------------

// weights straight off the solver: clip stray negatives, snap near-integers
// (tight instances land on vertices), renormalize
bool clean_weights(std::vector<double>& w) {
  double sum = 0.0;
  for (auto& v : w) {
    if (v < 0.0) v = 0.0;
    double r = std::round(v);
    if (std::abs(v - r) <= 1e-7) v = r;
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) return false;
  if (sum != 1.0)
    for (auto& v : w) v /= sum;
  return true;
}

// shared level recovery: with the witness values fixed, the feasible band for
// s_p is [max_below f + eps, min_above f - eps]; its midpoint replays exactly
bool derive_levels(const std::vector<std::vector<double>>& f, double eps,
                   std::size_t k, std::vector<double>& levels) {
  levels.assign(k, 0.0);
  std::size_t patterns = std::size_t(1) << k;
  for (std::size_t p = 0; p < k; ++p) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t P = 0; P < patterns; ++P) {
      if ((P >> p) & 1u)
        hi = std::min(hi, f[P][p] - eps);
      else
        lo = std::max(lo, f[P][p] + eps);
    }
    if (lo > hi) return false;
    levels[p] = lo + 0.5 * (hi - lo);
    if (levels[p] < lo || levels[p] > hi) levels[p] = lo;
  }
  return true;
}

// per-pattern feasibility at a fixed level vector, margin maximized
bool pattern_lp(const PointSet& G, const std::vector<std::size_t>& idx,
                const std::vector<double>& s0, double eps, std::size_t P,
                std::vector<double>& w_out) {
  std::size_t g = G.size(), k = idx.size();
  std::size_t nv = g + 1 + k;  // weights, margin t, slacks
  std::vector<std::vector<double>> A(k + 1, std::vector<double>(nv, 0.0));
  std::vector<double> b(k + 1, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    double sign = ((P >> p) & 1u) ? 1.0 : -1.0;
    for (std::size_t j = 0; j < g; ++j) A[p][j] = sign * G[j][idx[p]];
    A[p][g] = -1.0;          // margin
    A[p][g + 1 + p] = -1.0;  // slack
    b[p] = sign * s0[p] + eps;
  }
  for (std::size_t j = 0; j < g; ++j) A[k][j] = 1.0;
  b[k] = 1.0;
  std::vector<double> c(nv, 0.0);
  c[g] = -1.0;  // maximize the margin
  LpSolution sol = lp_solve(std::move(A), std::move(b), c, 4000);
  if (!sol.feasible) return false;
  w_out.assign(sol.x.begin(), sol.x.begin() + g);
  return clean_weights(w_out);
}

// one joint feasibility problem: shared levels plus per-pattern weights
bool joint_lp(const PointSet& G, const std::vector<std::size_t>& idx,
              double eps, std::vector<std::vector<double>>& weights) {
  std::size_t g = G.size(), k = idx.size();
  std::size_t patterns = std::size_t(1) << k;
  std::size_t vw = patterns * g;
  std::size_t nv = vw + 2 * k + 1 + patterns * k;  // w | s+- | t | slacks
  std::size_t rows = patterns * (k + 1);
  if ((rows + 1) * (nv + rows + 1) > 40000000)
    throw size_error("is_shattered: hull instance too large");

  std::vector<std::vector<double>> A(rows, std::vector<double>(nv, 0.0));
  std::vector<double> b(rows, 0.0);
  std::size_t r = 0;
  for (std::size_t P = 0; P < patterns; ++P) {
    for (std::size_t p = 0; p < k; ++p, ++r) {
      double sign = ((P >> p) & 1u) ? 1.0 : -1.0;
      for (std::size_t j = 0; j < g; ++j) A[r][P * g + j] = sign * G[j][idx[p]];
      A[r][vw + 2 * p] = -sign;      // s_p positive part
      A[r][vw + 2 * p + 1] = sign;   // s_p negative part
      A[r][vw + 2 * k] = -1.0;       // margin
      A[r][vw + 2 * k + 1 + P * k + p] = -1.0;
      b[r] = eps;
    }
    for (std::size_t j = 0; j < g; ++j) A[r][P * g + j] = 1.0;
    b[r] = 1.0;
    ++r;
  }
  std::vector<double> c(nv, 0.0);
  c[vw + 2 * k] = -1.0;
  LpSolution sol = lp_solve(std::move(A), std::move(b), c, 200000);
  if (!sol.feasible) return false;
  weights.assign(patterns, {});
  for (std::size_t P = 0; P < patterns; ++P) {
    weights[P].assign(sol.x.begin() + P * g, sol.x.begin() + (P + 1) * g);
    if (!clean_weights(weights[P])) return false;
  }
  return true;
}

std::optional<ShatterWitness> hull_shatter(const PointSet& T,
                                           const std::vector<std::size_t>& idx,
                                           double eps) {
  PointSet G = hull_generators(T);
  std::size_t k = idx.size();
  std::size_t patterns = std::size_t(1) << k;

  for (std::size_t p = 0; p < k; ++p) {
    double lo = G[0][idx[p]], hi = lo;
    for (std::size_t j = 1; j < G.size(); ++j) {
      lo = std::min(lo, G[j][idx[p]]);
      hi = std::max(hi, G[j][idx[p]]);
    }
    if (hi - lo < 2.0 * eps) return std::nullopt;
  }

  auto build = [&](std::vector<std::vector<double>>& weights)
      -> std::optional<ShatterWitness> {
    std::vector<std::vector<double>> f(patterns);
    for (std::size_t P = 0; P < patterns; ++P) f[P] = mix(G, weights[P], idx);
    std::vector<double> levels;
    if (!derive_levels(f, eps, k, levels)) return std::nullopt;
    ShatterWitness w;
    w.indices = IndexSet(idx);
    w.levels = std::move(levels);
    w.assignment = std::move(f);
    w.weights = std::move(weights);
    w.hull = true;
    if (!witness_valid(T, eps, w)) return std::nullopt;
    return w;
  };

  // separable attempt: levels pinned at the coordinate midranges
  {
    std::vector<double> s0(k);
    for (std::size_t p = 0; p < k; ++p) {
      double lo = G[0][idx[p]], hi = lo;
      for (std::size_t j = 1; j < G.size(); ++j) {
        lo = std::min(lo, G[j][idx[p]]);
        hi = std::max(hi, G[j][idx[p]]);
      }
      s0[p] = 0.5 * (lo + hi);
    }
    std::vector<std::vector<double>> weights(patterns);
    std::vector<char> ok(patterns, 0);
    par::parallel_for(std::ptrdiff_t(patterns), [&](std::ptrdiff_t P) {
      ok[P] = pattern_lp(G, idx, s0, eps, std::size_t(P), weights[P]) ? 1 : 0;
    });
    if (std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; })) {
      auto w = build(weights);
      if (w) return w;
    }
  }

  std::vector<std::vector<double>> weights;
  if (!joint_lp(G, idx, eps, weights)) return std::nullopt;
  return build(weights);
}

// ---- rank utilities for hull pruning ----------------------------------------

std::size_t matrix_rank(std::vector<std::vector<double>> M) {
  if (M.empty()) return 0;
  std::size_t rows = M.size(), cols = M[0].size();
  double scale = 0.0;
  for (const auto& row : M)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  double tol = scale * 1e-9;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank + 1; r < rows; ++r)
      if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
    if (std::abs(M[piv][c]) <= tol) continue;
    std::swap(M[piv], M[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      double f = M[r][c] / M[rank][c];
      for (std::size_t j = c; j < cols; ++j) M[r][j] -= f * M[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::size_t projected_rank(const PointSet& T,
                           const std::vector<std::size_t>& idx) {
  std::vector<std::vector<double>> M(T.size());
  for (std::size_t r = 0; r < T.size(); ++r) M[r] = restrict_row(T[r], idx);
  return matrix_rank(std::move(M));
}

std::optional<ShatterWitness> shatter_idx(const PointSet& T,
                                          const std::vector<std::size_t>& idx,
                                          double eps, bool hull) {
  if (hull) {
    // a full-dimensional margin box must fit inside the projected hull
    if (projected_rank(T, idx) < idx.size()) return std::nullopt;
    return hull_shatter(T, idx, eps);
  }
  return finite_shatter(T, idx, eps);
}

}  // namespace

// ---- public surface ----------------------------------------------------------

PointSet hull_generators(const PointSet& T) {
  PointSet G = T;
  for (std::size_t r = 0; r < T.size(); ++r) {
    std::vector<double> neg(T.dim());
    for (std::size_t i = 0; i < T.dim(); ++i) neg[i] = -T[r][i];
    G.push_back(std::move(neg));
  }
  return G.deduplicated();
}

std::optional<ShatterWitness> is_shattered(const PointSet& T, const IndexSet& I,
                                           double eps, bool hull) {
  if (!(eps > 0.0)) throw config_error("is_shattered: eps must be positive");
  if (I.size() > 16) throw size_error("is_shattered: at most 16 indices");
  for (std::size_t i : I.indices())
    if (i >= T.dim()) throw config_error("is_shattered: index out of range");
  if (T.empty()) return std::nullopt;

  const std::vector<std::size_t>& idx = I.indices();
  if (idx.empty()) {
    ShatterWitness w;
    w.indices = I;
    w.hull = hull;
    w.assignment = {{}};
    if (hull)
      w.weights = {std::vector<double>(hull_generators(T).size(), 0.0)},
      w.weights[0][0] = 1.0;
    else
      w.rows = {0};
    return w;
  }
  return shatter_idx(T, idx, eps, hull);
}

bool witness_valid(const PointSet& T, double eps, const ShatterWitness& w) {
  std::size_t k = w.indices.size();
  if (k >= 64) return false;
  std::size_t patterns = std::size_t(1) << k;
  if (w.assignment.size() != patterns || w.levels.size() != k) return false;
  const auto& idx = w.indices.indices();

  PointSet G = w.hull ? hull_generators(T) : PointSet();
  for (std::size_t P = 0; P < patterns; ++P) {
    std::vector<double> f;
    if (w.hull) {
      if (w.weights.size() != patterns || w.weights[P].size() != G.size())
        return false;
      double sum = 0.0;
      for (double v : w.weights[P]) {
        if (v < 0.0) return false;
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-9) return false;
      f = mix(G, w.weights[P], idx);
    } else {
      if (w.rows.size() != patterns || w.rows[P] >= T.size()) return false;
      f = restrict_row(T[w.rows[P]], idx);
    }
    if (f != w.assignment[P]) return false;
    for (std::size_t p = 0; p < k; ++p) {
      if ((P >> p) & 1u) {
        if (!(f[p] >= w.levels[p] + eps)) return false;
      } else {
        if (!(f[p] <= w.levels[p] - eps)) return false;
      }
    }
  }
  return true;
}

namespace {

std::size_t vc_dim_impl(const PointSet& T, double eps, bool hull,
                        std::size_t floor_k) {
  std::size_t n = T.dim();
  if (T.empty() || n == 0) return 0;

  // coordinates that cannot separate two class members by 2 eps are dead
  std::vector<std::size_t> allowed;
  for (std::size_t i = 0; i < n; ++i) {
    double lo = T[0][i], hi = lo;
    for (std::size_t r = 1; r < T.size(); ++r) {
      lo = std::min(lo, T[r][i]);
      hi = std::max(hi, T[r][i]);
    }
    if (hull) {
      hi = std::max(std::abs(lo), std::abs(hi));
      lo = -hi;
    }
    if (hi - lo >= 2.0 * eps) allowed.push_back(i);
  }

  std::size_t kmax = allowed.size();
  if (hull) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    kmax = std::min(kmax, projected_rank(T, all));
  } else {
    std::size_t lg = 0;
    while ((std::size_t(1) << (lg + 1)) <= T.size()) ++lg;
    kmax = std::min(kmax, lg);
  }
  kmax = std::min<std::size_t>(kmax, 16);
  if (kmax <= floor_k) return floor_k;

  // pairwise shatterability gates the subsets in hull mode
  std::vector<std::vector<char>> pair_ok;
  if (hull && allowed.size() >= 2) {
    std::size_t a = allowed.size();
    pair_ok.assign(a, std::vector<char>(a, 1));
    for (std::size_t x = 0; x < a; ++x)
      for (std::size_t y = x + 1; y < a; ++y) {
        bool ok = shatter_idx(T, {allowed[x], allowed[y]}, eps, true).has_value();
        pair_ok[x][y] = pair_ok[y][x] = ok ? 1 : 0;
      }
  }

  for (std::size_t k = kmax; k > floor_k; --k) {
    std::uint32_t mask = (std::uint32_t(1) << k) - 1;
    std::uint32_t limit = std::uint32_t(1) << allowed.size();
    while (mask < limit) {
      std::vector<std::size_t> idx;
      std::vector<std::size_t> pos;
      for (std::size_t p = 0; p < allowed.size(); ++p)
        if ((mask >> p) & 1u) {
          idx.push_back(allowed[p]);
          pos.push_back(p);
        }
      bool pairs = true;
      if (!pair_ok.empty())
        for (std::size_t x = 0; x < pos.size() && pairs; ++x)
          for (std::size_t y = x + 1; y < pos.size() && pairs; ++y)
            pairs = pair_ok[pos[x]][pos[y]] != 0;
      if (pairs && shatter_idx(T, idx, eps, hull)) return k;
      // Gosper's hack: next mask with the same popcount
      std::uint32_t c = mask & -mask;
      std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return floor_k;
}

}  // namespace

std::size_t vc_dim(const PointSet& T, double eps, bool hull) {
  if (!(eps > 0.0)) throw config_error("vc_dim: eps must be positive");
  if (T.dim() > 16) throw size_error("vc_dim: dimension capped at 16");
  return vc_dim_impl(T, eps, hull, 0);
}

HausslerReport haussler_check(const PointSet& T, std::size_t d,
                              std::uint64_t seed, std::size_t subset_samples,
                              std::size_t eps_grid) {
  if (d == 0) throw config_error("haussler_check: d must be >= 1");
  if (eps_grid == 0) throw config_error("haussler_check: empty eps grid");
  HausslerReport rep;
  rep.declared_d = d;
  std::size_t n = T.dim();
  if (n == 0 || T.empty()) return rep;

  if (n <= 16) {
    rep.measured_vc = vc_dim(T, 0.5, false);
    rep.vc_checked = true;
    rep.violation = rep.measured_vc > d;
  }

  std::vector<std::vector<std::size_t>> subsets;
  {
    std::vector<std::size_t> full(n);
    for (std::size_t i = 0; i < n; ++i) full[i] = i;
    subsets.push_back(full);
    Rng rng = Rng::child(seed, 0);
    for (std::size_t j = 0; j < subset_samples; ++j) {
      std::size_t m = 1 + rng.below(n);
      std::vector<std::size_t> perm = full;
      for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);
      perm.resize(m);
      std::sort(perm.begin(), perm.end());
      subsets.push_back(std::move(perm));
    }
  }

  rep.entries.resize(subsets.size() * eps_grid);
  par::parallel_for(std::ptrdiff_t(subsets.size()), [&](std::ptrdiff_t si) {
    const auto& I = subsets[si];
    PointSet P = project(T, IndexSet(I));
    double root = std::sqrt(double(I.size()));
    for (std::size_t j = 1; j <= eps_grid; ++j) {
      double eps = root * double(j) / double(eps_grid);
      HausslerEntry e;
      e.subset = I;
      e.eps = eps;
      e.packing = double(packing_number(P, eps, Metric::euclidean()).value);
      e.implied = e.packing * std::pow(eps / root, 2.0 * double(d));
      rep.entries[std::size_t(si) * eps_grid + (j - 1)] = std::move(e);
    }
  });
  for (const auto& e : rep.entries)
    rep.implied_constant = std::max(rep.implied_constant, e.implied);
  return rep;
}

double hdisc_vc_lower(const PointSet& T, const std::vector<double>& delta_grid) {
  if (T.dim() > 8) throw size_error("hdisc_vc_lower: dimension capped at 8");
  if (T.size() > 6) throw size_error("hdisc_vc_lower: at most 6 points");
  if (delta_grid.empty()) throw config_error("hdisc_vc_lower: empty grid");
  for (double d : delta_grid)
    if (!(d > 0.0)) throw config_error("hdisc_vc_lower: deltas must be positive");
  if (T.empty()) return 0.0;

  std::vector<double> grid = delta_grid;
  std::sort(grid.begin(), grid.end(), std::greater<double>());
  double best = 0.0;
  std::size_t floor_k = 0;  // vc_dim only grows as delta shrinks
  for (double delta : grid) {
    std::size_t vc = vc_dim_impl(T, delta, true, floor_k);
    best = std::max(best, delta * double(vc));
    floor_k = vc;
  }
  return best;
}

}  // namespace chaindisc
