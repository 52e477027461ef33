#include "chaindisc/lab.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "chaindisc/coloring.hpp"
#include "chaindisc/enum_kernel.hpp"
#include "chaindisc/parallel.hpp"

namespace chaindisc {

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / double(v.size());
}

Estimate mc_estimate(const std::vector<double>& vals) {
  Estimate e;
  e.trials = vals.size();
  e.value = mean_of(vals);
  if (vals.size() > 1) {
    double ss = 0.0;
    for (double x : vals) ss += (x - e.value) * (x - e.value);
    e.ci_half = 1.96 * std::sqrt(ss / double(vals.size() - 1) /
                                 double(vals.size()));
  }
  return e;
}

double sup_abs_dot(const PointSet& V, const std::vector<double>& g) {
  double best = 0.0;
  for (std::size_t r = 0; r < V.size(); ++r)
    best = std::max(best, std::abs(dot(V[r], g)));
  return best;
}

double log_ek_over(double k, double m) { return 1.0 + std::log(k / m); }

std::vector<std::size_t> sample_subset(Rng& rng, std::size_t k, std::size_t m) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t(0));
  for (std::size_t i = k; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  perm.resize(m);
  std::sort(perm.begin(), perm.end());
  return perm;
}

}  // namespace

// ---- measures ---------------------------------------------------------------

MeasureSpec MeasureSpec::gaussian(std::size_t d) {
  if (d == 0) throw config_error("measure: dimension must be >= 1");
  MeasureSpec m;
  m.kind = Kind::gaussian_isotropic;
  m.dim = d;
  return m;
}

MeasureSpec MeasureSpec::cube(std::size_t d) {
  if (d == 0) throw config_error("measure: dimension must be >= 1");
  MeasureSpec m;
  m.kind = Kind::cube_uniform;
  m.dim = d;
  return m;
}

MeasureSpec MeasureSpec::custom(std::size_t d, std::vector<double> values,
                                std::vector<double> probs, double L) {
  if (d == 0) throw config_error("measure: dimension must be >= 1");
  if (values.empty() || values.size() != probs.size())
    throw config_error("measure: values/probabilities size mismatch");
  if (!(L > 0.0)) throw config_error("measure: L must be positive");
  double psum = 0.0, mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !(probs[i] >= 0.0))
      throw config_error("measure: invalid marginal entry");
    psum += probs[i];
    mean += probs[i] * values[i];
    second += probs[i] * values[i] * values[i];
  }
  if (std::abs(psum - 1.0) > 1e-12)
    throw config_error("measure: probabilities must sum to 1");
  if (std::abs(mean) > 1e-9)
    throw config_error("measure: marginal must have mean zero");
  if (std::abs(second - 1.0) > 1e-9)
    throw config_error("measure: marginal must have unit variance");
  MeasureSpec m;
  m.kind = Kind::custom_bounded;
  m.dim = d;
  m.values = std::move(values);
  m.probs = std::move(probs);
  m.L = L;
  return m;
}

std::vector<double> MeasureSpec::sample(Rng& rng) const {
  std::vector<double> x(dim);
  switch (kind) {
    case Kind::gaussian_isotropic:
      for (auto& v : x) v = rng.gauss();
      break;
    case Kind::cube_uniform:
      for (auto& v : x) v = double(rng.rademacher());
      break;
    case Kind::custom_bounded:
      for (auto& v : x) {
        double u = rng.uniform01();
        double acc = 0.0;
        v = values.back();
        for (std::size_t i = 0; i < values.size(); ++i) {
          acc += probs[i];
          if (u < acc) {
            v = values[i];
            break;
          }
        }
      }
      break;
  }
  return x;
}

double LinearClass::sigma_f() const {
  double s = 0.0;
  for (std::size_t r = 0; r < T.size(); ++r) s = std::max(s, l2norm(T[r]));
  return s;
}

double LinearClass::diam_l2() const {
  double d = 0.0;
  for (std::size_t a = 0; a < T.size(); ++a)
    for (std::size_t b = a + 1; b < T.size(); ++b)
      d = std::max(d, l2dist(T[a], T[b]));
  return d;
}

// ---- sampling and basic estimators -------------------------------------------

std::pair<SampleWindow, PointSet> sample_projection(const LinearClass& cls,
                                                    std::size_t k,
                                                    std::uint64_t seed) {
  if (k == 0) throw config_error("sample_projection: k must be >= 1");
  if (!cls.T.empty() && cls.T.dim() != cls.mu.dim)
    throw config_error("sample_projection: class/measure dimension mismatch");

  SampleWindow win;
  win.seed = seed;
  win.sigma.resize(k);
  par::parallel_for(std::ptrdiff_t(k), [&](std::ptrdiff_t i) {
    Rng rng = Rng::child(seed, std::uint64_t(i));
    win.sigma[i] = cls.mu.sample(rng);
  });

  std::vector<std::vector<double>> rows(cls.T.size(),
                                        std::vector<double>(k, 0.0));
  par::parallel_for(std::ptrdiff_t(cls.T.size()), [&](std::ptrdiff_t r) {
    for (std::size_t i = 0; i < k; ++i)
      rows[r][i] = dot(cls.T[r], win.sigma[i]);
  });
  return {std::move(win), PointSet(std::move(rows), k)};
}

double psi2_estimate(const std::vector<double>& samples) {
  if (samples.size() < 100)
    throw size_error("psi2_estimate: needs at least 100 samples");
  double best = 0.0;
  for (int p = 2; p <= 16; p += 2) {
    double acc = 0.0;
    for (double x : samples) acc += std::pow(std::abs(x), p);
    acc /= double(samples.size());
    best = std::max(best, std::pow(acc, 1.0 / p) / std::sqrt(double(p)));
  }
  return best;
}

Estimate emp_sign_sup(const PointSet& V, bool exact, std::uint64_t trials,
                      std::uint64_t seed) {
  std::size_t k = V.dim();
  Estimate e;
  if (V.empty() || k == 0) {
    e.exact = true;
    e.trials = 1;
    return e;
  }
  if (exact) {
    if (k > 20) throw size_error("emp_sign_sup: exact mode capped at 20 columns");
    std::vector<std::vector<double>> cols(k, std::vector<double>(V.size()));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t r = 0; r < V.size(); ++r) cols[i][r] = V[r][i];
    e.value = kernel::mean_sup_enum(cols);
    e.exact = true;
    e.trials = std::uint64_t(1) << k;
    return e;
  }
  if (trials == 0) throw config_error("emp_sign_sup: trials must be >= 1");
  std::vector<double> vals(trials, 0.0);
  par::parallel_for(std::ptrdiff_t(trials), [&](std::ptrdiff_t tr) {
    Rng rng = Rng::child(seed, std::uint64_t(tr));
    std::vector<double> eps(k);
    for (auto& v : eps) v = double(rng.rademacher());
    vals[tr] = sup_abs_dot(V, eps);
  });
  return mc_estimate(vals);
}

Estimate gauss_mean_width(const PointSet& V, std::uint64_t trials,
                          std::uint64_t seed) {
  if (trials < 100) throw config_error("gauss_mean_width: trials must be >= 100");
  Estimate e;
  if (V.empty() || V.dim() == 0) {
    e.trials = trials;
    return e;
  }
  std::vector<double> vals(trials, 0.0);
  par::parallel_for(std::ptrdiff_t(trials), [&](std::ptrdiff_t tr) {
    Rng rng = Rng::child(seed, std::uint64_t(tr));
    std::vector<double> g(V.dim());
    for (auto& v : g) v = rng.gauss();
    vals[tr] = sup_abs_dot(V, g);
  });
  return mc_estimate(vals);
}

// ---- decomposition ------------------------------------------------------------

Decomposition decompose(const LinearClass& cls, std::size_t k, std::size_t m) {
  if (m == 0 || m > k) throw config_error("decompose: need 1 <= m <= k");
  if (!cls.T.empty() && cls.T.dim() != cls.mu.dim)
    throw config_error("decompose: class/measure dimension mismatch");

  Decomposition dec;
  dec.m = m;
  dec.k = k;
  dec.tau = tau_m(m, k);
  if (cls.T.empty()) {
    dec.degenerate = true;
    return dec;
  }

  // the psi2 distance of a linear class is L * euclidean under an isotropic
  // subgaussian measure; the scale factor changes neither the traversal nor
  // the projections, so the plain euclidean sequence serves
  Metric d = Metric::euclidean();
  dec.seq = build_admissible(cls.T, d, BuildStrategy::greedy);
  dec.level = std::min(dec.tau, dec.seq.depth());
  dec.gamma_tau = gamma2(cls.T, d, dec.tau, dec.seq);

  std::size_t n = cls.T.dim();
  std::vector<std::vector<double>> f1(cls.T.size()), f2(cls.T.size());
  dec.net_rows.resize(cls.T.size());
  bool all_zero = true;
  for (std::size_t r = 0; r < cls.T.size(); ++r) {
    std::size_t nr = dec.seq.proj[dec.level][r];
    dec.net_rows[r] = nr;
    f2[r] = cls.T[nr];
    f1[r].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      f1[r][i] = cls.T[r][i] - f2[r][i];
      if (f1[r][i] != 0.0) all_zero = false;
    }
  }
  dec.f1_part = PointSet(std::move(f1), n);
  dec.f2_part = PointSet(std::move(f2), n);
  dec.degenerate = all_zero;
  std::vector<std::size_t> uniq = dec.net_rows;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  dec.net_size = uniq.size();
  return dec;
}

WeakL2Report verify_weak_l2_containment(const Decomposition& dec,
                                        const SampleWindow& win) {
  std::size_t k = win.sigma.size();
  if (dec.k != k)
    throw config_error("weak_l2: decomposition and window disagree on k");
  WeakL2Report rep;
  rep.gamma_bound = dec.gamma_tau;
  rep.degenerate = dec.gamma_tau == 0.0;
  rep.vectors = dec.f1_part.size();
  std::size_t m = std::min(dec.m, k);

  std::vector<double> radius(dec.f1_part.size(), 0.0);
  par::parallel_for(std::ptrdiff_t(dec.f1_part.size()), [&](std::ptrdiff_t r) {
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = dot(dec.f1_part[r], win.sigma[i]);
    std::vector<double> srt = rearrange_nonincreasing(v);
    // restricting to the m largest coordinates dominates every other |I| = m
    double best = 0.0;
    for (std::size_t j = 1; j <= m; ++j)
      best = std::max(best, srt[j - 1] * std::sqrt(double(j)));
    radius[r] = best;
  });
  for (double r : radius) rep.max_radius = std::max(rep.max_radius, r);
  rep.c1_hat = rep.degenerate ? 0.0 : rep.max_radius / rep.gamma_bound;
  return rep;
}

ShrinkReport verify_shrinking(const Decomposition& dec, const SampleWindow& win,
                              std::size_t pair_samples, std::uint64_t seed) {
  std::size_t k = win.sigma.size();
  if (dec.k != k)
    throw config_error("shrinking: decomposition and window disagree on k");
  std::size_t m = std::min(dec.m, k);
  ShrinkReport rep;

  std::vector<std::size_t> net = dec.net_rows;
  std::sort(net.begin(), net.end());
  net.erase(std::unique(net.begin(), net.end()), net.end());
  if (net.size() < 2) return rep;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t all = net.size() * (net.size() - 1) / 2;
  if (all <= pair_samples) {
    for (std::size_t a = 0; a < net.size(); ++a)
      for (std::size_t b = a + 1; b < net.size(); ++b)
        pairs.emplace_back(net[a], net[b]);
  } else {
    Rng rng = Rng::child(seed, 0);
    for (std::size_t j = 0; j < pair_samples; ++j)
      pairs.emplace_back(net[rng.below(net.size())],
                         net[rng.below(net.size())]);
  }

  struct Out {
    double c2 = 0.0, full_ratio = 0.0;
    int flag = 0;  // 0 ok, 1 skipped, 2 violation
  };
  std::vector<Out> outs(pairs.size());
  const PointSet& S = dec.f2_part;
  par::parallel_for(std::ptrdiff_t(pairs.size()), [&](std::ptrdiff_t pi) {
    auto [ra, rb] = pairs[pi];
    Out o;
    if (ra == rb) {
      o.flag = 1;
      outs[pi] = o;
      return;
    }
    // rows of the net are source rows; use their source-set coordinates
    const std::vector<double>* ta = nullptr;
    const std::vector<double>* tb = nullptr;
    for (std::size_t r = 0; r < dec.net_rows.size(); ++r) {
      if (dec.net_rows[r] == ra && !ta) ta = &S[r];
      if (dec.net_rows[r] == rb && !tb) tb = &S[r];
    }
    double full = l2dist(*ta, *tb);
    if (full == 0.0) {
      o.flag = 1;
      outs[pi] = o;
      return;
    }
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i)
      w[i] = dot(*ta, win.sigma[i]) - dot(*tb, win.sigma[i]);
    double ssq_all = 0.0;
    for (double v : w) ssq_all += v * v;
    double l2sigma = std::sqrt(ssq_all / double(k));
    std::vector<double> srt = rearrange_nonincreasing(w);
    double ssq_top = 0.0;
    for (std::size_t j = 0; j < m; ++j) ssq_top += srt[j] * srt[j];
    double l2I = std::sqrt(ssq_top / double(m));
    o.c2 = l2I / (std::sqrt(log_ek_over(double(k), double(m))) * full);
    if (l2sigma > 0.0) {
      o.full_ratio = full / l2sigma;
      if (full > std::sqrt(2.0) * l2sigma) o.flag = 2;
    } else {
      o.flag = 2;
    }
    outs[pi] = o;
  });

  for (const Out& o : outs) {
    if (o.flag == 1) {
      ++rep.skipped;
      continue;
    }
    ++rep.pairs;
    if (o.flag == 2) ++rep.violations;
    rep.c2_hat = std::max(rep.c2_hat, o.c2);
    rep.full_ratio_max = std::max(rep.full_ratio_max, o.full_ratio);
  }
  return rep;
}

ShrinkSingleReport shrink_single(const std::vector<double>& t,
                                 const MeasureSpec& mu, std::size_t k,
                                 std::size_t trials, std::uint64_t seed) {
  if (trials < 100) throw config_error("shrink_single: trials must be >= 100");
  if (k == 0) throw config_error("shrink_single: k must be >= 1");
  if (t.size() != mu.dim)
    throw config_error("shrink_single: vector/measure dimension mismatch");

  ShrinkSingleReport rep;
  rep.constants.assign(trials, 0.0);
  double norm_t = l2norm(t);
  if (norm_t == 0.0) return rep;

  par::parallel_for(std::ptrdiff_t(trials), [&](std::ptrdiff_t tr) {
    Rng rng = Rng::child(seed, std::uint64_t(tr));
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = dot(t, mu.sample(rng));
    std::vector<double> srt = rearrange_nonincreasing(v);
    double prefix = 0.0, best = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
      prefix += srt[m - 1] * srt[m - 1];
      double ratio = std::sqrt(prefix / double(m)) /
                     (std::sqrt(log_ek_over(double(k), double(m))) * norm_t);
      best = std::max(best, ratio);
    }
    rep.constants[tr] = best;
  });
  std::sort(rep.constants.begin(), rep.constants.end());
  return rep;
}

double ShrinkSingleReport::quantile(double q) const {
  if (constants.empty()) return 0.0;
  double pos = q * double(constants.size());
  std::size_t idx = pos <= 1.0 ? 0 : std::size_t(std::ceil(pos)) - 1;
  idx = std::min(idx, constants.size() - 1);
  return constants[idx];
}

// ---- gaussian order statistics -------------------------------------------------

OrderStatsReport order_stats(std::size_t n, std::size_t trials,
                             std::uint64_t seed,
                             std::vector<std::size_t> m_grid) {
  if (n == 0) throw config_error("order_stats: n must be >= 1");
  if (trials < 100) throw config_error("order_stats: trials must be >= 100");
  if (n > 200000000 / trials)
    throw size_error("order_stats: trials * n too large");

  OrderStatsReport rep;
  rep.n = n;
  std::vector<double> buf(trials * n);
  par::parallel_for(std::ptrdiff_t(trials), [&](std::ptrdiff_t tr) {
    Rng rng = Rng::child(seed, std::uint64_t(tr));
    double* row = buf.data() + std::size_t(tr) * n;
    for (std::size_t i = 0; i < n; ++i) row[i] = std::abs(rng.gauss());
    std::sort(row, row + n, std::greater<double>());
  });

  rep.mean_sorted.assign(n, 0.0);
  for (std::size_t tr = 0; tr < trials; ++tr)
    for (std::size_t i = 0; i < n; ++i)
      rep.mean_sorted[i] += buf[tr * n + i];
  for (auto& v : rep.mean_sorted) v /= double(trials);

  for (std::size_t i = 1; i <= n / 2; ++i)
    rep.ratio.push_back(rep.mean_sorted[i - 1] /
                        std::sqrt(std::log(2.0 * double(n) / double(i))));

  for (std::size_t m : m_grid) {
    if (m == 0 || m > n) continue;
    rep.m_grid.push_back(m);
    double acc = 0.0;
    for (std::size_t tr = 0; tr < trials; ++tr) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double v = buf[tr * n + i];
        s += v * v;
      }
      acc += s;
    }
    double rms = std::sqrt(acc / double(trials));
    rep.prefix_rms.push_back(rms);
    rep.prefix_ratio.push_back(
        rms / std::sqrt(double(m) * log_ek_over(double(n), double(m))));
  }
  return rep;
}

// ---- mean width ----------------------------------------------------------------

MeanWidthReport meanwidth_ratio(const LinearClass& cls, std::size_t k,
                                const std::vector<std::size_t>& m_grid,
                                std::size_t I_samples, std::uint64_t trials,
                                std::uint64_t seed) {
  if (I_samples == 0) throw config_error("meanwidth_ratio: need I samples");
  auto [win, P] = sample_projection(cls, k, splitmix64(seed ^ 0x77));

  std::vector<std::vector<double>> scaled = P.rows();
  double root_k = std::sqrt(double(k));
  for (auto& row : scaled)
    for (auto& v : row) v /= root_k;
  PointSet V(std::move(scaled), k);

  MeanWidthReport rep;
  rep.ell_T = gauss_mean_width(cls.T, trials, splitmix64(seed ^ 0x1111)).value;

  std::size_t star = 0;
  double star_norm = 0.0;
  for (std::size_t r = 0; r < cls.T.size(); ++r) {
    double nn = l2norm(cls.T[r]);
    if (nn > star_norm) {
      star_norm = nn;
      star = r;
    }
  }
  std::vector<double> vstar =
      cls.T.empty() ? std::vector<double>() : rearrange_nonincreasing(V[star]);

  for (std::size_t m : m_grid) {
    if (m == 0 || m > k) continue;
    MeanWidthRow row;
    row.m = m;
    double fac = std::sqrt(double(m) / double(k) *
                           log_ek_over(double(k), double(m)));
    double denom = fac * rep.ell_T;

    Rng rng = Rng::child(seed, 0x5000 + m);
    std::vector<std::vector<std::size_t>> subs(I_samples);
    for (auto& s : subs) s = sample_subset(rng, k, m);
    std::vector<double> widths(I_samples, 0.0);
    for (std::size_t si = 0; si < I_samples; ++si)
      widths[si] = gauss_mean_width(project(V, IndexSet(subs[si])), trials,
                                    splitmix64(seed ^ (m * 0x9E3779B9 + si)))
                       .value;
    for (double w : widths)
      row.c3_hat = std::max(row.c3_hat, denom > 0.0 ? w / denom : 0.0);

    // gaussian width of a single vector has the closed form |v| E|N(0,1)|,
    // so the top-coordinate worst case is evaluated exactly
    if (star_norm > 0.0) {
      double ssq = 0.0;
      for (std::size_t j = 0; j < m; ++j) ssq += vstar[j] * vstar[j];
      row.lower_ratio = std::sqrt(ssq) / star_norm / fac;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

IsometryReport almost_isometry(const LinearClass& cls, std::size_t k,
                               std::size_t trials, double A_estimate,
                               std::uint64_t seed, double kappa7) {
  if (k == 0 || trials == 0)
    throw config_error("almost_isometry: k and trials must be >= 1");
  if (A_estimate < 0.0 || kappa7 < 0.0)
    throw config_error("almost_isometry: negative threshold inputs");
  if (!cls.T.empty() && cls.T.dim() != cls.mu.dim)
    throw config_error("almost_isometry: class/measure dimension mismatch");

  IsometryReport rep;
  rep.threshold = kappa7 * A_estimate / std::sqrt(double(k));
  const double lo = std::sqrt(0.5), hi = std::sqrt(1.5);

  std::vector<std::uint64_t> checked(trials, 0), bad(trials, 0);
  par::parallel_for(std::ptrdiff_t(trials), [&](std::ptrdiff_t tr) {
    Rng rng = Rng::child(seed, std::uint64_t(tr));
    std::vector<std::vector<double>> X(k);
    for (auto& x : X) x = cls.mu.sample(rng);
    for (std::size_t r = 0; r < cls.T.size(); ++r) {
      double nl2 = l2norm(cls.T[r]);
      if (nl2 == 0.0 || nl2 < rep.threshold) continue;
      double ssq = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        double v = dot(cls.T[r], X[i]);
        ssq += v * v;
      }
      double emp = std::sqrt(ssq / double(k));
      ++checked[tr];
      if (emp < lo * nl2 || emp > hi * nl2) ++bad[tr];
    }
  });
  for (std::size_t tr = 0; tr < trials; ++tr) {
    rep.checked += checked[tr];
    rep.violations += bad[tr];
  }
  rep.rate = rep.checked ? double(rep.violations) / double(rep.checked) : 0.0;
  return rep;
}

std::pair<PointSet, PointSet> truncate_split(const PointSet& V, double beta) {
  if (!(beta > 0.0)) throw config_error("truncate_split: beta must be positive");
  std::vector<std::vector<double>> lo(V.size()), hi(V.size());
  for (std::size_t r = 0; r < V.size(); ++r) {
    lo[r].resize(V.dim());
    hi[r].resize(V.dim());
    for (std::size_t i = 0; i < V.dim(); ++i) {
      double v = V[r][i];
      double c = std::clamp(v, -beta, beta);
      lo[r][i] = c;
      hi[r][i] = v - c;
    }
  }
  return {PointSet(std::move(lo), V.dim()), PointSet(std::move(hi), V.dim())};
}

// ---- the gap experiment ----------------------------------------------------------

GapReport gap_experiment(const LinearClass& cls,
                         const std::vector<std::size_t>& k_list,
                         std::uint64_t budget, std::size_t trials, double rho,
                         std::uint64_t seed) {
  if (trials == 0) throw config_error("gap_experiment: trials must be >= 1");
  GapReport rep;
  rep.sigma_f = cls.sigma_f();
  rep.diam = cls.diam_l2();

  AdmissibleSequence seqT;
  if (!cls.T.empty())
    seqT = build_admissible(cls.T, Metric::euclidean(), BuildStrategy::greedy);

  constexpr std::uint64_t kEsupTrials = 2048;
  for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
    std::size_t k = k_list[ki];
    if (k == 0) throw config_error("gap_experiment: k must be >= 1");
    GapRow row;
    row.k = k;
    std::uint64_t kseed = splitmix64(seed ^ (0x100 + k));

    std::vector<double> ratios;
    double min_anchor = std::numeric_limits<double>::infinity();
    for (std::size_t tr = 0; tr < trials; ++tr) {
      std::uint64_t base = splitmix64(kseed + tr);
      auto [win, P] = sample_projection(cls, k, base);
      double disc = disc_heuristic(P, budget, splitmix64(base + 1)).value;
      Estimate es = emp_sign_sup(P, k <= 20, kEsupTrials, splitmix64(base + 2));
      if (es.value <= 0.0) {
        ++row.degenerate_trials;
        continue;
      }
      ratios.push_back(disc / es.value);
      if (rep.sigma_f > 0.0)
        min_anchor = std::min(
            min_anchor, es.value / (std::sqrt(double(k)) * rep.sigma_f));
    }
    if (!ratios.empty()) {
      std::vector<double> srt = ratios;
      std::sort(srt.begin(), srt.end());
      std::size_t h = srt.size() / 2;
      row.median_ratio =
          srt.size() % 2 ? srt[h] : 0.5 * (srt[h - 1] + srt[h]);
      row.mean_ratio = mean_of(ratios);
    }
    row.min_anchor = std::isfinite(min_anchor) ? min_anchor : 0.0;
    if (!cls.T.empty()) {
      double g = gamma2(cls.T, Metric::euclidean(), s0_for(k), seqT);
      row.a_k = eval_a_n(k, k, g, rep.diam, rho);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

double eval_a_n(std::size_t n, std::size_t k, double gamma_value, double diam,
                double rho, double c1) {
  if (!(rho > 0.0 && rho < 0.5))
    throw config_error("eval_a_n: rho must lie in (0, 1/2)");
  if (n == 0 || n > k) throw config_error("eval_a_n: need 1 <= n <= k");
  double first = gamma_value * std::sqrt(log_ek_over(double(k), double(n)));
  double second =
      diam * std::log(double(k)) / std::pow(double(n), 0.5 - rho);
  return c1 * (first + second);
}

std::size_t s0_for(std::size_t n, double c2) {
  double inner = std::log2(c2 * double(n));
  if (!(inner >= 1.0)) return 0;
  double v = std::floor(std::log2(inner));
  return v <= 0.0 ? 0 : std::size_t(v);
}

// ---- diagnostics ------------------------------------------------------------------

double isotropy_ratio(const MeasureSpec& mu, const std::vector<double>& x,
                      std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw config_error("isotropy_ratio: samples must be >= 1");
  if (x.size() != mu.dim)
    throw config_error("isotropy_ratio: dimension mismatch");
  double nx = l2norm(x);
  if (nx == 0.0) throw config_error("isotropy_ratio: zero direction");
  Rng rng = Rng::child(seed, 0);
  double acc = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    double v = dot(x, mu.sample(rng));
    acc += v * v;
  }
  return acc / double(samples) / (nx * nx);
}

TailFit psi2_tail_check(const MeasureSpec& mu, const std::vector<double>& t_dir,
                        std::size_t k, std::size_t trials, std::uint64_t seed) {
  if (trials < 100) throw config_error("psi2_tail_check: trials must be >= 100");
  if (k == 0) throw config_error("psi2_tail_check: k must be >= 1");
  if (t_dir.size() != mu.dim)
    throw config_error("psi2_tail_check: dimension mismatch");

  TailFit fit;
  fit.t_grid = {0.5, 1.0, 1.5, 2.0, 2.5};
  fit.emp_prob.assign(fit.t_grid.size(), 0.0);

  std::vector<double> calib(100000);
  {
    Rng rng = Rng::child(seed, ~std::uint64_t(0));
    for (auto& v : calib) v = dot(t_dir, mu.sample(rng));
  }
  double psi2 = psi2_estimate(calib);
  if (psi2 == 0.0) return fit;

  std::vector<double> sums(trials, 0.0);
  par::parallel_for(std::ptrdiff_t(trials), [&](std::ptrdiff_t tr) {
    Rng rng = Rng::child(seed, std::uint64_t(tr));
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += dot(t_dir, mu.sample(rng));
    sums[tr] = std::abs(s);
  });
  double scale = std::sqrt(double(k)) * psi2;
  for (std::size_t g = 0; g < fit.t_grid.size(); ++g) {
    std::size_t cnt = 0;
    for (double s : sums)
      if (s >= fit.t_grid[g] * scale) ++cnt;
    fit.emp_prob[g] = double(cnt) / double(trials);
    if (cnt > 0) {
      double t = fit.t_grid[g];
      fit.c_fit = std::max(fit.c_fit, t * t / std::log(2.0 / fit.emp_prob[g]));
    }
  }
  return fit;
}

TailFit bernstein_check(const MeasureSpec& mu, const std::vector<double>& t_dir,
                        std::size_t k, std::size_t trials, std::uint64_t seed) {
  if (trials < 100) throw config_error("bernstein_check: trials must be >= 100");
  if (k == 0) throw config_error("bernstein_check: k must be >= 1");
  if (t_dir.size() != mu.dim)
    throw config_error("bernstein_check: dimension mismatch");

  TailFit fit;
  fit.t_grid = {0.25, 0.5, 1.0, 1.5, 2.0};
  fit.emp_prob.assign(fit.t_grid.size(), 0.0);
  double nsq = dot(t_dir, t_dir);
  if (nsq == 0.0) return fit;

  std::vector<double> devs(trials, 0.0);
  par::parallel_for(std::ptrdiff_t(trials), [&](std::ptrdiff_t tr) {
    Rng rng = Rng::child(seed, std::uint64_t(tr));
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double v = dot(t_dir, mu.sample(rng));
      s += v * v;
    }
    devs[tr] = std::abs(s / double(k) - nsq) / nsq;
  });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < fit.t_grid.size(); ++g) {
    std::size_t cnt = 0;
    for (double d : devs)
      if (d >= fit.t_grid[g]) ++cnt;
    fit.emp_prob[g] = double(cnt) / double(trials);
    if (cnt > 0) {
      double t = fit.t_grid[g];
      best = std::min(best, std::log(2.0 / fit.emp_prob[g]) /
                                (double(k) * std::min(t * t, t)));
    }
  }
  fit.c_fit = std::isfinite(best) ? best : 0.0;
  return fit;
}

}  // namespace chaindisc
