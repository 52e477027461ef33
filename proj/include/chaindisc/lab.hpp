#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chaindisc/chaining.hpp"
#include "chaindisc/core.hpp"
#include "chaindisc/errors.hpp"
#include "chaindisc/rng.hpp"

namespace chaindisc {

// Product measure with mean-zero unit-variance marginals. The two named
// kinds are isotropic by construction; a custom marginal is validated at
// construction and carries its own declared subgaussian constant.
struct MeasureSpec {
  enum class Kind { gaussian_isotropic, cube_uniform, custom_bounded };
  Kind kind = Kind::gaussian_isotropic;
  std::size_t dim = 1;
  std::vector<double> values;  // custom marginal support
  std::vector<double> probs;
  double L = 1.0;

  static MeasureSpec gaussian(std::size_t d);
  static MeasureSpec cube(std::size_t d);
  static MeasureSpec custom(std::size_t d, std::vector<double> values,
                            std::vector<double> probs, double L);

  std::vector<double> sample(Rng& rng) const;
};

// class of linear functionals x -> <t, x> indexed by the rows of T
struct LinearClass {
  PointSet T;
  MeasureSpec mu;

  double sigma_f() const;  // sup_t |t|
  double diam_l2() const;  // diameter in the euclidean metric
};

struct SampleWindow {
  std::vector<std::vector<double>> sigma;  // the k draws
  std::uint64_t seed = 0;
};

struct Estimate {
  double value = 0.0;
  double ci_half = 0.0;  // 1.96 * stderr; zero in exact mode
  bool exact = false;
  std::uint64_t trials = 0;
};

// sigma plus the projected set {(<t, X_i>)_i : t in T}
std::pair<SampleWindow, PointSet> sample_projection(const LinearClass& cls,
                                                    std::size_t k,
                                                    std::uint64_t seed);

// moment-method proxy: sup over even p <= 16 of ||x||_p / sqrt(p)
double psi2_estimate(const std::vector<double>& samples);

// E over uniform signs of sup_rows |sum_i eps_i V[r][i]|; exact enumeration
// up to 20 columns, Monte Carlo otherwise
Estimate emp_sign_sup(const PointSet& V, bool exact, std::uint64_t trials,
                      std::uint64_t seed);

// E over a standard gaussian g of sup_rows |<g, v>|
Estimate gauss_mean_width(const PointSet& V, std::uint64_t trials,
                          std::uint64_t seed);

// split t = (t - pi(t)) + pi(t) at the chaining level picked by m and k
struct Decomposition {
  std::size_t m = 0;
  std::size_t tau = 0;         // target level
  std::size_t level = 0;       // materialized level actually used
  bool degenerate = false;     // net reached the whole set, first part is zero
  PointSet f1_part;            // t - pi(t), aligned with the source rows
  PointSet f2_part;            // pi(t), values taken from the source set
  std::vector<std::size_t> net_rows;  // source row that pi maps each t to
  std::size_t net_size = 0;           // distinct net points
  AdmissibleSequence seq;
  double gamma_tau = 0.0;      // gamma_{2,tau} upper bound from seq
  std::size_t k = 0;
};

Decomposition decompose(const LinearClass& cls, std::size_t k, std::size_t m);

struct WeakL2Report {
  double gamma_bound = 0.0;
  double max_radius = 0.0;  // exact sup over |I| = m via top-coordinate subsets
  double c1_hat = 0.0;
  bool degenerate = false;  // zero gamma bound
  std::size_t vectors = 0;
};

WeakL2Report verify_weak_l2_containment(const Decomposition& dec,
                                        const SampleWindow& win);

struct ShrinkReport {
  double c2_hat = 0.0;          // vs sqrt(log(ek/m)), worst I per pair
  double full_ratio_max = 0.0;  // ||.||_{L2} / ||.||_{L2^sigma}
  std::size_t violations = 0;   // pairs beating sqrt(2)
  std::size_t pairs = 0;
  std::size_t skipped = 0;  // zero-distance pairs
};

ShrinkReport verify_shrinking(const Decomposition& dec, const SampleWindow& win,
                              std::size_t pair_samples, std::uint64_t seed);

struct ShrinkSingleReport {
  std::vector<double> constants;  // per-trial sup_m ratio, sorted ascending
  double quantile(double q) const;
};

ShrinkSingleReport shrink_single(const std::vector<double>& t,
                                 const MeasureSpec& mu, std::size_t k,
                                 std::size_t trials, std::uint64_t seed);

struct OrderStatsReport {
  std::size_t n = 0;
  std::vector<double> mean_sorted;  // E of the i-th largest |g|, 1-based slots
  std::vector<double> ratio;        // vs sqrt(log(2n/i)) for i <= n/2
  std::vector<std::size_t> m_grid;
  std::vector<double> prefix_rms;    // (E sum_{i<=m} (g_i^*)^2)^{1/2}
  std::vector<double> prefix_ratio;  // vs sqrt(m log(en/m))
};

OrderStatsReport order_stats(std::size_t n, std::size_t trials,
                             std::uint64_t seed,
                             std::vector<std::size_t> m_grid = {1, 4, 16, 64,
                                                                256});

struct MeanWidthRow {
  std::size_t m = 0;
  double c3_hat = 0.0;       // max over sampled I, against the scaled width
  double lower_ratio = 0.0;  // single-vector worst-I experiment
};

struct MeanWidthReport {
  double ell_T = 0.0;
  std::vector<MeanWidthRow> rows;
};

MeanWidthReport meanwidth_ratio(const LinearClass& cls, std::size_t k,
                                const std::vector<std::size_t>& m_grid,
                                std::size_t I_samples, std::uint64_t trials,
                                std::uint64_t seed);

struct IsometryReport {
  double threshold = 0.0;  // kappa7 * A / sqrt(k)
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  double rate = 0.0;
};

// fraction of above-threshold points whose empirical norm leaves the
// [sqrt(1/2), sqrt(3/2)] sandwich around the true norm
IsometryReport almost_isometry(const LinearClass& cls, std::size_t k,
                               std::size_t trials, double A_estimate,
                               std::uint64_t seed, double kappa7 = 1.0);

// coordinatewise clamp to [-beta, beta] and the residual; parts re-sum exactly
std::pair<PointSet, PointSet> truncate_split(const PointSet& V, double beta);

struct GapRow {
  std::size_t k = 0;
  double median_ratio = 0.0;  // disc upper bound / sign mean, per trial median
  double mean_ratio = 0.0;
  double min_anchor = 0.0;  // min over trials of esup / (sqrt(k) sigma_F)
  double a_k = 0.0;         // evaluated bound curve at n = k
  std::size_t degenerate_trials = 0;
};

struct GapReport {
  std::vector<GapRow> rows;
  double sigma_f = 0.0;
  double diam = 0.0;
};

GapReport gap_experiment(const LinearClass& cls,
                         const std::vector<std::size_t>& k_list,
                         std::uint64_t budget, std::size_t trials, double rho,
                         std::uint64_t seed);

// gamma * sqrt(log(ek/n)) + diam * log(k) / n^{1/2 - rho}, scaled by c1
double eval_a_n(std::size_t n, std::size_t k, double gamma_value, double diam,
                double rho, double c1 = 1.0);

// floor(log2 log2(c2 n)), the level cutoff used by the bound curve
std::size_t s0_for(std::size_t n, double c2 = 1.0);

// empirical E<X,x>^2 / |x|^2
double isotropy_ratio(const MeasureSpec& mu, const std::vector<double>& x,
                      std::size_t samples, std::uint64_t seed);

struct TailFit {
  std::vector<double> t_grid;
  std::vector<double> emp_prob;
  double c_fit = 0.0;
};

// tail of |sum_i <t,X_i>| against 2 exp(-t^2/c): c_fit is the smallest c
// making the bound hold on the grid
TailFit psi2_tail_check(const MeasureSpec& mu, const std::vector<double>& t_dir,
                        std::size_t k, std::size_t trials, std::uint64_t seed);

// deviation of (1/k) sum f^2 against 2 exp(-c k min(t^2, t)): c_fit is the
// largest c for which the bound holds on the grid
TailFit bernstein_check(const MeasureSpec& mu, const std::vector<double>& t_dir,
                        std::size_t k, std::size_t trials, std::uint64_t seed);

}  // namespace chaindisc
