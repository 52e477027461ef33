#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chaindisc/core.hpp"

namespace chaindisc {

struct CountResult {
  std::size_t value = 0;
  bool exact = true;
};

// Largest eps-separated subset (pairwise distances >= eps). Exact search up
// to 12 distinct points, greedy farthest-point prefix beyond (still a maximal
// separated set, so the standard covering sandwich applies to it).
CountResult packing_number(const PointSet& T, double eps, const Metric& d);

// Fewest open balls of radius eps, centered at points of T, covering T.
// Exact set cover up to 12 distinct points, greedy beyond.
CountResult covering_number(const PointSet& T, double eps, const Metric& d);

struct EntropyNumberResult {
  double value = 0.0;
  bool exact = true;
};

// e_k = inf{eps : covering_number(T, eps) <= 2^k}
EntropyNumberResult entropy_number(const PointSet& T, std::size_t k, const Metric& d);

// Nested level sets T_0 subset T_1 subset ... terminating at T, together with
// a projection (assignment) of every point to each level. levels hold indices
// into the source set.
struct AdmissibleSequence {
  std::vector<std::vector<std::size_t>> levels;
  std::vector<std::vector<std::size_t>> proj;  // proj[s][i]: level-s image of point i
  std::size_t source_size = 0;
  bool nearest_projection = true;  // false for chained (top-down) assignments

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
};

enum class BuildStrategy { greedy, exhaustive };

// greedy: farthest-point traversal, levels capped at 1, 4, 16, 2^{2^s}, ...
// exhaustive: |T| <= 6, minimizes gamma2 at s0 = 0 over all nested sequences.
AdmissibleSequence build_admissible(const PointSet& T, const Metric& d,
                                    BuildStrategy strategy);

// Levels are farthest-point prefixes capped by caps[s] (entropy-method level
// budgets); projections chain top-down, so each level contributes at most
// |T_s| distinct chain increments.
AdmissibleSequence build_capped_levels(const PointSet& T, const Metric& d,
                                       const std::vector<double>& caps);

// sup_t sum_{s >= s0} 2^{s/2} d(t, T_s), evaluated on the given sequence.
double gamma2(const PointSet& T, const Metric& d, std::size_t s0,
              const AdmissibleSequence& seq);

struct IntegralResult {
  double value = 0.0;
  bool exact = true;
};

// integral of sqrt(log N(eps)) over (0, diam]; N is piecewise constant in eps
// so this is a finite sum over breakpoints.
IntegralResult dudley_integral(const PointSet& T, const Metric& d);

// integral of u(eps) over (0, diam], where u depends on the packing number
// D(eps) relative to the ambient dimension n:
//   u = sqrt(log(e D / n))      if D >= n
//   u = exp(-sqrt(n / D) + 1)   if D <  n
IntegralResult entropy_integral_u(const PointSet& T, const Metric& d);

// Level budgets lambda_s and quantization scales Q_s, s >= 1. Values are kept
// in log space because lambda grows doubly exponentially.
struct Schedule {
  std::vector<double> log_lambda;  // index s, slot 0 unused
  std::vector<double> log_q;
  std::map<std::string, double> constants;
  std::optional<int> s_n;   // branch index of the gamma-driven schedule
  std::optional<int> nu_n;  // branch index of the entropy-driven schedule
  bool degenerate = false;

  std::size_t depth() const { return log_lambda.empty() ? 0 : log_lambda.size() - 1; }
  double lambda(std::size_t s) const;
  double q(std::size_t s) const;

  static Schedule custom(const std::vector<double>& lambda,
                         const std::vector<double>& q);
};

// Q_s: kappa4 * exp(-kappa5 sqrt(n)) below s_n, kappa4 at s_n, kappa4 2^{s/2}
// above, where s_n = max{s : 2^{2^{s+1}} <= kappa3 n}. lambda_s caps the
// chain-increment count of a doubly-exponential admissible sequence.
Schedule schedule_gamma(std::size_t n,
                        const std::map<std::string, double>& kappa = {},
                        std::size_t depth = 16);

// lambda_s = c2 2^s for s <= nu_n, c3 n 2^{2^{s-nu_n}-1} beyond;
// Q_s = c4 exp(-2 * 2^{(s-nu_n)/2}) for s <= nu_n, 2^{(s-nu_n)/2} beyond;
// nu_n = largest s with 2^s <= c1 n.
Schedule schedule_entropy(std::size_t n,
                          const std::map<std::string, double>& c = {},
                          std::size_t depth = 16);

// smallest s with 2^{2^s} >= exp(m log(ek/m))
std::size_t tau_m(std::size_t m, std::size_t k);

}  // namespace chaindisc
