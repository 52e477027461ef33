#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chaindisc/chaining.hpp"
#include "chaindisc/core.hpp"

namespace chaindisc {

struct DiscResult {
  double value = 0.0;
  Coloring witness;
  bool exact = false;
  std::uint64_t evaluated = 0;  // colorings examined
};

// Exact min-max signed sum over all full colorings; dim <= 24. One sign is
// pinned by symmetry, the rest are walked in Gray-code order.
DiscResult disc_exact(const PointSet& T);

// Best of `budget` random restarts with steepest single-flip descent; small
// instances get an extra pair-flip polish pass.
DiscResult disc_heuristic(const PointSet& T, std::uint64_t budget,
                          std::uint64_t seed);

struct PartialColorResult {
  bool success = false;
  Coloring eta;                // per coordinate, zeros allowed
  double chain_bound = 0.0;    // certified sup bound from the quantized chain
  double measured_sup = 0.0;
  std::size_t zero_lo = 0, zero_hi = 0;  // admissible zero-count window
  bool exhaustive_used = false;
  std::uint64_t samples_used = 0;
  std::size_t buckets = 0;         // diagnostics
  std::size_t largest_bucket = 0;
};

// Pigeonhole partial coloring: sign vectors are fingerprinted by the
// quantized signed sums of the chain increments of `seq` under the scales of
// `sched`; two vectors in one fingerprint class whose disagreement count
// lands in [n/4, 3n/4] yield eta = (eps - eps')/2 with the certified bound
// sum_s Q_s |increment|. Sampling up to `budget`; exhaustive over all 2^n
// sign vectors when n <= 20 and sampling comes up empty (budget 0 goes
// straight to the exhaustive phase).
//
// The chain is anchored at the origin: the level-0 projection is treated as
// the zero vector no matter what the sequence's bottom level holds.
PartialColorResult partial_color(const PointSet& T, const Schedule& sched,
                                 const AdmissibleSequence& seq,
                                 std::uint64_t budget, std::uint64_t seed);

// Rough collision-entropy estimate (bits) of the fingerprint above; the
// halving drivers use it to skip sampling that cannot plausibly collide
// within any sane budget.
double fingerprint_entropy_bits(const PointSet& T, const Schedule& sched,
                                const AdmissibleSequence& seq);

struct BudgetCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
  std::vector<double> terms;  // per level s >= 1
};

// k1 * sum_s lambda_s phi((k2 Q_s)^2) <= n/100, evaluated over the schedule's
// materialized depth. Reported, not enforced: with unit constants the sum
// typically exceeds the budget even when the search succeeds.
BudgetCheck entropy_budget_check(const Schedule& sched, std::size_t n);

struct RoundRecord {
  std::size_t round = 0;
  std::size_t n_coords = 0;  // coordinates alive entering the round
  std::size_t colored = 0;   // coordinates signed this round
  std::string method;        // "pigeonhole" | "local" | "tail"
  double bound = 0.0;        // certified chain bound, or measured round sup
  bool certified = false;
  std::uint64_t samples = 0;
};

struct HalvingResult {
  double value = 0.0;  // sup_t |<eps, t>| of the stitched full coloring
  Coloring coloring;
  double bound_sum = 0.0;  // sum of round bounds; valid upper bound on value
  std::vector<RoundRecord> rounds;
  bool any_fallback = false;
  bool input_warning = false;    // points leave the unit sup-norm ball
  double reference_scale = 0.0;  // sqrt(n log(em/n)), or n^{1/2-1/(2d)}
  double implied_constant = 0.0;
  std::vector<double> round_integrals;  // per-round entropy integral (set systems)
};

// Iterative halving: run partial_color on the projection to the still-zero
// coordinates, falling back to a budgeted local search for a half-zero
// coloring when the pigeonhole fails, until <= 10 coordinates remain; those
// are signed by exhaustive search against the already-fixed partial sums.
HalvingResult spencer_color(const PointSet& T, std::uint64_t budget,
                            std::uint64_t seed,
                            const std::map<std::string, double>& consts = {});

// Same driver for {0,1} set systems with caller-declared shatter dimension d;
// additionally reports the per-round entropy integral and compares the final
// value against n^{1/2 - 1/(2d)}.
HalvingResult matousek_color(const PointSet& T, std::size_t vc_d,
                             std::uint64_t budget, std::uint64_t seed,
                             const std::map<std::string, double>& consts = {});

struct HdiscResult {
  double value = 0.0;
  IndexSet witness_index_set;
  Coloring witness;  // coloring of the witness index set's coordinates
  std::uint64_t subsets = 0;
};

// max over nonempty index sets I of disc_exact(P_I T); dim <= 16.
HdiscResult hdisc_exact(const PointSet& T);

}  // namespace chaindisc
