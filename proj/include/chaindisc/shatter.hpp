#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "chaindisc/core.hpp"
#include "chaindisc/errors.hpp"

namespace chaindisc {

// Margin-shattering of coordinate subsets: a subset I is shattered at scale
// eps when some level vector s over I admits, for every above/below pattern,
// a class member sitting at least eps above s on the pattern's coordinates
// and at least eps below s on the rest.  Pattern bit p set means "above" on
// the p-th index of I (ascending order).
struct ShatterWitness {
  IndexSet indices;
  std::vector<double> levels;                   // s, aligned with indices
  std::vector<std::vector<double>> assignment;  // per pattern: witness values on indices
  std::vector<std::size_t> rows;                // finite mode: witness row per pattern
  std::vector<std::vector<double>> weights;     // hull mode: convex weights over hull_generators(T)
  bool hull = false;
};

// generators of the symmetric convex hull: rows of T then -T, first-occurrence dedup
PointSet hull_generators(const PointSet& T);

// finite mode searches the class rows directly; hull mode searches the
// symmetric convex hull via linear feasibility
std::optional<ShatterWitness> is_shattered(const PointSet& T, const IndexSet& I,
                                           double eps, bool hull);

// replays the defining inequalities with no tolerance (weights are
// re-mixed through the same accumulation order used at construction)
bool witness_valid(const PointSet& T, double eps, const ShatterWitness& w);

std::size_t vc_dim(const PointSet& T, double eps, bool hull);

struct HausslerEntry {
  std::vector<std::size_t> subset;
  double eps = 0.0;
  double packing = 0.0;
  double implied = 0.0;  // D * (eps / sqrt(|I|))^{2d}
};

struct HausslerReport {
  std::size_t declared_d = 0;
  std::size_t measured_vc = 0;
  bool vc_checked = false;  // dimension small enough to measure
  bool violation = false;   // measured exceeds declared
  double implied_constant = 0.0;
  std::vector<HausslerEntry> entries;
};

// packing-vs-scale sweep for 0/1 classes of declared dimension d
HausslerReport haussler_check(const PointSet& T, std::size_t d,
                              std::uint64_t seed,
                              std::size_t subset_samples = 16,
                              std::size_t eps_grid = 8);

// sup over the grid of delta * vc_dim(T, delta, hull=true); a certified
// lower bound for the hereditary discrepancy
double hdisc_vc_lower(const PointSet& T, const std::vector<double>& delta_grid);

}  // namespace chaindisc
