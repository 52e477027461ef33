#pragma once
#include <cstdint>
#include <vector>

namespace chaindisc::kernel {

struct MinSup {
  double value = 0.0;
  std::uint64_t mask = 0;  // bit i set -> sign of column i is -1
};

// cols holds n column vectors over m points; base is a per-point offset
// (empty means zero). Minimizes sup_t |base_t + sum_i eps_i cols[i][t]| over
// sign assignments, walking them in Gray-code order with O(m) updates.
// fix_last pins the last sign to +1 (only valid with base == 0, where the
// objective is symmetric under global sign flip). Ties prefer smaller mask.
// Work is split into a thread-count-independent number of chunks and folded
// in chunk order, so the result never depends on parallel scheduling.
MinSup min_sup_enum(const std::vector<std::vector<double>>& cols,
                    const std::vector<double>& base, bool fix_last);

// Mean over all 2^n sign assignments of sup_t |sum_i eps_i cols[i][t]|.
// Enumerates half of them (global flip symmetry) with compensated sums.
double mean_sup_enum(const std::vector<std::vector<double>>& cols);

}  // namespace chaindisc::kernel
