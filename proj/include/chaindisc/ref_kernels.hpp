#pragma once
#include <cstdint>
#include <vector>

namespace chaindisc::ref {

// Plain serial counterparts of the enumeration kernels: no Gray-code
// updates, no chunking, sums recomputed from scratch per sign vector.
// They exist to pin down what the fast versions must produce and to give
// the benchmark a baseline.

struct MinSup {
  double value = 0.0;
  std::uint64_t mask = 0;
};

MinSup min_sup_naive(const std::vector<std::vector<double>>& cols,
                     const std::vector<double>& base, bool fix_last);

double mean_sup_naive(const std::vector<std::vector<double>>& cols);

// Serial Monte Carlo mean of sup_r |<eps, row>| over `trials` sign draws,
// using the same per-trial child streams as the parallel estimator.
double mc_sign_sup_naive(const std::vector<std::vector<double>>& rows,
                         std::uint64_t trials, std::uint64_t seed);

}  // namespace chaindisc::ref
