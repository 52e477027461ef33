#pragma once
#include <cmath>
#include <cstdint>
#include <vector>

#include "chaindisc/core.hpp"

namespace chaindisc {

enum class LogBase { nat, two };

// Two-branch potential: log(e/t) on (0,1], t*exp(1-t) beyond. Continuous at 1,
// maximum value 1 there, positive everywhere on its domain.
double phi(double t);

// Exact law of Z = sum_i eps_i a_i under uniform signs. Probabilities are kept
// as integer counts over 2^n, so they stay exact dyadic rationals; support
// values closer than 1e-12 are merged.
struct SignedSumLaw {
  std::vector<double> values;         // sorted ascending
  std::vector<std::uint64_t> counts;  // sum to 2^n
  std::size_t n = 0;

  double prob(std::size_t i) const {
    return static_cast<double>(counts[i]) / std::ldexp(1.0, int(n));
  }
  std::size_t support_size() const { return values.size(); }
};

SignedSumLaw signed_sum_law(const std::vector<double>& a);  // |a| <= 24

// Law of W = sgn(Z) * floor(|Z|), the integer quantization of the signed sum.
struct QuantizedLaw {
  std::vector<long long> values;  // sorted
  std::vector<std::uint64_t> counts;
  std::size_t n = 0;
};

QuantizedLaw quantized_law(const SignedSumLaw& law);

double entropy(const QuantizedLaw& law, LogBase base);

// Shannon entropy of W for the signed sum of `a`.
double w_entropy(const std::vector<double>& a, LogBase base = LogBase::nat);

// H(W_a) against phi(1/(2|a|^2)) across a grid of vectors.
struct EntropicRow {
  std::size_t index = 0;
  double H = 0.0;
  double phi_bound = 0.0;
  double ratio = 0.0;
  bool degenerate = false;  // a = 0: no bound to compare against
};

struct EntropicReport {
  std::vector<EntropicRow> rows;
  double max_ratio = 0.0;
  std::size_t argmax = 0;   // index into rows
  bool any_degenerate = false;
};

EntropicReport verify_entropic_estimate(const PointSet& grid,
                                        LogBase base = LogBase::nat);

}  // namespace chaindisc
