#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace chaindisc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic RNG used everywhere. Gaussians are produced by Box-Muller on
// 53-bit uniforms instead of std::normal_distribution, whose output is
// implementation-defined; this keeps frozen test values portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  // Independent stream for trial `stream` of a run seeded with `seed`.
  // Parallel trial loops draw from child streams so the schedule of threads
  // cannot change what any single trial sees.
  static Rng child(std::uint64_t seed, std::uint64_t stream) {
    return Rng(seed ^ splitmix64(stream + 0x51ed2701a9e20cb1ULL));
  }

  std::uint64_t bits() { return eng_(); }

  // uniform in [0,1)
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in (0,1], safe as a log() argument
  double uniform01_open0() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01_open0();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  int rademacher() { return (eng_() >> 63) ? 1 : -1; }

  // uniform integer in [0, n), n >= 1
  std::uint64_t below(std::uint64_t n) {
    // rejection to stay unbiased
    std::uint64_t mask = ~0ULL >> __builtin_clzll(n | 1);
    for (;;) {
      std::uint64_t v = eng_() & mask;
      if (v < n) return v;
    }
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace chaindisc
