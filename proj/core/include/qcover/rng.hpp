#pragma once

#include <cmath>
#include <cstdint>

namespace qcover {

namespace detail {
inline std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Stateless hash of a 64-bit value (one splitmix64 round).
inline std::uint64_t hash64(std::uint64_t x) {
  return detail::splitmix64_step(x);
}

/// Combines a seed with a stream index into an independent derived seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return hash64(seed ^ (0x94d049bb133111ebull * (stream + 1)));
}

/// Counter-based splitmix64 generator. Pure integer arithmetic, so sequences
/// are identical across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(hash64(seed ^ 0x2545f4914f6cdd1dull)) {}

  std::uint64_t next_u64() { return detail::splitmix64_step(state_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal deviate (Box-Muller).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qcover
