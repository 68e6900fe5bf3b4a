#pragma once

#include <cstdint>
#include <vector>

namespace qcover {

/// Sobol' low-discrepancy sequence in Gray-code order, optionally with
/// Owen-style nested digit scrambling (seeded, deterministic across
/// platforms). Direction numbers follow the Joe-Kuo "new-joe-kuo-6" tables.
class SobolSequence {
 public:
  static constexpr int kMaxDimension = 21;
  static constexpr int kBits = 32;

  /// Throws InputError when dimension exceeds the direction-number table.
  SobolSequence(int dimension, std::uint64_t seed = 0, bool scrambled = false);

  int dimension() const { return dimension_; }

  /// Next point of the sequence in [0,1)^d. The first point of the
  /// unscrambled sequence is the origin.
  std::vector<double> next();

  /// Convenience: the first n points.
  std::vector<std::vector<double>> take(int n);

 private:
  int dimension_;
  bool scrambled_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> state_;               // raw Gray-code words per dim
  std::vector<std::vector<std::uint32_t>> dirs_;   // direction numbers per dim
  std::vector<std::uint64_t> scramble_keys_;
};

namespace detail {
/// Owen nested uniform scramble of a 32-bit fixed-point sample: each output
/// bit is flipped by a hash of the more significant input bits, which keeps
/// the digital-net structure intact.
std::uint32_t owen_scramble(std::uint32_t x, std::uint64_t key);
}  // namespace detail

}  // namespace qcover
