#include "qcover/sobol.hpp"

#include <bit>
#include <string>

#include "qcover/errors.hpp"
#include "qcover/rng.hpp"

namespace qcover {

namespace {

struct DirectionSeed {
  int degree;                 // s
  std::uint32_t poly;         // a: interior bits of the primitive polynomial
  std::uint32_t m[7];         // initial odd direction integers
};

// Joe & Kuo, new-joe-kuo-6 table, dimensions 2..21 (dimension 1 is the
// van der Corput sequence).
constexpr DirectionSeed kSeeds[] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
};

std::vector<std::uint32_t> direction_numbers(int dim_index) {
  std::vector<std::uint32_t> v(SobolSequence::kBits);
  if (dim_index == 0) {
    for (int j = 0; j < SobolSequence::kBits; ++j)
      v[static_cast<std::size_t>(j)] = 1u << (31 - j);
    return v;
  }
  const DirectionSeed& seed = kSeeds[dim_index - 1];
  const int s = seed.degree;
  for (int j = 0; j < s; ++j)
    v[static_cast<std::size_t>(j)] = seed.m[j] << (31 - j);
  for (int j = s; j < SobolSequence::kBits; ++j) {
    std::uint32_t x = v[static_cast<std::size_t>(j - s)];
    x ^= x >> s;
    for (int k = 1; k < s; ++k)
      if ((seed.poly >> (s - 1 - k)) & 1u) x ^= v[static_cast<std::size_t>(j - k)];
    v[static_cast<std::size_t>(j)] = x;
  }
  return v;
}

}  // namespace

namespace detail {

std::uint32_t owen_scramble(std::uint32_t x, std::uint64_t key) {
  std::uint32_t y = 0;
  for (int b = 31; b >= 0; --b) {
    // Node id: the bits above position b, prefixed with a 1 so ids are
    // unique across tree levels.
    const std::uint64_t prefix = (b == 31) ? 0ull : (static_cast<std::uint64_t>(x) >> (b + 1));
    const std::uint64_t node = (1ull << (31 - b)) | prefix;
    const std::uint32_t flip = static_cast<std::uint32_t>(hash64(key ^ hash64(node))) & 1u;
    y |= (((x >> b) & 1u) ^ flip) << b;
  }
  return y;
}

}  // namespace detail

SobolSequence::SobolSequence(int dimension, std::uint64_t seed, bool scrambled)
    : dimension_(dimension), scrambled_(scrambled) {
  if (dimension < 1 || dimension > kMaxDimension)
    throw InputError("SobolSequence: dimension " + std::to_string(dimension) +
                     " outside supported range 1.." + std::to_string(kMaxDimension));
  state_.assign(static_cast<std::size_t>(dimension), 0u);
  dirs_.reserve(static_cast<std::size_t>(dimension));
  scramble_keys_.reserve(static_cast<std::size_t>(dimension));
  for (int d = 0; d < dimension; ++d) {
    dirs_.push_back(direction_numbers(d));
    scramble_keys_.push_back(mix_seed(seed, static_cast<std::uint64_t>(d) + 0x5301));
  }
}

std::vector<double> SobolSequence::next() {
  std::vector<double> point(static_cast<std::size_t>(dimension_));
  for (int d = 0; d < dimension_; ++d) {
    std::uint32_t bits = state_[static_cast<std::size_t>(d)];
    if (scrambled_) bits = detail::owen_scramble(bits, scramble_keys_[static_cast<std::size_t>(d)]);
    point[static_cast<std::size_t>(d)] = static_cast<double>(bits) * 0x1.0p-32;
  }
  // Advance the Gray-code recursion for the following point.
  const int c = std::countr_zero(~index_);
  if (c < kBits)
    for (int d = 0; d < dimension_; ++d)
      state_[static_cast<std::size_t>(d)] ^= dirs_[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)];
  ++index_;
  return point;
}

std::vector<std::vector<double>> SobolSequence::take(int n) {
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts.push_back(next());
  return pts;
}

}  // namespace qcover
