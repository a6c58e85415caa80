#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace scope {

/// Reproducible random stream: xoshiro256** seeded through splitmix64.
///
/// The stream is fully specified so other implementations can reproduce it:
///   - state[k] = splitmix64 outputs 0..3 starting from `seed`
///   - next_u64: xoshiro256** (Blackman & Vigna, 2018)
///   - uniform: (next_u64() >> 11) * 2^-53, in [0, 1)
///   - normal: Box-Muller on u1 = 1 - uniform(), u2 = uniform(); the first call
///     returns sqrt(-2 ln u1) cos(2 pi u2), the second the matching sine term.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();
  double normal();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
  std::optional<double> spare_normal_;
};

}  // namespace scope
