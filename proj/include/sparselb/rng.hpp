#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace sparselb {

struct RngSeed {
  std::uint64_t value = 0;
};

/// SplitMix64 finalizer; used both as the generator step and to derive
/// independent sub-streams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator, but the
/// library never feeds it to std:: distributions (their output is not
/// portable across standard libraries); use the members below.
class Rng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  /// Stream for one column / trial / grid point. Streams for distinct
  /// indices are statistically independent.
  static constexpr Rng stream(RngSeed seed, std::uint64_t index) noexcept {
    return Rng(mix64(seed.value) ^ mix64(index + 0x9e3779b97f4a7c15ULL));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound) noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform_real() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform +1 / -1.
  int sign() noexcept { return ((*this)() >> 63) != 0 ? -1 : 1; }

  /// Uniform size-k subset of [0, n), ascending (Floyd's algorithm).
  std::vector<std::size_t> subset(std::size_t n, std::size_t k);

  /// Standard normal via Box-Muller (test/measurement helper).
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace sparselb
