#include "sparselb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sparselb {

std::uint64_t Rng::uniform(std::uint64_t bound) noexcept {
  // Lemire's multiply-shift with rejection of the biased low range.
  unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::vector<std::size_t> Rng::subset(std::size_t n, std::size_t k) {
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  for (std::size_t j = n - k; j < n; ++j) {
    const std::size_t pick = uniform(j + 1);
    const auto it = std::lower_bound(chosen.begin(), chosen.end(), pick);
    if (it != chosen.end() && *it == pick) {
      chosen.insert(std::lower_bound(chosen.begin(), chosen.end(), j), j);
    } else {
      chosen.insert(it, pick);
    }
  }
  return chosen;
}

double Rng::normal() noexcept {
  double u1 = uniform_real();
  while (u1 <= 0.0) u1 = uniform_real();
  const double u2 = uniform_real();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace sparselb
