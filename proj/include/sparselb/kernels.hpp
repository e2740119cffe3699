#pragma once

// Data-parallel kernels. Each kernel has a straightforward serial reference
// in `kernels::serial` and an OpenMP version in `kernels::parallel`; the two
// must agree bit-for-bit (ties are broken by index, never by completion
// order). The public API in measures/constructions/witnesses calls the
// parallel versions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "sparselb/sparse_matrix.hpp"

namespace sparselb::kernels {

/// Maximum-|dot| column pair; lexicographically first (i, j) on ties.
struct PairDot {
  std::size_t i = 0;
  std::size_t j = 0;
  double dot = 0.0;

  friend bool operator==(const PairDot&, const PairDot&) = default;
};

/// Worst support found by an RIP scan. `rank` is the lexicographic rank of
/// the support among k-subsets of [0, n).
struct SupportWorst {
  double delta = 0.0;
  std::uint64_t rank = 0;
  std::vector<std::size_t> support;
  RealVector direction;  // unit vector indexed like `support`
  double ratio = 1.0;    // ||A_S direction||^2

  friend bool operator==(const SupportWorst&, const SupportWorst&) = default;
};

/// Codewords laid out row-major: N words of length t.
struct WordTable {
  std::span<const std::uint32_t> symbols;
  std::size_t length = 0;

  std::size_t size() const { return length == 0 ? 0 : symbols.size() / length; }
};

namespace serial {

PairDot max_abs_column_dot(const SparseMatrix& a);
std::size_t max_agreement(WordTable words);
/// Exhaustive scan of all k-subsets in lexicographic order.
SupportWorst rip_scan(const SparseMatrix& a, std::size_t k);

template <class Fn>
auto map_index(std::size_t n, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

}  // namespace serial

namespace parallel {

PairDot max_abs_column_dot(const SparseMatrix& a);
std::size_t max_agreement(WordTable words);
SupportWorst rip_scan(const SparseMatrix& a, std::size_t k);

/// out[i] = fn(i) with iterations spread over OpenMP threads. fn must be
/// safe to call concurrently for distinct i.
template <class Fn>
auto map_index(std::size_t n, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace parallel

/// Degree of parallelism available to the parallel kernels.
int thread_count();

}  // namespace sparselb::kernels
