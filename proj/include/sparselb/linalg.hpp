#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparselb/sparse_matrix.hpp"

namespace sparselb {

/// Extremal eigenpairs of the Gram matrix of a column subset, i.e. the
/// squared extremal singular values of A_S.
struct GramExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  RealVector vec_min;  // unit eigenvector, indexed like the support
  RealVector vec_max;
};

/// Gram matrix of columns `support` (|S| x |S|, row-major).
std::vector<double> gram_matrix(const SparseMatrix& a,
                                std::span<const std::size_t> support);

/// Symmetric eigensolve of a small dense matrix (row-major, dim x dim).
GramExtremes symmetric_extremes(std::span<const double> sym, std::size_t dim);

GramExtremes gram_extremes(const SparseMatrix& a,
                           std::span<const std::size_t> support);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// The combination of lexicographic rank `rank` among k-subsets of [0, n).
std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n,
                                            std::size_t k);

/// Advances to the lexicographically next k-subset; false after the last.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n);

}  // namespace sparselb
