#include "sparselb/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>

#include "sparselb/error.hpp"

namespace sparselb {

std::vector<double> gram_matrix(const SparseMatrix& a,
                                std::span<const std::size_t> support) {
  const std::size_t k = support.size();
  std::vector<double> gram(k * k, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = p; q < k; ++q) {
      const double dot = column_dot(a, support[p], support[q]);
      gram[p * k + q] = dot;
      gram[q * k + p] = dot;
    }
  }
  return gram;
}

GramExtremes symmetric_extremes(std::span<const double> sym, std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::EmptyIndexSet, "empty Gram matrix");
  GramExtremes out;
  if (dim == 1) {
    out.lambda_min = out.lambda_max = sym[0];
    out.vec_min = out.vec_max = RealVector{1.0};
    return out;
  }
  Eigen::MatrixXd m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = sym[i * dim + j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  const auto& values = solver.eigenvalues();  // ascending
  const auto& vectors = solver.eigenvectors();
  out.lambda_min = values(0);
  out.lambda_max = values(dim - 1);
  out.vec_min.assign(vectors.col(0).data(), vectors.col(0).data() + dim);
  out.vec_max.assign(vectors.col(dim - 1).data(),
                     vectors.col(dim - 1).data() + dim);
  return out;
}

GramExtremes gram_extremes(const SparseMatrix& a,
                           std::span<const std::size_t> support) {
  return symmetric_extremes(gram_matrix(a, support), support.size());
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i <= k; ++i) {
    // Exact at every step: result * (n - k + i) is divisible by i.
    result = result * (n - k + i) / i;
    if (result > cap) return cap;
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n,
                                            std::size_t k) {
  std::vector<std::size_t> comb;
  comb.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t candidate = next;; ++candidate) {
      const std::uint64_t block = binomial(n - candidate - 1, k - slot - 1);
      if (rank < block) {
        comb.push_back(candidate);
        next = candidate + 1;
        break;
      }
      rank -= block;
    }
  }
  return comb;
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t slot = k; slot-- > 0;) {
    if (comb[slot] < n - k + slot) {
      ++comb[slot];
      for (std::size_t rest = slot + 1; rest < k; ++rest) {
        comb[rest] = comb[rest - 1] + 1;
      }
      return true;
    }
  }
  return false;
}

}  // namespace sparselb
