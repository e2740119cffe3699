#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "sparselb/rng.hpp"
#include "sparselb/sparse_matrix.hpp"

namespace sparselb {

/// q-ary block code of length t. Codewords are distinct; symbols < q.
struct Code {
  std::size_t q = 2;
  std::size_t t = 1;
  std::vector<std::vector<std::uint32_t>> words;

  std::size_t size() const { return words.size(); }
  /// Throws InvalidEntry for a bad symbol, length or duplicate word.
  void validate() const;
  /// Row-major copy of all symbols, N * t values.
  std::vector<std::uint32_t> flat() const;

  friend bool operator==(const Code&, const Code&) = default;
};

/// Each codeword becomes a column with one 1/sqrt(t) per chunk of q rows,
/// at offset (C_i)_j inside chunk j. Result is (q*t) x N, unit columns.
SparseMatrix code_to_incoherent(const Code& code);

/// Greedy random code: i.i.d. uniform words, each rejected and redrawn while
/// it agrees with an accepted word in more than floor(eps*t) positions.
/// Throws Exhausted when a word cannot be placed within max_attempts draws.
Code random_code(std::size_t q, std::size_t t, std::size_t count, double eps,
                 RngSeed seed, std::size_t max_attempts = 10000);

/// floor(eps * t), tolerant of eps*t landing a hair below an integer.
std::size_t agreement_limit(double eps, std::size_t t);

/// Maximum number of positions on which two distinct codewords agree.
/// Throws TooFewWords when N < 2.
std::size_t code_max_agreement(const Code& code);

/// Each column: s distinct uniform rows, independent uniform signs,
/// values +-1/sqrt(s). Throws InvalidSparsity unless 1 <= s <= m.
SparseMatrix sample_sparse_sign_jl(std::size_t m, std::size_t n, std::size_t s,
                                   RngSeed seed);

/// Rows split into s contiguous blocks of m/s; each column takes one
/// uniform row per block with an independent sign. Throws NotDivisible
/// unless s divides m.
SparseMatrix sample_osnap_block(std::size_t m, std::size_t n, std::size_t s,
                                RngSeed seed);

enum class Sampler { sign_jl, block };

Sampler parse_sampler(std::string_view name);
std::string_view to_string(Sampler sampler);

struct OsnapReport {
  double expectation = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// Exact E prod_{(i,j) in S} delta_{i,j} by enumerating every support the
/// sampler can give each column involved. Throws TooLarge when |S| > 6 or
/// m > 16, IndexOutOfRange for a cell outside [m] x [n].
OsnapReport verify_osnap_properties(
    std::size_t m, std::size_t n, std::size_t s, Sampler sampler,
    const std::vector<std::pair<std::size_t, std::size_t>>& cells);

/// a(i) uniform on [m], sigma(i) uniform +-1, independently per column.
OneSparseMap sample_countsketch(std::size_t m, std::size_t n, RngSeed seed);

/// The spread vectors of a code with t = k/2 and q = 2n/k: vector i has
/// sqrt(2/k) at 2jn/k + (C_i)_j. Throws ShapeMismatch on inconsistent
/// parameters.
std::vector<RealVector> spread_vectors(const Code& code, std::size_t n,
                                       std::size_t k);

/// Uniform d-subset of [n], ascending. Throws InvalidDimension if d > n.
std::vector<std::size_t> sample_coordinate_subspace(std::size_t n,
                                                    std::size_t d, RngSeed seed);

}  // namespace sparselb
