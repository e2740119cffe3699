#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparselb/rng.hpp"
#include "sparselb/sparse_matrix.hpp"

namespace sparselb {

/// Tolerance on column norms for operations that require unit columns.
inline constexpr double kUnitNormTolerance = 1e-9;

/// Throws NotNormalized(index) for the first column whose norm is off 1.
void require_unit_columns(const SparseMatrix& a);

/// Largest |<v_i, v_j>| over i < j. Requires unit columns and n >= 2.
double coherence(const SparseMatrix& a);

enum class RipMode { exact, lower_estimate };

struct RipEstimate {
  std::size_t k = 0;
  double delta = 0.0;
  RipMode mode = RipMode::exact;
  std::vector<std::size_t> worst_support;
  /// Unit vector on worst_support with ||A_S w||^2 = 1 +- delta.
  RealVector worst_direction;
};

/// Enumeration guard for rip_constant_exact.
inline constexpr std::uint64_t kMaxRipSupports = 1'000'000;

/// delta_k = max over |S| = k of max(sigma_max(A_S)^2 - 1, 1 - sigma_min(A_S)^2).
/// Throws TooManySupports when C(n, k) exceeds kMaxRipSupports.
RipEstimate rip_constant_exact(const SparseMatrix& a, std::size_t k);

/// Same objective maximised over `trials` uniform supports; trial i draws
/// from stream (seed, i), so a longer run extends a shorter one.
RipEstimate rip_constant_lower_estimate(const SparseMatrix& a, std::size_t k,
                                        std::size_t trials, RngSeed seed);

struct SingularRange {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

/// Extremal singular values of the column submatrix A_I.
SingularRange subspace_distortion(const SparseMatrix& a,
                                  std::span<const std::size_t> indices);
SingularRange subspace_distortion(const OneSparseMap& a,
                                  std::span<const std::size_t> indices);

struct RowCounts {
  std::size_t count_pos = 0;  // entries >  sqrt(x)
  std::size_t count_neg = 0;  // entries < -sqrt(x)
};

struct RowMassProfile {
  double x = 0.0;
  double limit = 0.0;  // 5 / x
  std::vector<RowCounts> per_row;
  std::vector<std::size_t> flagged_rows;
};

/// Per-row counts of same-signed entries beyond sqrt(x) in magnitude; a row
/// is flagged when either count reaches 5/x. Throws NonpositiveThreshold.
RowMassProfile row_mass_profile(const SparseMatrix& a, double x);

struct ScaleProfile {
  std::size_t column = 0;
  std::size_t t = 0;
  double threshold = 0.0;       // 2^{(t-3)/2} / sqrt(s)
  double required_count = 0.0;  // 2^{-t-1} s / t^2
  std::size_t actual_count = 0; // entries with |a| >= threshold
};

double scale_threshold(std::size_t t, std::size_t s);
double scale_required_count(std::size_t t, std::size_t s);
/// Largest scale examined: max(1, ceil(log2 s)).
std::size_t max_scale(std::size_t s);

/// Smallest t in 1..max_scale(s) whose count condition holds, s being the
/// column's nonzero count. Throws NoScaleFound if none does (the column
/// carries too little mass; norm >= sqrt(1/4 + pi^2/48) always succeeds).
ScaleProfile scale_profile(const SparseMatrix& a, std::size_t column);

}  // namespace sparselb
