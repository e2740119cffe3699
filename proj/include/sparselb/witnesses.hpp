#pragma once

// Finite, checkable forms of the sparsity lower-bound arguments. Each search
// either returns a certificate that re-verifies from the raw matrix or
// reports none. Searches are sound but not complete.

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "sparselb/rng.hpp"
#include "sparselb/sparse_matrix.hpp"

namespace sparselb {

/// C = 2 / (1 - 1/sqrt(2)) from the t-type collision bound.
inline const double kTTypeConstant = 2.0 / (1.0 - 1.0 / std::sqrt(2.0));

enum class CertificateKind {
  none,
  incoherence_pair,
  sparsity_lower_bound,
  rip_distortion,
  kernel_witness,
};

std::string_view to_string(CertificateKind kind);

struct NoCertificate {};

/// Two columns whose inner product exceeds the incoherence budget.
struct IncoherencePair {
  std::size_t i = 0;
  std::size_t j = 0;
  double dot = 0.0;
};

/// A group of `group_size` columns sharing a label forces s >= bound_value
/// on any eps-incoherent matrix.
struct SparsityBound {
  std::size_t t = 0;
  std::size_t group_size = 0;
  double bound_value = 0.0;
  /// bound_value = t (N - 1) / denominator.
  double denominator = 1.0;
  std::vector<std::size_t> group;
  /// ||sum of group columns with the shared rows zeroed||^2.
  double residual_mass = 0.0;
};

/// A vector v with ||Av||^2 / ||v||^2 = ratio.
struct RipDistortion {
  RealVector v;
  double ratio = 0.0;
  std::size_t scale = 0;
};

/// A nonzero x with Ax = 0.
struct KernelWitness {
  RealVector x;
  std::size_t i = 0;
  std::size_t j = 0;
};

struct Certificate {
  std::variant<NoCertificate, IncoherencePair, SparsityBound, RipDistortion,
               KernelWitness>
      payload;

  CertificateKind kind() const {
    return static_cast<CertificateKind>(payload.index());
  }
  /// True for the kinds that exhibit a failure of the matrix (pair, RIP
  /// distortion, kernel vector); a sparsity bound is not a violation.
  bool is_violation() const;

  template <class T>
  const T& as() const {
    return std::get<T>(payload);
  }
};

/// Re-checks a certificate against A: pair |dot| recomputes within 1e-12 and
/// exceeds eps; distortion ratio recomputes within 1e-9; kernel vector is
/// nonzero with ||Ax|| <= 1e-12; a bound recomputes from its group.
bool verify_certificate(const Certificate& cert, const SparseMatrix& a,
                        double eps);
bool verify_certificate(const Certificate& cert, const OneSparseMap& a);

/// Looks for a row holding N >= 5/x same-signed entries beyond sqrt(x) for
/// some x >= 2 eps. Any such row forces a pair of its columns to have
/// |dot| > eps; the largest such pair is returned.
Certificate heart_violation_search(const SparseMatrix& a, double eps);

struct TType {
  std::vector<std::size_t> locations;  // ascending
  std::vector<int> signs;              // aligned with locations
  std::vector<std::int64_t> rounded_squares;  // in units of 1/(2s)

  auto operator<=>(const TType&) const = default;
  bool operator==(const TType&) const = default;
};

/// Locations of the t largest |coordinates| (ties toward the lower index),
/// their signs, and their squares rounded to the nearest multiple of
/// 1/(2s), halfway cases rounded down.
TType ttype_of(std::span<const double> v, std::size_t t, std::size_t s);
TType ttype_of(std::span<const Entry> column, std::size_t dimension,
               std::size_t t, std::size_t s);

/// Groups columns by t-type. Requires unit columns and t/s > C eps.
Certificate ttype_collision_certify(const SparseMatrix& a, double eps,
                                    std::size_t t);

/// Canonical: one pattern per column (its t lowest support rows).
/// Exhaustive: every t-subset of the support; needs s <= 8.
enum class PatternSearch { canonical, exhaustive };

inline constexpr std::size_t kExhaustiveSparsityLimit = 8;

/// Sign matrices only (every nonzero is +-1/sqrt(s)); requires t >= 2 eps s.
Certificate sign_pattern_certify(const SparseMatrix& a, double eps,
                                 std::size_t t,
                                 PatternSearch mode = PatternSearch::canonical);

/// Pattern size at scale t: max(ceil(2^{4-t} s / k), 1), capped at s.
std::size_t pattern_size(std::size_t t, std::size_t s, std::size_t k);

struct PatternAtScale {
  std::size_t t = 0;
  std::size_t u = 0;
  std::vector<std::size_t> rows;  // ascending
  std::vector<int> signs;

  auto operator<=>(const PatternAtScale&) const = default;
  bool operator==(const PatternAtScale&) const = default;
};

/// Groups columns by their pattern at each scale and returns the largest
/// ||Av||^2/||v||^2 over the indicator vectors of the largest groups.
Certificate rip_pattern_witness(const SparseMatrix& a, std::size_t k,
                                PatternSearch mode = PatternSearch::canonical);

/// Lexicographically first colliding pair in I, turned into a kernel vector.
Certificate ose_collision_witness(const OneSparseMap& a,
                                  std::span<const std::size_t> indices);

struct OseTrial {
  bool failed = false;
  bool collided = false;
  std::size_t heavy_rows = 0;  // rows with b(j) >= n / (10 m)
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

struct OseFailureReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t collisions = 0;
  double rate = 0.0;
  double mean_heavy_rows = 0.0;
  std::vector<OseTrial> per_trial;
};

/// Monte Carlo over CountSketch maps and uniform coordinate subspaces; a
/// trial fails when the subspace is not preserved within factor 2.
OseFailureReport ose_failure_probability(std::size_t m, std::size_t d,
                                         std::size_t n, std::size_t trials,
                                         RngSeed seed);

/// Serial reference for ose_failure_probability; identical output.
OseFailureReport ose_failure_probability_serial(std::size_t m, std::size_t d,
                                                std::size_t n,
                                                std::size_t trials,
                                                RngSeed seed);

}  // namespace sparselb
