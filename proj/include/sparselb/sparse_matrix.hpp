#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sparselb {

using RealVector = std::vector<double>;

struct Entry {
  std::size_t row = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Column-major (CSC) sparse real matrix. Rows within a column are strictly
/// increasing and no stored value is zero; both are enforced on
/// construction. Indices are 0-based.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Builds from per-column entry lists. Entries may arrive in any row
  /// order; explicit zeros are dropped. Throws IndexOutOfRange for a row
  /// outside [0, rows), InvalidEntry for a duplicate row or a non-finite
  /// value, DimensionMismatch when columns.size() != cols.
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::vector<Entry>> columns);

  /// Dense row-major input; zeros are not stored.
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols,
                                 std::span<const double> row_major);
  static SparseMatrix identity(std::size_t n, double scale = 1.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  std::span<const Entry> column(std::size_t j) const {
    return {entries_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
  }
  std::size_t column_nonzeros(std::size_t j) const {
    return offsets_[j + 1] - offsets_[j];
  }

  /// Column j expanded to length rows().
  RealVector dense_column(std::size_t j) const;
  /// Row-major dense copy (tests and small oracles only).
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Entry> entries_;
};

/// The column-sparsity-1 representation: column i has its single entry
/// sigma[i] in row a[i].
struct OneSparseMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> a;
  std::vector<std::int8_t> sigma;

  /// Throws IndexOutOfRange / InvalidEntry / DimensionMismatch on a
  /// malformed map.
  void validate() const;
  SparseMatrix to_sparse() const;
  /// b(j): number of columns landing in row j.
  std::vector<std::size_t> row_loads() const;
  /// Exact application to an integer vector.
  std::vector<std::int64_t> apply_exact(std::span<const std::int64_t> x) const;

  friend bool operator==(const OneSparseMap&, const OneSparseMap&) = default;
};

std::vector<double> column_norms(const SparseMatrix& a);

/// Throws ZeroColumn(index) when a column has no entries.
SparseMatrix normalize_columns(const SparseMatrix& a);

/// Ax. Only columns where x is nonzero are visited.
RealVector apply(const SparseMatrix& a, std::span<const double> x);
RealVector apply(const OneSparseMap& a, std::span<const double> x);

/// sketch + v * (column i of A); touches only column i's entries.
RealVector stream_update(std::span<const double> sketch, const SparseMatrix& a,
                         std::size_t i, double v);

/// In-place form of stream_update. Returns the number of sketch entries
/// touched, which is the column's nonzero count.
std::size_t stream_update_in_place(std::span<double> sketch,
                                   const SparseMatrix& a, std::size_t i,
                                   double v);

std::size_t column_sparsity(const SparseMatrix& a);

/// Sparse dot product of columns i and j.
double column_dot(const SparseMatrix& a, std::size_t i, std::size_t j);

double squared_norm(std::span<const double> x);

}  // namespace sparselb
