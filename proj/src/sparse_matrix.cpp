#include "sparselb/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparselb/error.hpp"

namespace sparselb {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::vector<Entry>> columns)
    : rows_(rows), cols_(cols) {
  if (columns.size() != cols) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(cols) + " columns, got " +
                    std::to_string(columns.size()));
  }
  offsets_.reserve(cols + 1);
  for (std::size_t j = 0; j < cols; ++j) {
    auto& col = columns[j];
    std::sort(col.begin(), col.end(),
              [](const Entry& x, const Entry& y) { return x.row < y.row; });
    for (std::size_t e = 0; e < col.size(); ++e) {
      const Entry& entry = col[e];
      if (entry.row >= rows) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "row " + std::to_string(entry.row) + " in column " +
                        std::to_string(j));
      }
      if (!std::isfinite(entry.value)) {
        throw Error(ErrorKind::InvalidEntry,
                    "non-finite value in column " + std::to_string(j));
      }
      if (e > 0 && col[e - 1].row == entry.row) {
        throw Error(ErrorKind::InvalidEntry,
                    "duplicate row " + std::to_string(entry.row) +
                        " in column " + std::to_string(j));
      }
      if (entry.value != 0.0) entries_.push_back(entry);
    }
    offsets_.push_back(entries_.size());
  }
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols,
                                      std::span<const double> row_major) {
  if (row_major.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "dense buffer size");
  }
  std::vector<std::vector<Entry>> columns(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = row_major[i * cols + j];
      if (v != 0.0) columns[j].push_back({i, v});
    }
  }
  return {rows, cols, std::move(columns)};
}

SparseMatrix SparseMatrix::identity(std::size_t n, double scale) {
  std::vector<std::vector<Entry>> columns(n);
  for (std::size_t j = 0; j < n; ++j) columns[j].push_back({j, scale});
  return {n, n, std::move(columns)};
}

RealVector SparseMatrix::dense_column(std::size_t j) const {
  RealVector out(rows_, 0.0);
  for (const Entry& e : column(j)) out[e.row] = e.value;
  return out;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> out(rows_ * cols_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (const Entry& e : column(j)) out[e.row * cols_ + j] = e.value;
  }
  return out;
}

void OneSparseMap::validate() const {
  if (a.size() != cols || sigma.size() != cols) {
    throw Error(ErrorKind::DimensionMismatch, "a/sigma length must equal n");
  }
  for (std::size_t i = 0; i < cols; ++i) {
    if (a[i] >= rows) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "a(" + std::to_string(i) + ") = " + std::to_string(a[i]));
    }
    if (sigma[i] != 1 && sigma[i] != -1) {
      throw Error(ErrorKind::InvalidEntry,
                  "sigma(" + std::to_string(i) + ") must be +1 or -1");
    }
  }
}

SparseMatrix OneSparseMap::to_sparse() const {
  std::vector<std::vector<Entry>> columns(cols);
  for (std::size_t i = 0; i < cols; ++i) {
    columns[i].push_back({a[i], static_cast<double>(sigma[i])});
  }
  return {rows, cols, std::move(columns)};
}

std::vector<std::size_t> OneSparseMap::row_loads() const {
  std::vector<std::size_t> b(rows, 0);
  for (std::size_t row : a) ++b[row];
  return b;
}

std::vector<std::int64_t> OneSparseMap::apply_exact(
    std::span<const std::int64_t> x) const {
  if (x.size() != cols) {
    throw Error(ErrorKind::DimensionMismatch, "x has wrong dimension");
  }
  std::vector<std::int64_t> y(rows, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    if (x[i] != 0) y[a[i]] += sigma[i] * x[i];
  }
  return y;
}

std::vector<double> column_norms(const SparseMatrix& a) {
  std::vector<double> norms(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double sum = 0.0;
    for (const Entry& e : a.column(j)) sum += e.value * e.value;
    norms[j] = std::sqrt(sum);
  }
  return norms;
}

SparseMatrix normalize_columns(const SparseMatrix& a) {
  const auto norms = column_norms(a);
  std::vector<std::vector<Entry>> columns(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (a.column_nonzeros(j) == 0) {
      throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j));
    }
    const auto col = a.column(j);
    columns[j].reserve(col.size());
    if (norms[j] == 1.0) {
      columns[j].assign(col.begin(), col.end());
      continue;
    }
    for (const Entry& e : col) columns[j].push_back({e.row, e.value / norms[j]});
  }
  return {a.rows(), a.cols(), std::move(columns)};
}

RealVector apply(const SparseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "x has dimension " + std::to_string(x.size()) + ", expected " +
                    std::to_string(a.cols()));
  }
  RealVector y(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (x[j] == 0.0) continue;
    for (const Entry& e : a.column(j)) y[e.row] += e.value * x[j];
  }
  return y;
}

RealVector apply(const OneSparseMap& a, std::span<const double> x) {
  if (x.size() != a.cols) {
    throw Error(ErrorKind::DimensionMismatch, "x has wrong dimension");
  }
  RealVector y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.cols; ++i) {
    if (x[i] != 0.0) y[a.a[i]] += a.sigma[i] * x[i];
  }
  return y;
}

std::size_t stream_update_in_place(std::span<double> sketch,
                                   const SparseMatrix& a, std::size_t i,
                                   double v) {
  if (i >= a.cols()) {
    throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(i));
  }
  if (sketch.size() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "sketch dimension");
  }
  const auto col = a.column(i);
  for (const Entry& e : col) sketch[e.row] += v * e.value;
  return col.size();
}

RealVector stream_update(std::span<const double> sketch, const SparseMatrix& a,
                         std::size_t i, double v) {
  RealVector out(sketch.begin(), sketch.end());
  stream_update_in_place(out, a, i, v);
  return out;
}

std::size_t column_sparsity(const SparseMatrix& a) {
  std::size_t s = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    s = std::max(s, a.column_nonzeros(j));
  }
  return s;
}

double column_dot(const SparseMatrix& a, std::size_t i, std::size_t j) {
  const auto x = a.column(i);
  const auto y = a.column(j);
  double dot = 0.0;
  std::size_t p = 0, q = 0;
  while (p < x.size() && q < y.size()) {
    if (x[p].row < y[q].row) {
      ++p;
    } else if (y[q].row < x[p].row) {
      ++q;
    } else {
      dot += x[p++].value * y[q++].value;
    }
  }
  return dot;
}

double squared_norm(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return sum;
}

}  // namespace sparselb
