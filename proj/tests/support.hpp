#pragma once

// Test oracles and generators. Everything here is written independently of
// the library code paths it is used to check.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sparselb/constructions.hpp"
#include "sparselb/error.hpp"
#include "sparselb/sparse_matrix.hpp"

#define CHECK_THROWS_KIND(expr, expected_kind)                   \
  do {                                                           \
    bool caught_ = false;                                        \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const ::sparselb::Error& e_) {                      \
      caught_ = true;                                            \
      CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what());    \
    }                                                            \
    CHECK_MESSAGE(caught_, "expected an exception: " #expr);     \
  } while (0)

namespace oracle {

using Dense = std::vector<std::vector<double>>;  // [row][col]

inline Dense dense(const sparselb::SparseMatrix& a) {
  Dense d(a.rows(), std::vector<double>(a.cols(), 0.0));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (const auto& e : a.column(j)) d[e.row][j] = e.value;
  }
  return d;
}

inline std::vector<double> dense_apply(const Dense& d, const std::vector<double>& x) {
  std::vector<double> y(d.size(), 0.0);
  for (std::size_t r = 0; r < d.size(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) y[r] += d[r][c] * x[c];
  }
  return y;
}

inline double dense_col_dot(const Dense& d, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (const auto& row : d) s += row[i] * row[j];
  return s;
}

inline double dense_coherence(const Dense& d) {
  const std::size_t n = d.empty() ? 0 : d[0].size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      best = std::max(best, std::abs(dense_col_dot(d, i, j)));
    }
  }
  return best;
}

inline std::size_t agreements(const std::vector<std::uint32_t>& u,
                              const std::vector<std::uint32_t>& v) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < u.size(); ++k) c += u[k] == v[k] ? 1 : 0;
  return c;
}

inline std::size_t max_agreement(const sparselb::Code& code) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < code.words.size(); ++i) {
    for (std::size_t j = i + 1; j < code.words.size(); ++j) {
      best = std::max(best, agreements(code.words[i], code.words[j]));
    }
  }
  return best;
}

/// Probability that d uniform keys into m bins all land in distinct bins.
inline double no_collision_probability(std::size_t d, std::size_t m) {
  double p = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    p *= 1.0 - static_cast<double>(i) / static_cast<double>(m);
  }
  return p;
}

inline double binom(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

/// Extremal eigenvalues of a small symmetric matrix by cyclic Jacobi.
inline std::pair<double, double> jacobi_extremes(Dense g) {
  const std::size_t n = g.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += g[p][q] * g[p][q];
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(g[p][q]) < 1e-300) continue;
        const double theta = (g[q][q] - g[p][p]) / (2.0 * g[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double gkp = g[k][p];
          const double gkq = g[k][q];
          g[k][p] = c * gkp - s * gkq;
          g[k][q] = s * gkp + c * gkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double gpk = g[p][k];
          const double gqk = g[q][k];
          g[p][k] = c * gpk - s * gqk;
          g[q][k] = s * gpk + c * gqk;
        }
      }
    }
  }
  double lo = g[0][0];
  double hi = g[0][0];
  for (std::size_t i = 1; i < n; ++i) {
    lo = std::min(lo, g[i][i]);
    hi = std::max(hi, g[i][i]);
  }
  return {lo, hi};
}

/// Brute-force delta_k via Jacobi on every k-subset (recursive enumeration).
inline double brute_rip(const sparselb::SparseMatrix& a, std::size_t k) {
  const Dense d = dense(a);
  const std::size_t n = a.cols();
  double best = 0.0;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == k) {
      Dense g(k, std::vector<double>(k));
      for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < k; ++y) g[x][y] = dense_col_dot(d, pick[x], pick[y]);
      }
      const auto [lo, hi] = jacobi_extremes(g);
      best = std::max({best, hi - 1.0, 1.0 - lo});
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      pick.push_back(c);
      self(self, c + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace oracle

namespace gen {

/// Hand-rolled generators driven by std::mt19937_64 so that test inputs do
/// not share the library's RNG.
struct Gen {
  std::mt19937_64 eng;
  explicit Gen(std::uint64_t seed) : eng(seed) {}

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
  }
  int sign() { return size(0, 1) == 0 ? -1 : 1; }

  std::vector<double> vec(std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = real(lo, hi);
    return v;
  }

  /// Random m x n matrix with up to `s` nonzeros per column.
  sparselb::SparseMatrix matrix(std::size_t m, std::size_t n, std::size_t s) {
    std::vector<std::vector<sparselb::Entry>> cols(n);
    for (auto& col : cols) {
      std::vector<std::size_t> rows(m);
      for (std::size_t r = 0; r < m; ++r) rows[r] = r;
      std::shuffle(rows.begin(), rows.end(), eng);
      const std::size_t nnz = size(1, std::min(s, m));
      for (std::size_t k = 0; k < nnz; ++k) col.push_back({rows[k], real(-1.0, 1.0)});
    }
    return {m, n, std::move(cols)};
  }

  /// Random code by plain rejection; words may agree arbitrarily.
  sparselb::Code code(std::size_t q, std::size_t t, std::size_t count) {
    REQUIRE(std::pow(double(q), double(t)) >= double(count));
    sparselb::Code c{q, t, {}};
    while (c.words.size() < count) {
      std::vector<std::uint32_t> w(t);
      for (auto& x : w) x = static_cast<std::uint32_t>(size(0, q - 1));
      if (std::find(c.words.begin(), c.words.end(), w) == c.words.end()) {
        c.words.push_back(std::move(w));
      }
    }
    return c;
  }
};

}  // namespace gen
