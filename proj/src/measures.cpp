#include "sparselb/measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "sparselb/error.hpp"
#include "sparselb/kernels.hpp"
#include "sparselb/linalg.hpp"

namespace sparselb {

void require_unit_columns(const SparseMatrix& a) {
  const auto norms = column_norms(a);
  for (std::size_t j = 0; j < norms.size(); ++j) {
    if (std::abs(norms[j] - 1.0) > kUnitNormTolerance) {
      throw Error(ErrorKind::NotNormalized,
                  "column " + std::to_string(j) + " has norm " +
                      std::to_string(norms[j]));
    }
  }
}

double coherence(const SparseMatrix& a) {
  if (a.cols() < 2) throw Error(ErrorKind::TooFewColumns, "need n >= 2");
  require_unit_columns(a);
  return std::abs(kernels::parallel::max_abs_column_dot(a).dot);
}

RipEstimate rip_constant_exact(const SparseMatrix& a, std::size_t k) {
  if (k < 1 || k > a.cols()) {
    throw Error(ErrorKind::BadArgs, "need 1 <= k <= n");
  }
  const std::uint64_t supports = binomial(a.cols(), k);
  if (supports > kMaxRipSupports) {
    throw Error(ErrorKind::TooManySupports,
                "C(" + std::to_string(a.cols()) + ", " + std::to_string(k) +
                    ") supports exceeds the enumeration guard");
  }
  auto worst = kernels::parallel::rip_scan(a, k);
  return {k, worst.delta, RipMode::exact, std::move(worst.support),
          std::move(worst.direction)};
}

RipEstimate rip_constant_lower_estimate(const SparseMatrix& a, std::size_t k,
                                        std::size_t trials, RngSeed seed) {
  if (k < 1 || k > a.cols() || trials < 1) {
    throw Error(ErrorKind::BadArgs, "need 1 <= k <= n and trials >= 1");
  }
  RipEstimate best{k, -1.0, RipMode::lower_estimate, {}, {}};
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::stream(seed, trial);
    const auto support = rng.subset(a.cols(), k);
    GramExtremes g = gram_extremes(a, support);
    const double over = g.lambda_max - 1.0;
    const double under = 1.0 - g.lambda_min;
    const double delta = std::max(over, under);
    if (delta > best.delta) {
      best.delta = delta;
      best.worst_support = support;
      best.worst_direction = over >= under ? std::move(g.vec_max)
                                           : std::move(g.vec_min);
    }
  }
  return best;
}

namespace {

SingularRange from_gram(std::span<const double> gram, std::size_t dim) {
  const GramExtremes g = symmetric_extremes(gram, dim);
  return {std::sqrt(std::max(g.lambda_min, 0.0)),
          std::sqrt(std::max(g.lambda_max, 0.0))};
}

void require_distinct(std::span<const std::size_t> indices, std::size_t n) {
  if (indices.empty()) throw Error(ErrorKind::EmptyIndexSet, "I is empty");
  std::set<std::size_t> seen;
  for (std::size_t i : indices) {
    if (i >= n) {
      throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i));
    }
    if (!seen.insert(i).second) {
      throw Error(ErrorKind::BadArgs, "repeated index " + std::to_string(i));
    }
  }
}

}  // namespace

SingularRange subspace_distortion(const SparseMatrix& a,
                                  std::span<const std::size_t> indices) {
  require_distinct(indices, a.cols());
  return from_gram(gram_matrix(a, indices), indices.size());
}

SingularRange subspace_distortion(const OneSparseMap& a,
                                  std::span<const std::size_t> indices) {
  require_distinct(indices, a.cols);
  const std::size_t d = indices.size();
  std::vector<double> gram(d * d, 0.0);
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = 0; q < d; ++q) {
      const std::size_t i = indices[p];
      const std::size_t j = indices[q];
      if (a.a[i] == a.a[j]) gram[p * d + q] = a.sigma[i] * a.sigma[j];
    }
  }
  return from_gram(gram, d);
}

RowMassProfile row_mass_profile(const SparseMatrix& a, double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorKind::NonpositiveThreshold, "x must be positive");
  }
  RowMassProfile profile;
  profile.x = x;
  profile.limit = 5.0 / x;
  profile.per_row.assign(a.rows(), {});
  const double root = std::sqrt(x);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (const Entry& e : a.column(j)) {
      if (e.value > root) ++profile.per_row[e.row].count_pos;
      if (e.value < -root) ++profile.per_row[e.row].count_neg;
    }
  }
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto& c = profile.per_row[r];
    if (static_cast<double>(c.count_pos) >= profile.limit ||
        static_cast<double>(c.count_neg) >= profile.limit) {
      profile.flagged_rows.push_back(r);
    }
  }
  return profile;
}

double scale_threshold(std::size_t t, std::size_t s) {
  return std::pow(2.0, (static_cast<double>(t) - 3.0) / 2.0) /
         std::sqrt(static_cast<double>(s));
}

double scale_required_count(std::size_t t, std::size_t s) {
  const double td = static_cast<double>(t);
  return std::pow(2.0, -td - 1.0) * static_cast<double>(s) / (td * td);
}

std::size_t max_scale(std::size_t s) {
  std::size_t t = 0;
  while ((std::size_t{1} << t) < s) ++t;  // ceil(log2 s)
  return std::max<std::size_t>(t, 1);
}

ScaleProfile scale_profile(const SparseMatrix& a, std::size_t column) {
  if (column >= a.cols()) {
    throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(column));
  }
  const auto col = a.column(column);
  const std::size_t s = col.size();
  if (s == 0) {
    throw Error(ErrorKind::NoScaleFound,
                "column " + std::to_string(column) + " is empty");
  }
  for (std::size_t t = 1; t <= max_scale(s); ++t) {
    const double threshold = scale_threshold(t, s);
    const double required = scale_required_count(t, s);
    const auto count = static_cast<std::size_t>(
        std::count_if(col.begin(), col.end(), [&](const Entry& e) {
          return std::abs(e.value) >= threshold;
        }));
    if (static_cast<double>(count) >= required) {
      return {column, t, threshold, required, count};
    }
  }
  throw Error(ErrorKind::NoScaleFound,
              "column " + std::to_string(column) + " has no qualifying scale");
}

}  // namespace sparselb
