#include "sparselb/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sparselb/linalg.hpp"

namespace sparselb::kernels {
namespace {

bool better_pair(const PairDot& cand, const PairDot& best) {
  const double c = std::abs(cand.dot);
  const double b = std::abs(best.dot);
  if (c != b) return c > b;
  return cand.i != best.i ? cand.i < best.i : cand.j < best.j;
}

bool better_support(const SupportWorst& cand, const SupportWorst& best) {
  if (cand.delta != best.delta) return cand.delta > best.delta;
  return cand.rank < best.rank;
}

SupportWorst evaluate_support(const SparseMatrix& a,
                              const std::vector<std::size_t>& support,
                              std::uint64_t rank) {
  GramExtremes g = gram_extremes(a, support);
  SupportWorst w;
  w.rank = rank;
  w.support = support;
  const double over = g.lambda_max - 1.0;
  const double under = 1.0 - g.lambda_min;
  if (over >= under) {
    w.delta = over;
    w.ratio = g.lambda_max;
    w.direction = std::move(g.vec_max);
  } else {
    w.delta = under;
    w.ratio = g.lambda_min;
    w.direction = std::move(g.vec_min);
  }
  return w;
}

// Cheap pre-check so only improving supports pay for the eigenvector copy.
double support_delta(const SparseMatrix& a,
                     const std::vector<std::size_t>& support) {
  const GramExtremes g = gram_extremes(a, support);
  return std::max(g.lambda_max - 1.0, 1.0 - g.lambda_min);
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

PairDot max_abs_column_dot(const SparseMatrix& a) {
  PairDot best{0, 1, 0.0};
  bool first = true;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const PairDot cand{i, j, column_dot(a, i, j)};
      if (first || better_pair(cand, best)) {
        best = cand;
        first = false;
      }
    }
  }
  return best;
}

std::size_t max_agreement(WordTable words) {
  const std::size_t n = words.size();
  const std::size_t t = words.length;
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t agree = 0;
      for (std::size_t p = 0; p < t; ++p) {
        agree += words.symbols[i * t + p] == words.symbols[j * t + p];
      }
      best = std::max(best, agree);
    }
  }
  return best;
}

SupportWorst rip_scan(const SparseMatrix& a, std::size_t k) {
  std::vector<std::size_t> comb(k);
  for (std::size_t p = 0; p < k; ++p) comb[p] = p;
  SupportWorst best = evaluate_support(a, comb, 0);
  std::uint64_t rank = 0;
  while (next_combination(comb, a.cols())) {
    ++rank;
    SupportWorst cand = evaluate_support(a, comb, rank);
    if (better_support(cand, best)) best = std::move(cand);
  }
  return best;
}

}  // namespace serial

namespace parallel {

PairDot max_abs_column_dot(const SparseMatrix& a) {
  const std::size_t n = a.cols();
  PairDot global{0, 1, 0.0};
  bool have_global = false;
#pragma omp parallel
  {
    std::vector<double> scatter(a.rows(), 0.0);
    PairDot local{0, 1, 0.0};
    bool have_local = false;
#pragma omp for schedule(dynamic, 8) nowait
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(n); ++si) {
      const auto i = static_cast<std::size_t>(si);
      for (const Entry& e : a.column(i)) scatter[e.row] = e.value;
      for (std::size_t j = i + 1; j < n; ++j) {
        double dot = 0.0;
        for (const Entry& e : a.column(j)) {
          const double x = scatter[e.row];
          if (x != 0.0) dot += x * e.value;
        }
        const PairDot cand{i, j, dot};
        if (!have_local || better_pair(cand, local)) {
          local = cand;
          have_local = true;
        }
      }
      for (const Entry& e : a.column(i)) scatter[e.row] = 0.0;
    }
#pragma omp critical(sparselb_pair_merge)
    if (have_local && (!have_global || better_pair(local, global))) {
      global = local;
      have_global = true;
    }
  }
  return global;
}

std::size_t max_agreement(WordTable words) {
  const auto n = static_cast<std::int64_t>(words.size());
  const std::size_t t = words.length;
  std::size_t best = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
  for (std::int64_t si = 0; si < n; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(n); ++j) {
      std::size_t agree = 0;
      for (std::size_t p = 0; p < t; ++p) {
        agree += words.symbols[i * t + p] == words.symbols[j * t + p];
      }
      best = std::max(best, agree);
    }
  }
  return best;
}

SupportWorst rip_scan(const SparseMatrix& a, std::size_t k) {
  const std::size_t n = a.cols();
  const std::uint64_t total = binomial(n, k);
  constexpr std::uint64_t chunk = 512;
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);

  SupportWorst global;
  bool have_global = false;
#pragma omp parallel
  {
    SupportWorst local;
    bool have_local = false;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t hi = std::min(total, lo + chunk);
      std::vector<std::size_t> comb = unrank_combination(lo, n, k);
      for (std::uint64_t rank = lo; rank < hi; ++rank) {
        if (rank != lo) next_combination(comb, n);
        const double delta = support_delta(a, comb);
        if (!have_local || delta > local.delta ||
            (delta == local.delta && rank < local.rank)) {
          local = evaluate_support(a, comb, rank);
          have_local = true;
        }
      }
    }
#pragma omp critical(sparselb_support_merge)
    if (have_local && (!have_global || better_support(local, global))) {
      global = std::move(local);
      have_global = true;
    }
  }
  return global;
}

}  // namespace parallel
}  // namespace sparselb::kernels
