#include <cmath>
#include <numbers>

#include "sparselb/linalg.hpp"
#include "sparselb/measures.hpp"
#include "support.hpp"

using namespace sparselb;

namespace {

SparseMatrix two_by_three() {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<double> dense{1, 0, h, 0, 1, h};
  return SparseMatrix::from_dense(2, 3, dense);
}

SparseMatrix duplicate_columns(std::size_t n, std::size_t m = 1) {
  std::vector<std::vector<Entry>> cols(n, std::vector<Entry>{{0, 1.0}});
  return {m, n, std::move(cols)};
}

SparseMatrix single_column(const std::vector<double>& values) {
  std::vector<Entry> col;
  for (std::size_t r = 0; r < values.size(); ++r) col.push_back({r, values[r]});
  return {values.size(), 1, {col}};
}

void check_achieving_direction(const SparseMatrix& a, const RipEstimate& r) {
  REQUIRE(r.worst_support.size() == r.worst_direction.size());
  RealVector x(a.cols(), 0.0);
  for (std::size_t i = 0; i < r.worst_support.size(); ++i) {
    x[r.worst_support[i]] = r.worst_direction[i];
  }
  const double ratio = squared_norm(sparselb::apply(a, x)) / squared_norm(x);
  const bool upper = std::abs(ratio - (1.0 + r.delta)) <= 1e-9;
  const bool lower = std::abs(ratio - (1.0 - r.delta)) <= 1e-9;
  CHECK((upper || lower));
}

}  // namespace

TEST_CASE("coherence examples") {
  CHECK(coherence(SparseMatrix::identity(5)) == 0.0);
  const double h = 1.0 / std::sqrt(2.0);
  const SparseMatrix a(2, 2, {{{0, 1.0}}, {{0, h}, {1, h}}});
  CHECK(coherence(a) == doctest::Approx(h).epsilon(1e-15));

  const Code code{4, 3, {{0, 1, 2}, {0, 1, 3}, {2, 2, 2}}};
  CHECK(coherence(code_to_incoherent(code)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_KIND(coherence(SparseMatrix::identity(1)), ErrorKind::TooFewColumns);
  CHECK_THROWS_KIND(coherence(SparseMatrix::identity(3, 2.0)), ErrorKind::NotNormalized);
}

TEST_CASE("coherence matches the dense oracle on random unit-column matrices") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    gen::Gen g(seed);
    const auto a = normalize_columns(g.matrix(g.size(2, 12), g.size(2, 25), 4));
    CHECK(coherence(a) == doctest::Approx(oracle::dense_coherence(oracle::dense(a))).epsilon(1e-13));
  }
}

TEST_CASE("rip_constant_exact examples") {
  const auto id = rip_constant_exact(SparseMatrix::identity(6), 2);
  CHECK(id.delta == 0.0);
  CHECK(id.mode == RipMode::exact);

  const auto r = rip_constant_exact(two_by_three(), 2);
  CHECK(std::abs(r.delta - 1.0 / std::sqrt(2.0)) <= 1e-9);
  check_achieving_direction(two_by_three(), r);

  const SparseMatrix dup(3, 3, {{{0, 0.6}, {1, 0.8}}, {{0, 0.6}, {1, 0.8}}, {{2, 1.0}}});
  const auto d = rip_constant_exact(dup, 2);
  CHECK(std::abs(d.delta - 1.0) <= 1e-12);
  CHECK(d.worst_support == std::vector<std::size_t>{0, 1});
  CHECK(std::abs(std::abs(d.worst_direction[0]) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(d.worst_direction[0] + d.worst_direction[1]) <= 1e-12);

  CHECK_THROWS_KIND(rip_constant_exact(SparseMatrix::identity(3), 4), ErrorKind::BadArgs);
  CHECK_THROWS_KIND(rip_constant_exact(SparseMatrix::identity(3), 0), ErrorKind::BadArgs);
  CHECK_THROWS_KIND(rip_constant_exact(SparseMatrix::identity(60), 6), ErrorKind::TooManySupports);
}

TEST_CASE("rip_constant_exact matches an independent Jacobi oracle") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    gen::Gen g(seed);
    const auto a = normalize_columns(g.matrix(6, g.size(3, 9), 3));
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto r = rip_constant_exact(a, k);
      CHECK(r.delta == doctest::Approx(oracle::brute_rip(a, k)).epsilon(1e-10));
      check_achieving_direction(a, r);
    }
  }
}

TEST_CASE("rip_constant_lower_estimate examples") {
  CHECK(rip_constant_lower_estimate(SparseMatrix::identity(8), 3, 50, RngSeed{1}).delta == 0.0);

  const auto a = two_by_three();
  const auto exact = rip_constant_exact(a, 2);
  const auto est = rip_constant_lower_estimate(a, 2, 200, RngSeed{3});
  CHECK(est.mode == RipMode::lower_estimate);
  CHECK(est.delta == doctest::Approx(exact.delta).epsilon(1e-12));
  check_achieving_direction(a, est);

  gen::Gen g(4);
  const auto b = normalize_columns(g.matrix(8, 12, 3));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const double short_run = rip_constant_lower_estimate(b, 3, 10, RngSeed{seed}).delta;
    const double long_run = rip_constant_lower_estimate(b, 3, 100, RngSeed{seed}).delta;
    CHECK(short_run <= long_run);
  }
  CHECK_THROWS_KIND(rip_constant_lower_estimate(b, 3, 0, RngSeed{1}), ErrorKind::BadArgs);
}

TEST_CASE("subspace_distortion examples") {
  const std::vector<std::size_t> idx{0, 2, 3};
  const auto id = subspace_distortion(SparseMatrix::identity(5), idx);
  CHECK(id.sigma_min == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(id.sigma_max == doctest::Approx(1.0).epsilon(1e-15));

  const auto scaled = subspace_distortion(SparseMatrix::identity(5, 2.0), idx);
  CHECK(scaled.sigma_min == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(scaled.sigma_max == doctest::Approx(2.0).epsilon(1e-15));

  const OneSparseMap map{4, 5, {0, 3, 1, 3, 2}, {1, 1, -1, -1, 1}};
  const std::vector<std::size_t> collide{0, 1, 3};
  const auto col = subspace_distortion(map, collide);
  CHECK(col.sigma_min == 0.0);
  CHECK(col.sigma_max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const auto sparse_col = subspace_distortion(map.to_sparse(), collide);
  CHECK(sparse_col.sigma_min <= 1e-7);

  const std::vector<std::size_t> none;
  CHECK_THROWS_KIND(subspace_distortion(map, none), ErrorKind::EmptyIndexSet);
  const std::vector<std::size_t> out{7};
  CHECK_THROWS_KIND(subspace_distortion(map, out), ErrorKind::IndexOutOfRange);
}

TEST_CASE("row_mass_profile examples") {
  const auto id = row_mass_profile(SparseMatrix::identity(4), 0.5);
  CHECK(id.limit == 10.0);
  CHECK(id.flagged_rows.empty());
  for (const auto& c : id.per_row) {
    CHECK(c.count_pos == 1);
    CHECK(c.count_neg == 0);
  }

  const auto dup = duplicate_columns(8, 3);
  const auto half = row_mass_profile(dup, 0.5);
  CHECK(half.per_row[0].count_pos == 8);
  CHECK(half.flagged_rows.empty());
  const auto high = row_mass_profile(dup, 0.9);
  CHECK(high.limit == doctest::Approx(5.0 / 0.9));
  CHECK(high.flagged_rows == std::vector<std::size_t>{0});

  const SparseMatrix neg(1, 6, std::vector<std::vector<Entry>>(6, {{0, -1.0}}));
  const auto n = row_mass_profile(neg, 0.9);
  CHECK(n.per_row[0].count_neg == 6);
  CHECK(n.flagged_rows == std::vector<std::size_t>{0});

  // Entries equal to sqrt(x) are not counted.
  const SparseMatrix edge(1, 1, {{{0, 0.5}}});
  CHECK(row_mass_profile(edge, 0.25).per_row[0].count_pos == 0);

  CHECK_THROWS_KIND(row_mass_profile(dup, 0.0), ErrorKind::NonpositiveThreshold);
  CHECK_THROWS_KIND(row_mass_profile(dup, -1.0), ErrorKind::NonpositiveThreshold);
}

TEST_CASE("scale_profile examples") {
  const auto quarter = scale_profile(single_column({0.5, 0.5, 0.5, 0.5}), 0);
  CHECK(quarter.t == 1);
  CHECK(quarter.threshold == 0.25);
  CHECK(quarter.required_count == 1.0);
  CHECK(quarter.actual_count == 4);

  const auto forced = scale_profile(single_column({1.0}), 0);
  CHECK(forced.t == 1);
  CHECK(forced.threshold == 0.5);
  CHECK(forced.required_count == 0.25);
  CHECK(forced.actual_count == 1);

  const auto sixteen = scale_profile(single_column(std::vector<double>(16, 0.25)), 0);
  CHECK(sixteen.t == 1);
  CHECK(sixteen.threshold == 0.125);
  CHECK(sixteen.required_count == 4.0);
  CHECK(sixteen.actual_count == 16);

  CHECK(max_scale(1) == 1);
  CHECK(max_scale(2) == 1);
  CHECK(max_scale(5) == 3);
  CHECK(max_scale(64) == 6);
}

TEST_CASE("scale_profile can fail below the guaranteed mass") {
  std::vector<double> v(1, 0.1249);
  v.insert(v.end(), 14, 0.0883);
  v.insert(v.end(), 49, 0.0624);
  const auto a = single_column(v);
  const double norm = column_norms(a)[0];
  CHECK(norm > 0.5);
  CHECK(norm < 0.6);
  CHECK_THROWS_KIND(scale_profile(a, 0), ErrorKind::NoScaleFound);
}

TEST_CASE("property: rip_constant_exact is nondecreasing in k") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    gen::Gen g(seed);
    const auto a = normalize_columns(g.matrix(6, 12, 3));
    double prev = -1.0;
    for (std::size_t k = 1; k <= 4; ++k) {
      const double d = rip_constant_exact(a, k).delta;
      CHECK(d >= prev - 1e-12);
      prev = d;
    }
  }
}

TEST_CASE("property: lower estimate never exceeds the exact constant") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    gen::Gen g(seed);
    const std::size_t n = g.size(3, 12);
    const auto a = normalize_columns(g.matrix(g.size(2, 8), n, 3));
    const std::size_t k = g.size(1, 3);
    const double exact = rip_constant_exact(a, k).delta;
    const double est = rip_constant_lower_estimate(a, k, 40, RngSeed{seed}).delta;
    CHECK(est <= exact + 1e-12);
  }
}

TEST_CASE("property: coherence bounds delta_k by (k-1) coherence") {
  gen::Gen g(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t q = g.size(2, 5);
    const std::size_t t = g.size(2, 4);
    const auto cap = static_cast<std::size_t>(std::pow(double(q), double(t)));
    const Code code = g.code(q, t, g.size(4, std::min<std::size_t>(10, cap)));
    const auto a = code_to_incoherent(code);
    const double mu = coherence(a);
    for (std::size_t k = 1; k <= 3; ++k) {
      CHECK(rip_constant_exact(a, k).delta <= double(k - 1) * mu + 1e-12);
    }
  }
}

TEST_CASE("property: no overloaded row at x >= 2 coherence") {
  gen::Gen g(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t q = g.size(2, 8);
    const std::size_t t = g.size(1, 6);
    const double cap = std::pow(double(q), double(t));
    const Code code = g.code(q, t, g.size(2, static_cast<std::size_t>(std::min(32.0, cap))));
    const auto a = code_to_incoherent(code);
    const double mu = coherence(a);
    if (mu == 0.0) continue;
    for (double x = 2.0 * mu; x <= 1.0; x *= 2.0) {
      const auto p = row_mass_profile(a, x);
      CHECK(p.flagged_rows.empty());
      for (const auto& c : p.per_row) {
        CHECK(double(c.count_pos) < 5.0 / x);
        CHECK(double(c.count_neg) < 5.0 / x);
      }
    }
  }
}

TEST_CASE("property: single-index distortion is the column norm") {
  gen::Gen g(12);
  const auto a = g.matrix(7, 10, 4);
  const auto norms = column_norms(a);
  for (std::size_t i = 0; i < 10; ++i) {
    const std::vector<std::size_t> idx{i};
    const auto r = subspace_distortion(a, idx);
    CHECK(r.sigma_min == doctest::Approx(norms[i]).epsilon(1e-14));
    CHECK(r.sigma_max == doctest::Approx(norms[i]).epsilon(1e-14));
  }
}

TEST_CASE("property: scale_profile succeeds for column norms in [0.7, 2]") {
  gen::Gen g(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t s = g.size(1, 128);
    std::vector<double> v(s);
    // Mix flat, geometric and spiky magnitude shapes.
    const std::size_t shape = g.size(0, 2);
    for (std::size_t i = 0; i < s; ++i) {
      double mag = g.real(0.01, 1.0);
      if (shape == 1) mag = std::pow(0.8, double(i)) + 1e-3;
      if (shape == 2) mag = i == 0 ? 1.0 : g.real(0.001, 0.05);
      v[i] = g.sign() * mag;
    }
    const double target = g.real(0.7, 2.0);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (auto& x : v) x *= target / norm;
    const auto p = scale_profile(single_column(v), 0);
    CHECK(double(p.actual_count) >= p.required_count);
    CHECK(p.t >= 1);
    CHECK(p.t <= max_scale(s));
  }
}

TEST_CASE("linalg helpers") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK(binomial(3, 5) == 0);
  std::vector<std::size_t> comb{0, 1};
  std::uint64_t rank = 0;
  do {
    CHECK(unrank_combination(rank, 5, 2) == comb);
    ++rank;
  } while (next_combination(comb, 5));
  CHECK(rank == 10);

  const std::vector<double> g{1.0, 0.5, 0.5, 1.0};
  const auto e = symmetric_extremes(g, 2);
  CHECK(e.lambda_min == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(e.lambda_max == doctest::Approx(1.5).epsilon(1e-14));
}
