#include <cmath>
#include <map>
#include <set>

#include "sparselb/measures.hpp"
#include "support.hpp"

using namespace sparselb;

TEST_CASE("code_to_incoherent examples") {
  const Code disjoint{2, 2, {{0, 0}, {1, 1}}};
  const auto a = code_to_incoherent(disjoint);
  CHECK(a.rows() == 4);
  CHECK(a.cols() == 2);
  CHECK(coherence(a) == 0.0);

  const Code full{2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  CHECK(coherence(code_to_incoherent(full)) == doctest::Approx(0.5).epsilon(1e-15));

  const Code single{5, 3, {{4, 0, 2}}};
  const auto one = code_to_incoherent(single);
  REQUIRE(one.cols() == 1);
  CHECK(column_norms(one)[0] == doctest::Approx(1.0).epsilon(1e-15));
  const double v = 1.0 / std::sqrt(3.0);
  const std::vector<Entry> expected{{4, v}, {5, v}, {12, v}};
  CHECK(std::vector<Entry>(one.column(0).begin(), one.column(0).end()) == expected);
}

TEST_CASE("random_code examples") {
  const auto single = random_code(5, 3, 1, 0.1, RngSeed{9});
  CHECK(single.size() == 1);

  const auto pair = random_code(2, 2, 2, 0.4, RngSeed{1});
  REQUIRE(pair.size() == 2);
  CHECK(oracle::max_agreement(pair) == 0);

  const auto code = random_code(8, 4, 16, 0.5, RngSeed{1});
  REQUIRE(code.size() == 16);
  CHECK(oracle::max_agreement(code) <= 2);

  CHECK_THROWS_KIND(random_code(2, 2, 3, 0.4, RngSeed{1}, 200), ErrorKind::Exhausted);
  CHECK_THROWS_KIND(random_code(1, 2, 3, 0.4, RngSeed{1}), ErrorKind::BadArgs);
  CHECK_THROWS_KIND(random_code(4, 2, 3, 0.0, RngSeed{1}), ErrorKind::BadArgs);
}

TEST_CASE("code_max_agreement examples") {
  CHECK(code_max_agreement(Code{2, 2, {{0, 0}, {1, 1}}}) == 0);
  CHECK(code_max_agreement(Code{2, 2, {{0, 0}, {0, 1}}}) == 1);
  CHECK_THROWS_KIND(code_max_agreement(Code{2, 2, {{0, 0}}}), ErrorKind::TooFewWords);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = random_code(6, 5, 12, 0.6, RngSeed{seed});
    CHECK(code_max_agreement(c) <= 3);
    CHECK(code_max_agreement(c) == oracle::max_agreement(c));
  }
}

TEST_CASE("Code validation") {
  CHECK_THROWS_KIND((Code{2, 2, {{0, 2}}}.validate()), ErrorKind::InvalidEntry);
  CHECK_THROWS_KIND((Code{2, 2, {{0}}}.validate()), ErrorKind::InvalidEntry);
  CHECK_THROWS_KIND((Code{2, 2, {{0, 1}, {0, 1}}}.validate()), ErrorKind::InvalidEntry);
}

TEST_CASE("sample_sparse_sign_jl examples") {
  const auto dense = sample_sparse_sign_jl(5, 7, 5, RngSeed{3});
  for (std::size_t j = 0; j < 7; ++j) {
    REQUIRE(dense.column_nonzeros(j) == 5);
    for (const auto& e : dense.column(j)) CHECK(std::abs(e.value) == 1.0 / std::sqrt(5.0));
  }

  const auto a = sample_sparse_sign_jl(32, 200, 4, RngSeed{8});
  CHECK(column_sparsity(a) == 4);
  for (double norm : column_norms(a)) CHECK(norm == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_KIND(sample_sparse_sign_jl(4, 3, 5, RngSeed{1}), ErrorKind::InvalidSparsity);
  CHECK_THROWS_KIND(sample_sparse_sign_jl(4, 3, 0, RngSeed{1}), ErrorKind::InvalidSparsity);
}

TEST_CASE("sparse sign JL preserves squared norms on average") {
  const auto a = sample_sparse_sign_jl(256, 1000, 16, RngSeed{2024});
  gen::Gen g(99);
  std::normal_distribution<double> normal;
  double total = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> x(1000);
    for (auto& v : x) v = normal(g.eng);
    const double norm = std::sqrt(squared_norm(x));
    for (auto& v : x) v /= norm;
    total += squared_norm(sparselb::apply(a, x));
  }
  const double mean = total / 1000.0;
  CHECK(mean >= 0.97);
  CHECK(mean <= 1.03);
}

TEST_CASE("sample_osnap_block examples") {
  const auto one = sample_osnap_block(6, 50, 1, RngSeed{4});
  CHECK(column_sparsity(one) == 1);

  const auto full = sample_osnap_block(4, 10, 4, RngSeed{4});
  for (std::size_t j = 0; j < 10; ++j) {
    REQUIRE(full.column_nonzeros(j) == 4);
    for (std::size_t r = 0; r < 4; ++r) CHECK(full.column(j)[r].row == r);
  }

  // m=4, s=2: each column has exactly one row in {0,1} and one in {2,3}.
  const auto a = sample_osnap_block(4, 4000, 2, RngSeed{5});
  std::size_t has_0 = 0;
  std::size_t has_2 = 0;
  std::size_t has_both = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto col = a.column(j);
    REQUIRE(col.size() == 2);
    CHECK(col[0].row < 2);
    CHECK(col[1].row >= 2);
    const bool r0 = col[0].row == 0;
    const bool r2 = col[1].row == 2;
    has_0 += r0;
    has_2 += r2;
    has_both += r0 && r2;
  }
  CHECK(static_cast<double>(has_0) / 4000.0 == doctest::Approx(0.5).epsilon(0.06));
  CHECK(static_cast<double>(has_2) / 4000.0 == doctest::Approx(0.5).epsilon(0.06));
  CHECK(static_cast<double>(has_both) / 4000.0 == doctest::Approx(0.25).epsilon(0.1));

  CHECK_THROWS_KIND(sample_osnap_block(5, 3, 2, RngSeed{1}), ErrorKind::NotDivisible);
}

TEST_CASE("verify_osnap_properties examples") {
  const auto cross = verify_osnap_properties(4, 2, 2, Sampler::block, {{0, 1}, {2, 1}});
  CHECK(cross.expectation == 0.25);
  CHECK(cross.bound == 0.25);
  CHECK(cross.holds);

  const auto same = verify_osnap_properties(4, 2, 2, Sampler::block, {{0, 0}, {1, 0}});
  CHECK(same.expectation == 0.0);
  CHECK(same.holds);

  for (Sampler sampler : {Sampler::block, Sampler::sign_jl}) {
    const auto empty = verify_osnap_properties(4, 2, 2, sampler, {});
    CHECK(empty.expectation == 1.0);
    CHECK(empty.bound == 1.0);
    CHECK(empty.holds);
  }

  std::vector<std::pair<std::size_t, std::size_t>> seven;
  for (std::size_t r = 0; r < 7; ++r) seven.emplace_back(r, 0);
  CHECK_THROWS_KIND(verify_osnap_properties(8, 1, 2, Sampler::sign_jl, seven), ErrorKind::TooLarge);
  CHECK_THROWS_KIND(verify_osnap_properties(32, 1, 2, Sampler::sign_jl, {}), ErrorKind::TooLarge);
  CHECK_THROWS_KIND(verify_osnap_properties(4, 2, 2, Sampler::block, {{4, 0}}),
                    ErrorKind::IndexOutOfRange);
}

TEST_CASE("sign JL containment matches the closed form") {
  // r cells in one column: C(m - r, s - r) / C(m, s); columns multiply.
  for (std::size_t m = 2; m <= 8; ++m) {
    for (std::size_t s = 1; s <= m; ++s) {
      for (std::size_t r = 1; r <= std::min<std::size_t>(3, m); ++r) {
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t i = 0; i < r; ++i) cells.emplace_back(i, 0);
        cells.emplace_back(m - 1, 1);
        const auto rep = verify_osnap_properties(m, 2, s, Sampler::sign_jl, cells);
        const double same = r > s ? 0.0 : oracle::binom(m - r, s - r) / oracle::binom(m, s);
        const double other = static_cast<double>(s) / static_cast<double>(m);
        CHECK(rep.expectation == doctest::Approx(same * other).epsilon(1e-12));
        CHECK(rep.holds);
      }
    }
  }
}

TEST_CASE("sample_countsketch examples") {
  const auto forced = sample_countsketch(1, 20, RngSeed{6});
  for (auto r : forced.a) CHECK(r == 0);

  const auto map = sample_countsketch(16, 100000, RngSeed{12});
  for (auto load : map.row_loads()) {
    CHECK(load >= 5750);
    CHECK(load <= 6750);
  }
  std::size_t plus = 0;
  for (auto s : map.sigma) plus += s == 1;
  CHECK(static_cast<double>(plus) == doctest::Approx(50000.0).epsilon(0.02));

  CHECK(sample_countsketch(16, 500, RngSeed{3}) == sample_countsketch(16, 500, RngSeed{3}));
  CHECK_THROWS_KIND(sample_countsketch(0, 5, RngSeed{3}), ErrorKind::InvalidDimension);
}

TEST_CASE("spread_vectors examples") {
  const Code one{8, 2, {{3, 5}}};
  const auto v = spread_vectors(one, 16, 4);
  REQUIRE(v.size() == 1);
  REQUIRE(v[0].size() == 16);
  const double h = std::sqrt(0.5);
  for (std::size_t i = 0; i < 16; ++i) CHECK(v[0][i] == ((i == 3 || i == 13) ? h : 0.0));
  CHECK(squared_norm(v[0]) == doctest::Approx(1.0).epsilon(1e-15));

  const auto dot = [](const RealVector& x, const RealVector& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  const auto agree = spread_vectors(Code{8, 2, {{3, 5}, {3, 6}}}, 16, 4);
  CHECK(dot(agree[0], agree[1]) == doctest::Approx(0.5).epsilon(1e-15));
  const auto apart = spread_vectors(Code{8, 2, {{3, 5}, {4, 6}}}, 16, 4);
  CHECK(dot(apart[0], apart[1]) == 0.0);

  CHECK_THROWS_KIND(spread_vectors(one, 16, 3), ErrorKind::ShapeMismatch);
  CHECK_THROWS_KIND(spread_vectors(one, 16, 6), ErrorKind::ShapeMismatch);
  CHECK_THROWS_KIND(spread_vectors(Code{4, 2, {{0, 1}}}, 16, 4), ErrorKind::ShapeMismatch);
}

TEST_CASE("sample_coordinate_subspace examples") {
  const auto all = sample_coordinate_subspace(7, 7, RngSeed{1});
  CHECK(all == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});

  std::size_t zeros = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    zeros += sample_coordinate_subspace(2, 1, RngSeed{seed})[0] == 0;
  }
  CHECK(static_cast<double>(zeros) / 10000.0 == doctest::Approx(0.5).epsilon(0.1));

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = sample_coordinate_subspace(50, 17, RngSeed{seed});
    REQUIRE(s.size() == 17);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(s.back() < 50);
  }
  CHECK_THROWS_KIND(sample_coordinate_subspace(3, 4, RngSeed{1}), ErrorKind::InvalidDimension);
}

TEST_CASE("property: code coherence equals max agreement over t") {
  gen::Gen g(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t q = g.size(2, 8);
    const std::size_t t = g.size(1, 6);
    const double capacity = std::pow(static_cast<double>(q), static_cast<double>(t));
    const std::size_t count = g.size(2, static_cast<std::size_t>(std::min(32.0, capacity)));
    const Code code = g.code(q, t, count);
    const double expected =
        static_cast<double>(oracle::max_agreement(code)) / static_cast<double>(t);
    CHECK(std::abs(coherence(code_to_incoherent(code)) - expected) <= 1e-12);
  }
}

TEST_CASE("property: random_code passes an independent distance check") {
  gen::Gen g(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t q = g.size(4, 8);
    const std::size_t t = g.size(2, 6);
    const double eps = g.real(0.3, 1.0);
    const std::size_t count = g.size(1, 10);
    Code code;
    try {
      code = random_code(q, t, count, eps, RngSeed{static_cast<std::uint64_t>(trial)});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Exhausted);
      continue;
    }
    REQUIRE(code.size() == count);
    const auto limit = static_cast<std::size_t>(std::floor(eps * static_cast<double>(t) + 1e-9));
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        CHECK(oracle::agreements(code.words[i], code.words[j]) <= limit);
        CHECK(code.words[i] != code.words[j]);
      }
    }
  }
}

TEST_CASE("property: samplers put exactly s entries of magnitude 1/sqrt(s) per column") {
  gen::Gen g(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = g.size(1, 6);
    const std::size_t m = s * g.size(1, 5);
    const std::size_t n = g.size(1, 60);
    const RngSeed seed{static_cast<std::uint64_t>(trial)};
    for (const auto& a : {sample_sparse_sign_jl(m, n, s, seed), sample_osnap_block(m, n, s, seed)}) {
      for (std::size_t j = 0; j < n; ++j) {
        REQUIRE(a.column_nonzeros(j) == s);
        for (const auto& e : a.column(j)) CHECK(std::abs(e.value) == 1.0 / std::sqrt(double(s)));
      }
    }
  }
}

TEST_CASE("property: spread vector inner products lie in [0, eps]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    // k = 8, n = 32: t = 4, q = 8.
    const double eps = 0.5;
    const Code code = random_code(8, 4, 12, eps, RngSeed{seed});
    const auto v = spread_vectors(code, 32, 8);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        double dot = 0.0;
        for (std::size_t r = 0; r < 32; ++r) dot += v[i][r] * v[j][r];
        CHECK(dot >= 0.0);
        CHECK(dot <= eps + 1e-15);
      }
    }
  }
}

TEST_CASE("property: samplers are deterministic in (parameters, seed)") {
  CHECK(sample_sparse_sign_jl(20, 30, 3, RngSeed{5}) == sample_sparse_sign_jl(20, 30, 3, RngSeed{5}));
  CHECK(sample_osnap_block(20, 30, 4, RngSeed{5}) == sample_osnap_block(20, 30, 4, RngSeed{5}));
  CHECK(random_code(8, 4, 10, 0.5, RngSeed{5}) == random_code(8, 4, 10, 0.5, RngSeed{5}));
  CHECK(sample_coordinate_subspace(100, 9, RngSeed{5}) == sample_coordinate_subspace(100, 9, RngSeed{5}));
  CHECK(!(sample_sparse_sign_jl(20, 30, 3, RngSeed{5}) == sample_sparse_sign_jl(20, 30, 3, RngSeed{6})));
}

TEST_CASE("sampler names round-trip") {
  CHECK(parse_sampler("sign_jl") == Sampler::sign_jl);
  CHECK(parse_sampler(to_string(Sampler::block)) == Sampler::block);
  CHECK_THROWS_KIND(parse_sampler("gauss"), ErrorKind::BadArgs);
}
