#include "sparselb/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "sparselb/error.hpp"
#include "sparselb/kernels.hpp"
#include "sparselb/linalg.hpp"

namespace sparselb {

void Code::validate() const {
  if (q < 2 || t < 1) {
    throw Error(ErrorKind::InvalidEntry, "code needs q >= 2 and t >= 1");
  }
  std::set<std::vector<std::uint32_t>> seen;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    if (w.size() != t) {
      throw Error(ErrorKind::InvalidEntry,
                  "codeword " + std::to_string(i) + " has wrong length");
    }
    for (std::uint32_t symbol : w) {
      if (symbol >= q) {
        throw Error(ErrorKind::InvalidEntry,
                    "codeword " + std::to_string(i) + " has symbol >= q");
      }
    }
    if (!seen.insert(w).second) {
      throw Error(ErrorKind::InvalidEntry,
                  "codeword " + std::to_string(i) + " is a duplicate");
    }
  }
}

std::vector<std::uint32_t> Code::flat() const {
  std::vector<std::uint32_t> out;
  out.reserve(words.size() * t);
  for (const auto& w : words) out.insert(out.end(), w.begin(), w.end());
  return out;
}

SparseMatrix code_to_incoherent(const Code& code) {
  code.validate();
  const double value = 1.0 / std::sqrt(static_cast<double>(code.t));
  std::vector<std::vector<Entry>> columns(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) {
    columns[i].reserve(code.t);
    for (std::size_t j = 0; j < code.t; ++j) {
      columns[i].push_back({j * code.q + code.words[i][j], value});
    }
  }
  return {code.q * code.t, code.size(), std::move(columns)};
}

std::size_t agreement_limit(double eps, std::size_t t) {
  return static_cast<std::size_t>(
      std::floor(eps * static_cast<double>(t) + 1e-9));
}

Code random_code(std::size_t q, std::size_t t, std::size_t count, double eps,
                 RngSeed seed, std::size_t max_attempts) {
  if (q < 2 || t < 1 || count < 1) {
    throw Error(ErrorKind::BadArgs, "random_code needs q >= 2, t >= 1, N >= 1");
  }
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorKind::BadArgs, "eps must lie in (0, 1]");
  }
  const std::size_t limit = std::min(agreement_limit(eps, t), t - 1);
  Rng rng = Rng::stream(seed, 0);
  Code code{q, t, {}};
  code.words.reserve(count);
  std::vector<std::uint32_t> word(t);
  while (code.size() < count) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < max_attempts && !placed; ++attempt) {
      for (auto& symbol : word) symbol = static_cast<std::uint32_t>(rng.uniform(q));
      placed = std::all_of(code.words.begin(), code.words.end(),
                           [&](const std::vector<std::uint32_t>& other) {
                             std::size_t agree = 0;
                             for (std::size_t p = 0; p < t; ++p) {
                               agree += other[p] == word[p];
                             }
                             return agree <= limit;
                           });
    }
    if (!placed) {
      throw Error(ErrorKind::Exhausted,
                  "could not place codeword " + std::to_string(code.size()) +
                      " within " + std::to_string(max_attempts) + " attempts");
    }
    code.words.push_back(word);
  }
  return code;
}

std::size_t code_max_agreement(const Code& code) {
  if (code.size() < 2) {
    throw Error(ErrorKind::TooFewWords, "need at least two codewords");
  }
  const auto symbols = code.flat();
  return kernels::parallel::max_agreement({symbols, code.t});
}

SparseMatrix sample_sparse_sign_jl(std::size_t m, std::size_t n, std::size_t s,
                                   RngSeed seed) {
  if (s < 1 || s > m) {
    throw Error(ErrorKind::InvalidSparsity,
                "s = " + std::to_string(s) + " with m = " + std::to_string(m));
  }
  const double value = 1.0 / std::sqrt(static_cast<double>(s));
  auto columns = kernels::parallel::map_index(n, [&](std::size_t j) {
    Rng rng = Rng::stream(seed, j);
    const auto rows = rng.subset(m, s);
    std::vector<Entry> col;
    col.reserve(s);
    for (std::size_t row : rows) col.push_back({row, rng.sign() * value});
    return col;
  });
  return {m, n, std::move(columns)};
}

SparseMatrix sample_osnap_block(std::size_t m, std::size_t n, std::size_t s,
                                RngSeed seed) {
  if (s < 1 || m % s != 0) {
    throw Error(ErrorKind::NotDivisible,
                "s = " + std::to_string(s) + " does not divide m = " +
                    std::to_string(m));
  }
  const std::size_t block = m / s;
  const double value = 1.0 / std::sqrt(static_cast<double>(s));
  auto columns = kernels::parallel::map_index(n, [&](std::size_t j) {
    Rng rng = Rng::stream(seed, j);
    std::vector<Entry> col;
    col.reserve(s);
    for (std::size_t b = 0; b < s; ++b) {
      const std::size_t row = b * block + rng.uniform(block);
      col.push_back({row, rng.sign() * value});
    }
    return col;
  });
  return {m, n, std::move(columns)};
}

Sampler parse_sampler(std::string_view name) {
  if (name == "sign_jl") return Sampler::sign_jl;
  if (name == "block") return Sampler::block;
  throw Error(ErrorKind::BadArgs, "unknown sampler '" + std::string(name) + "'");
}

std::string_view to_string(Sampler sampler) {
  return sampler == Sampler::sign_jl ? "sign_jl" : "block";
}

namespace {

// Fraction of the sampler's equally likely column supports that contain
// every row in `required`.
double containment_probability(std::size_t m, std::size_t s, Sampler sampler,
                               const std::vector<std::size_t>& required) {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  auto contains_all = [&](const std::vector<std::size_t>& support) {
    return std::includes(support.begin(), support.end(), required.begin(),
                         required.end());
  };
  if (sampler == Sampler::sign_jl) {
    std::vector<std::size_t> support(s);
    for (std::size_t p = 0; p < s; ++p) support[p] = p;
    do {
      ++total;
      hits += contains_all(support);
    } while (next_combination(support, m));
  } else {
    const std::size_t block = m / s;
    std::vector<std::size_t> offset(s, 0);
    std::vector<std::size_t> support(s);
    for (;;) {
      for (std::size_t b = 0; b < s; ++b) support[b] = b * block + offset[b];
      ++total;
      hits += contains_all(support);
      std::size_t b = s;
      while (b > 0 && ++offset[b - 1] == block) offset[--b] = 0;
      if (b == 0) break;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

OsnapReport verify_osnap_properties(
    std::size_t m, std::size_t n, std::size_t s, Sampler sampler,
    const std::vector<std::pair<std::size_t, std::size_t>>& cells) {
  const std::set<std::pair<std::size_t, std::size_t>> unique(cells.begin(),
                                                             cells.end());
  if (unique.size() > 6 || m > 16) {
    throw Error(ErrorKind::TooLarge, "enumeration needs |S| <= 6 and m <= 16");
  }
  if (sampler == Sampler::sign_jl && (s < 1 || s > m)) {
    throw Error(ErrorKind::InvalidSparsity, "need 1 <= s <= m");
  }
  if (sampler == Sampler::block && (s < 1 || m % s != 0)) {
    throw Error(ErrorKind::NotDivisible, "s must divide m");
  }
  std::map<std::size_t, std::vector<std::size_t>> rows_by_column;
  for (const auto& [row, col] : unique) {
    if (row >= m || col >= n) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "cell (" + std::to_string(row) + ", " + std::to_string(col) +
                      ")");
    }
    rows_by_column[col].push_back(row);
  }
  OsnapReport report;
  report.expectation = 1.0;
  for (auto& [col, rows] : rows_by_column) {
    std::sort(rows.begin(), rows.end());
    report.expectation *= containment_probability(m, s, sampler, rows);
  }
  report.bound = std::pow(static_cast<double>(s) / static_cast<double>(m),
                          static_cast<double>(unique.size()));
  report.holds = report.expectation <= report.bound + 1e-12;
  return report;
}

OneSparseMap sample_countsketch(std::size_t m, std::size_t n, RngSeed seed) {
  if (m < 1) throw Error(ErrorKind::InvalidDimension, "m must be positive");
  OneSparseMap map{m, n, std::vector<std::size_t>(n), std::vector<std::int8_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, i);
    map.a[i] = rng.uniform(m);
    map.sigma[i] = static_cast<std::int8_t>(rng.sign());
  }
  return map;
}

std::vector<RealVector> spread_vectors(const Code& code, std::size_t n,
                                       std::size_t k) {
  if (k < 2 || k % 2 != 0 || (2 * n) % k != 0) {
    throw Error(ErrorKind::ShapeMismatch, "need even k >= 2 dividing 2n");
  }
  const std::size_t alphabet = 2 * n / k;
  if (code.t != k / 2 || code.q != alphabet) {
    throw Error(ErrorKind::ShapeMismatch,
                "code must have t = k/2 = " + std::to_string(k / 2) +
                    " and q = 2n/k = " + std::to_string(alphabet));
  }
  code.validate();
  const double value = std::sqrt(2.0 / static_cast<double>(k));
  std::vector<RealVector> out;
  out.reserve(code.size());
  for (const auto& word : code.words) {
    RealVector y(n, 0.0);
    for (std::size_t j = 0; j < code.t; ++j) y[j * alphabet + word[j]] = value;
    out.push_back(std::move(y));
  }
  return out;
}

std::vector<std::size_t> sample_coordinate_subspace(std::size_t n,
                                                    std::size_t d,
                                                    RngSeed seed) {
  if (d > n) {
    throw Error(ErrorKind::InvalidDimension,
                "d = " + std::to_string(d) + " exceeds n = " + std::to_string(n));
  }
  Rng rng = Rng::stream(seed, 0);
  return rng.subset(n, d);
}

}  // namespace sparselb
