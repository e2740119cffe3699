#include "sparselb/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "sparselb/constructions.hpp"
#include "sparselb/error.hpp"
#include "sparselb/kernels.hpp"
#include "sparselb/linalg.hpp"
#include "sparselb/measures.hpp"

namespace sparselb {

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::none: return "none";
    case CertificateKind::incoherence_pair: return "incoherence_pair";
    case CertificateKind::sparsity_lower_bound: return "sparsity_lower_bound";
    case CertificateKind::rip_distortion: return "rip_distortion";
    case CertificateKind::kernel_witness: return "kernel_witness";
  }
  return "none";
}

bool Certificate::is_violation() const {
  const auto k = kind();
  return k == CertificateKind::incoherence_pair ||
         k == CertificateKind::rip_distortion ||
         k == CertificateKind::kernel_witness;
}

namespace {

// Max-|dot| pair among `members`, lexicographically first on ties.
IncoherencePair max_abs_pair(const SparseMatrix& a,
                             const std::vector<std::size_t>& members) {
  IncoherencePair best{members[0], members[1], column_dot(a, members[0], members[1])};
  for (std::size_t p = 0; p < members.size(); ++p) {
    for (std::size_t q = p + 1; q < members.size(); ++q) {
      const double dot = column_dot(a, members[p], members[q]);
      if (std::abs(dot) > std::abs(best.dot)) best = {members[p], members[q], dot};
    }
  }
  return best;
}

// Largest group (ties: smallest first member). Members are ascending.
template <class Label>
const std::vector<std::size_t>* largest_group(
    const std::map<Label, std::vector<std::size_t>>& groups) {
  const std::vector<std::size_t>* best = nullptr;
  for (const auto& [label, members] : groups) {
    if (best == nullptr || members.size() > best->size() ||
        (members.size() == best->size() && members.front() < best->front())) {
      best = &members;
    }
  }
  return best;
}

// Magnitude-descending, row-ascending order.
std::vector<Entry> by_magnitude(std::span<const Entry> column) {
  std::vector<Entry> sorted(column.begin(), column.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const Entry& x, const Entry& y) {
    return std::abs(x.value) > std::abs(y.value);
  });
  return sorted;
}

template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> comb(k);
  for (std::size_t p = 0; p < k; ++p) comb[p] = p;
  do {
    fn(comb);
  } while (next_combination(comb, n));
}

bool pairwise_within(const SparseMatrix& a, const std::vector<std::size_t>& group,
                     double eps) {
  for (std::size_t p = 0; p < group.size(); ++p) {
    for (std::size_t q = p + 1; q < group.size(); ++q) {
      if (std::abs(column_dot(a, group[p], group[q])) > eps) return false;
    }
  }
  return true;
}

}  // namespace

bool verify_certificate(const Certificate& cert, const SparseMatrix& a,
                        double eps) {
  switch (cert.kind()) {
    case CertificateKind::none:
      return true;
    case CertificateKind::incoherence_pair: {
      const auto& pair = cert.as<IncoherencePair>();
      if (pair.i >= a.cols() || pair.j >= a.cols() || pair.i == pair.j) return false;
      const double dot = column_dot(a, pair.i, pair.j);
      return std::abs(dot - pair.dot) <= 1e-12 && std::abs(dot) > eps;
    }
    case CertificateKind::sparsity_lower_bound: {
      const auto& bound = cert.as<SparsityBound>();
      const auto n = static_cast<double>(bound.group_size);
      const double expected =
          static_cast<double>(bound.t) * (n - 1.0) / bound.denominator;
      return bound.group.size() == bound.group_size && bound.group_size >= 2 &&
             std::abs(expected - bound.bound_value) <= 1e-12 &&
             pairwise_within(a, bound.group, eps);
    }
    case CertificateKind::rip_distortion: {
      const auto& rip = cert.as<RipDistortion>();
      if (rip.v.size() != a.cols()) return false;
      const double norm_sq = squared_norm(rip.v);
      if (!(norm_sq > 0.0)) return false;
      const double ratio = squared_norm(sparselb::apply(a, rip.v)) / norm_sq;
      return std::abs(ratio - rip.ratio) <= 1e-9;
    }
    case CertificateKind::kernel_witness: {
      const auto& kw = cert.as<KernelWitness>();
      if (kw.x.size() != a.cols() || !(squared_norm(kw.x) > 0.0)) return false;
      return std::sqrt(squared_norm(sparselb::apply(a, kw.x))) <= 1e-12;
    }
  }
  return false;
}

bool verify_certificate(const Certificate& cert, const OneSparseMap& a) {
  if (cert.kind() == CertificateKind::none) return true;
  if (cert.kind() != CertificateKind::kernel_witness) return false;
  const auto& kw = cert.as<KernelWitness>();
  if (kw.x.size() != a.cols) return false;
  std::vector<std::int64_t> x(kw.x.size());
  bool nonzero = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (kw.x[i] != std::round(kw.x[i])) return false;
    x[i] = static_cast<std::int64_t>(kw.x[i]);
    nonzero = nonzero || x[i] != 0;
  }
  const auto y = a.apply_exact(x);
  return nonzero && std::all_of(y.begin(), y.end(),
                                [](std::int64_t v) { return v == 0; });
}

Certificate heart_violation_search(const SparseMatrix& a, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorKind::PreconditionViolated, "eps must lie in (0, 1/2)");
  }
  require_unit_columns(a);

  // Per row and sign: (magnitude, column), filled in column order.
  struct Hit {
    double magnitude;
    std::size_t column;
  };
  std::vector<std::vector<Hit>> positive(a.rows()), negative(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (const Entry& e : a.column(j)) {
      auto& bucket = e.value > 0 ? positive[e.row] : negative[e.row];
      bucket.push_back({std::abs(e.value), j});
    }
  }

  for (std::size_t row = 0; row < a.rows(); ++row) {
    for (auto* bucket : {&positive[row], &negative[row]}) {
      auto& hits = *bucket;
      if (hits.size() < 2) continue;
      std::stable_sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
        return x.magnitude > y.magnitude;
      });
      // Top-N entries exceed sqrt(x) for every x below magnitude_N^2; the
      // row is overloaded iff some x in [max(2 eps, 5/N), magnitude_N^2)
      // exists. Take the largest such N.
      for (std::size_t count = hits.size(); count >= 2; --count) {
        const double x = std::max(2.0 * eps, 5.0 / static_cast<double>(count));
        if (!(hits[count - 1].magnitude > std::sqrt(x))) continue;
        std::vector<std::size_t> members;
        for (std::size_t p = 0; p < count; ++p) members.push_back(hits[p].column);
        std::sort(members.begin(), members.end());
        const IncoherencePair pair = max_abs_pair(a, members);
        if (std::abs(pair.dot) > eps) return {pair};
      }
    }
  }
  return {NoCertificate{}};
}

TType ttype_of(std::span<const Entry> column, std::size_t dimension,
               std::size_t t, std::size_t s) {
  if (t < 1 || t > s || t > dimension) {
    throw Error(ErrorKind::InvalidT, "need 1 <= t <= s and t <= dimension");
  }
  if (column.size() > s) {
    throw Error(ErrorKind::PreconditionViolated,
                "vector has more than s nonzeros");
  }
  const auto sorted = by_magnitude(column);
  std::vector<std::pair<std::size_t, double>> top;
  for (std::size_t p = 0; p < std::min(t, sorted.size()); ++p) {
    top.emplace_back(sorted[p].row, sorted[p].value);
  }
  // Fewer than t nonzeros: the remaining top slots are the lowest-index zeros.
  for (std::size_t row = 0; top.size() < t; ++row) {
    const bool used = std::any_of(column.begin(), column.end(),
                                  [&](const Entry& e) { return e.row == row; });
    if (!used) top.emplace_back(row, 0.0);
  }
  std::sort(top.begin(), top.end());

  TType type;
  const double units = 2.0 * static_cast<double>(s);
  for (const auto& [row, value] : top) {
    type.locations.push_back(row);
    type.signs.push_back(value < 0 ? -1 : 1);
    type.rounded_squares.push_back(
        static_cast<std::int64_t>(std::ceil(value * value * units - 0.5)));
  }
  return type;
}

TType ttype_of(std::span<const double> v, std::size_t t, std::size_t s) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) entries.push_back({i, v[i]});
  }
  return ttype_of(entries, v.size(), t, s);
}

Certificate ttype_collision_certify(const SparseMatrix& a, double eps,
                                    std::size_t t) {
  require_unit_columns(a);
  const std::size_t s = column_sparsity(a);
  if (t < 1 || t > s) throw Error(ErrorKind::InvalidT, "need 1 <= t <= s");
  if (!(static_cast<double>(t) / static_cast<double>(s) > kTTypeConstant * eps)) {
    throw Error(ErrorKind::PreconditionViolated, "need t/s > C eps");
  }
  std::map<TType, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    groups[ttype_of(a.column(j), a.rows(), t, s)].push_back(j);
  }
  const auto* best = largest_group(groups);
  if (best == nullptr || best->size() < 2) return {NoCertificate{}};

  const auto& group = *best;
  const IncoherencePair pair = max_abs_pair(a, group);
  if (std::abs(pair.dot) > eps) return {pair};

  const auto& shared = groups.find(ttype_of(a.column(group[0]), a.rows(), t, s))
                           ->first.locations;
  RealVector sum(a.rows(), 0.0);
  for (std::size_t j : group) {
    for (const Entry& e : a.column(j)) {
      if (!std::binary_search(shared.begin(), shared.end(), e.row)) {
        sum[e.row] += e.value;
      }
    }
  }
  SparsityBound bound;
  bound.t = t;
  bound.group_size = group.size();
  bound.denominator = 2.0 * kTTypeConstant;
  bound.bound_value = static_cast<double>(t) *
                      (static_cast<double>(group.size()) - 1.0) / bound.denominator;
  bound.group = group;
  bound.residual_mass = squared_norm(sum);
  return {bound};
}

namespace {

struct SignedRows {
  std::vector<std::size_t> rows;
  std::vector<int> signs;

  auto operator<=>(const SignedRows&) const = default;
};

SignedRows pick(const std::vector<Entry>& entries,
                const std::vector<std::size_t>& chosen) {
  std::vector<Entry> picked;
  for (std::size_t p : chosen) picked.push_back(entries[p]);
  std::sort(picked.begin(), picked.end(),
            [](const Entry& x, const Entry& y) { return x.row < y.row; });
  SignedRows out;
  for (const Entry& e : picked) {
    out.rows.push_back(e.row);
    out.signs.push_back(e.value < 0 ? -1 : 1);
  }
  return out;
}

}  // namespace

Certificate sign_pattern_certify(const SparseMatrix& a, double eps,
                                 std::size_t t, PatternSearch mode) {
  const std::size_t s = column_sparsity(a);
  if (s == 0) throw Error(ErrorKind::NotSignMatrix, "matrix is all zero");
  const double magnitude = 1.0 / std::sqrt(static_cast<double>(s));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (const Entry& e : a.column(j)) {
      if (std::abs(std::abs(e.value) - magnitude) > 1e-12) {
        throw Error(ErrorKind::NotSignMatrix,
                    "entry in column " + std::to_string(j) + " is not +-1/sqrt(s)");
      }
    }
  }
  if (t < 1 || t > s) throw Error(ErrorKind::InvalidT, "need 1 <= t <= s");
  if (static_cast<double>(t) + 1e-12 < 2.0 * eps * static_cast<double>(s)) {
    throw Error(ErrorKind::PreconditionViolated, "need t >= 2 eps s");
  }
  if (mode == PatternSearch::exhaustive && s > kExhaustiveSparsityLimit) {
    throw Error(ErrorKind::TooLarge, "exhaustive pattern search needs s <= 8");
  }

  std::map<SignedRows, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto col = a.column(j);
    if (col.size() < t) continue;
    const std::vector<Entry> entries(col.begin(), col.end());
    if (mode == PatternSearch::canonical) {
      std::vector<std::size_t> first(t);
      for (std::size_t p = 0; p < t; ++p) first[p] = p;
      groups[pick(entries, first)].push_back(j);
    } else {
      for_each_subset(entries.size(), t, [&](const std::vector<std::size_t>& c) {
        groups[pick(entries, c)].push_back(j);
      });
    }
  }
  const auto* best = largest_group(groups);
  if (best == nullptr || best->size() < 2) return {NoCertificate{}};

  const auto& group = *best;
  const IncoherencePair pair = max_abs_pair(a, group);
  if (std::abs(pair.dot) > eps) return {pair};

  const auto& shared = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
                         return &g.second == best;
                       })->first.rows;
  RealVector sum(a.rows(), 0.0);
  for (std::size_t j : group) {
    for (const Entry& e : a.column(j)) {
      if (!std::binary_search(shared.begin(), shared.end(), e.row)) {
        sum[e.row] += e.value;
      }
    }
  }
  SparsityBound bound;
  bound.t = t;
  bound.group_size = group.size();
  bound.denominator = 4.0;
  bound.bound_value =
      static_cast<double>(t) * (static_cast<double>(group.size()) - 1.0) / 4.0;
  bound.group = group;
  bound.residual_mass = squared_norm(sum);
  return {bound};
}

std::size_t pattern_size(std::size_t t, std::size_t s, std::size_t k) {
  const double raw = std::ceil(std::pow(2.0, 4.0 - static_cast<double>(t)) *
                               static_cast<double>(s) / static_cast<double>(k));
  const auto u = static_cast<std::size_t>(std::max(raw, 1.0));
  return std::min(u, std::max<std::size_t>(s, 1));
}

Certificate rip_pattern_witness(const SparseMatrix& a, std::size_t k,
                                PatternSearch mode) {
  if (k < 2) throw Error(ErrorKind::PreconditionViolated, "need k >= 2");
  const auto norms = column_norms(a);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (norms[j] < 0.5) {
      throw Error(ErrorKind::DegenerateColumn,
                  "column " + std::to_string(j) + " has norm below 1/2");
    }
    try {
      scale_profile(a, j);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NoScaleFound) throw;
      throw Error(ErrorKind::DegenerateColumn, err.what());
    }
  }
  const std::size_t s = column_sparsity(a);
  if (mode == PatternSearch::exhaustive && s > kExhaustiveSparsityLimit) {
    throw Error(ErrorKind::TooLarge, "exhaustive pattern search needs s <= 8");
  }

  RipDistortion best;
  bool found = false;
  for (std::size_t t = 1; t <= max_scale(s); ++t) {
    const double threshold = scale_threshold(t, s);
    const std::size_t u = pattern_size(t, s, k);
    std::map<PatternAtScale, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      auto sorted = by_magnitude(a.column(j));
      const auto qualifying = static_cast<std::size_t>(std::count_if(
          sorted.begin(), sorted.end(),
          [&](const Entry& e) { return std::abs(e.value) >= threshold; }));
      if (qualifying < u) continue;
      sorted.resize(qualifying);
      auto add = [&](const std::vector<std::size_t>& chosen) {
        SignedRows rows = pick(sorted, chosen);
        groups[{t, u, std::move(rows.rows), std::move(rows.signs)}].push_back(j);
      };
      if (mode == PatternSearch::canonical) {
        std::vector<std::size_t> top(u);
        for (std::size_t p = 0; p < u; ++p) top[p] = p;
        add(top);
      } else {
        for_each_subset(qualifying, u, add);
      }
    }
    const auto* group = largest_group(groups);
    if (group == nullptr || group->size() < 2) continue;

    RealVector v(a.cols(), 0.0);
    const std::size_t z = std::min(group->size(), k);
    for (std::size_t p = 0; p < z; ++p) v[(*group)[p]] = 1.0;
    const double ratio = squared_norm(sparselb::apply(a, v)) / static_cast<double>(z);
    if (!found || ratio > best.ratio) {
      best = {std::move(v), ratio, t};
      found = true;
    }
  }
  if (!found || best.ratio < 1.0 + 1e-9) return {NoCertificate{}};
  return {best};
}

Certificate ose_collision_witness(const OneSparseMap& a,
                                  std::span<const std::size_t> indices) {
  if (indices.size() < 2) {
    throw Error(ErrorKind::BadArgs, "need |I| >= 2");
  }
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::BadArgs, "indices must be distinct");
  }
  if (sorted.back() >= a.cols) {
    throw Error(ErrorKind::IndexOutOfRange, "index beyond n");
  }
  // First two members of each row bucket; the smallest such pair wins.
  std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> first_two;
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::pair<std::size_t, std::size_t> best{unset, unset};
  for (std::size_t i : sorted) {
    auto [it, inserted] = first_two.try_emplace(a.a[i], i, unset);
    if (!inserted && it->second.second == unset) {
      it->second.second = i;
      best = std::min(best, it->second);
    }
  }
  if (best.first == unset) return {NoCertificate{}};
  const auto [i, j] = best;
  KernelWitness kw;
  kw.x.assign(a.cols, 0.0);
  kw.x[i] = a.sigma[j];
  kw.x[j] = -a.sigma[i];
  kw.i = i;
  kw.j = j;
  return {kw};
}

namespace {

OseTrial run_ose_trial(std::size_t m, std::size_t d, std::size_t n,
                       RngSeed seed, std::size_t trial) {
  Rng rng = Rng::stream(seed, trial);
  const RngSeed map_seed{rng()};
  const RngSeed subspace_seed{rng()};
  const OneSparseMap map = sample_countsketch(m, n, map_seed);
  const auto indices = sample_coordinate_subspace(n, d, subspace_seed);

  OseTrial out;
  const SingularRange range = subspace_distortion(map, indices);
  out.sigma_min = range.sigma_min;
  out.sigma_max = range.sigma_max;
  out.failed = range.sigma_min < 0.5 || range.sigma_max > 2.0;
  if (d >= 2) {
    out.collided = ose_collision_witness(map, indices).kind() ==
                   CertificateKind::kernel_witness;
  }
  const double heavy = static_cast<double>(n) / (10.0 * static_cast<double>(m));
  for (std::size_t load : map.row_loads()) {
    out.heavy_rows += static_cast<double>(load) >= heavy;
  }
  return out;
}

OseFailureReport summarize(std::vector<OseTrial> trials) {
  OseFailureReport report;
  report.trials = trials.size();
  double heavy = 0.0;
  for (const OseTrial& t : trials) {
    report.failures += t.failed;
    report.collisions += t.collided;
    heavy += static_cast<double>(t.heavy_rows);
  }
  report.rate = static_cast<double>(report.failures) /
                static_cast<double>(report.trials);
  report.mean_heavy_rows = heavy / static_cast<double>(report.trials);
  report.per_trial = std::move(trials);
  return report;
}

void check_ose_args(std::size_t m, std::size_t d, std::size_t n,
                    std::size_t trials) {
  if (d < 1 || d > n) throw Error(ErrorKind::InvalidDimension, "need 1 <= d <= n");
  if (m < 1) throw Error(ErrorKind::InvalidDimension, "need m >= 1");
  if (trials < 1) throw Error(ErrorKind::BadArgs, "need trials >= 1");
}

}  // namespace

OseFailureReport ose_failure_probability(std::size_t m, std::size_t d,
                                         std::size_t n, std::size_t trials,
                                         RngSeed seed) {
  check_ose_args(m, d, n, trials);
  return summarize(kernels::parallel::map_index(trials, [&](std::size_t trial) {
    return run_ose_trial(m, d, n, seed, trial);
  }));
}

OseFailureReport ose_failure_probability_serial(std::size_t m, std::size_t d,
                                                std::size_t n,
                                                std::size_t trials,
                                                RngSeed seed) {
  check_ose_args(m, d, n, trials);
  return summarize(kernels::serial::map_index(trials, [&](std::size_t trial) {
    return run_ose_trial(m, d, n, seed, trial);
  }));
}

}  // namespace sparselb
