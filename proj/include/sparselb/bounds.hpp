#pragma once

// Closed-form evaluators for the sparsity and row-count thresholds. Every
// hidden universal constant is set to 1 (normalized_constant = true), so
// values describe shape only. Logarithms are natural; ln(.) denominators
// are clamped below at 1.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sparselb {

struct BoundValue {
  double value = 0.0;
  std::string formula_id;
  bool normalized_constant = true;
};

/// Smallest integer s in [1, floor(q/e)] with s ln(q/s) >= r. Throws
/// BadArgs unless r > 0 and q/r >= 2; Infeasible when no such s exists.
std::int64_t min_sparsity_from_inequality(double q, double r);

/// eps^-2 ln N / ln(1/eps), for 0 < eps < 1/2 and N >= 1.
BoundValue alon_rows_lower(double eps, double count);

/// eps^-1 ln n / max(ln(m / ln n), 1), for 1/sqrt(n) < eps < 1/2, m > ln n.
BoundValue jl_sparsity_lower(double eps, double n, double m);

/// min(k ln(n/k) / max(ln(m / (k ln(n/k))), 1), m), for
/// 2 <= k <= m <= n / (64 (ln n)^3).
BoundValue rip_sparsity_lower(double k, double n, double m);

/// (1/ln(1/delta)) min(k ln(n/k)/delta + k/delta^2, n), for
/// 1/sqrt(n) <= delta <= 1/2 and 1 <= k <= delta n / 2.
BoundValue rip_rows_lower(double delta, double k, double n);

struct CodeSizeExponents {
  double e1 = 0.0;  // eps^2 n
  double e2 = 0.0;  // eps k ln(eps n / (2k))
};

/// Exponents of the random-code size guarantee, for 0 < eps <= 1/2 and
/// 1 <= k <= eps n / 2.
CodeSizeExponents code_size_exponents(double eps, double k, double n);

/// Formula identifiers accepted by evaluate_formula.
const std::vector<std::string>& formula_ids();

/// Dispatches by id with named parameters. Throws BadArgs on an unknown id
/// or a missing parameter. code_size_exponents reports min(e1, e2).
BoundValue evaluate_formula(std::string_view id,
                            const std::map<std::string, double>& params);

}  // namespace sparselb
