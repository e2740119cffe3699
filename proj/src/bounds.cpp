#include "sparselb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sparselb/error.hpp"

namespace sparselb {
namespace {

void require(bool ok, std::string_view what) {
  if (!ok) throw Error(ErrorKind::RangeError, std::string(what));
}

double clamped_log(double x) { return std::max(std::log(x), 1.0); }

BoundValue finish(double value, std::string id) {
  require(std::isfinite(value) && value >= 0.0, "bound is not finite");
  return {value, std::move(id), true};
}

}  // namespace

std::int64_t min_sparsity_from_inequality(double q, double r) {
  if (!(r > 0.0) || !(q / r >= 2.0)) {
    throw Error(ErrorKind::BadArgs, "need r > 0 and q/r >= 2");
  }
  const auto f = [q](std::int64_t s) {
    const auto sd = static_cast<double>(s);
    return sd * std::log(q / sd);
  };
  const auto top = static_cast<std::int64_t>(std::floor(q / std::numbers::e));
  if (top < 1 || f(top) < r) {
    throw Error(ErrorKind::Infeasible, "s ln(q/s) < r on all of [1, q/e]");
  }
  // f is increasing on [1, q/e]: first s with f(s) >= r.
  std::int64_t lo = 1;
  std::int64_t hi = top;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (f(mid) >= r) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

BoundValue alon_rows_lower(double eps, double count) {
  require(eps > 0.0 && eps < 0.5, "alon_rows_lower: need 0 < eps < 1/2");
  require(count >= 1.0, "alon_rows_lower: need N >= 1");
  return finish(std::log(count) / (eps * eps * std::log(1.0 / eps)),
                "alon_rows_lower");
}

BoundValue jl_sparsity_lower(double eps, double n, double m) {
  require(n > 1.0, "jl_sparsity_lower: need n > 1");
  require(eps > 1.0 / std::sqrt(n) && eps < 0.5,
          "jl_sparsity_lower: need 1/sqrt(n) < eps < 1/2");
  const double log_n = std::log(n);
  require(m > log_n, "jl_sparsity_lower: need m > ln n");
  return finish(log_n / (eps * clamped_log(m / log_n)), "jl_sparsity_lower");
}

BoundValue rip_sparsity_lower(double k, double n, double m) {
  require(n > 1.0, "rip_sparsity_lower: need n > 1");
  const double cube = std::pow(std::log(n), 3.0);
  require(k >= 2.0 && k <= m && m <= n / (64.0 * cube),
          "rip_sparsity_lower: need 2 <= k <= m <= n / (64 ln^3 n)");
  const double scale = k * std::log(n / k);
  return finish(std::min(scale / clamped_log(m / scale), m),
                "rip_sparsity_lower");
}

BoundValue rip_rows_lower(double delta, double k, double n) {
  require(n >= 1.0, "rip_rows_lower: need n >= 1");
  require(delta >= 1.0 / std::sqrt(n) && delta <= 0.5,
          "rip_rows_lower: need 1/sqrt(n) <= delta <= 1/2");
  require(k >= 1.0 && k <= delta * n / 2.0,
          "rip_rows_lower: need 1 <= k <= delta n / 2");
  const double inner =
      std::min(k * std::log(n / k) / delta + k / (delta * delta), n);
  return finish(inner / std::log(1.0 / delta), "rip_rows_lower");
}

CodeSizeExponents code_size_exponents(double eps, double k, double n) {
  require(eps > 0.0 && eps <= 0.5, "code_size_exponents: need 0 < eps <= 1/2");
  require(k >= 1.0 && k <= eps * n / 2.0,
          "code_size_exponents: need 1 <= k <= eps n / 2");
  return {eps * eps * n, eps * k * std::log(eps * n / (2.0 * k))};
}

const std::vector<std::string>& formula_ids() {
  static const std::vector<std::string> ids = {
      "min_sparsity_from_inequality", "alon_rows_lower", "jl_sparsity_lower",
      "rip_sparsity_lower", "rip_rows_lower", "code_size_exponents"};
  return ids;
}

BoundValue evaluate_formula(std::string_view id,
                            const std::map<std::string, double>& params) {
  const auto get = [&](const char* name) {
    const auto it = params.find(name);
    if (it == params.end()) {
      throw Error(ErrorKind::BadArgs, std::string(id) + " needs parameter '" +
                                          name + "'");
    }
    return it->second;
  };
  if (id == "min_sparsity_from_inequality") {
    const auto s = min_sparsity_from_inequality(get("q"), get("r"));
    return {static_cast<double>(s), std::string(id), false};
  }
  if (id == "alon_rows_lower") return alon_rows_lower(get("eps"), get("N"));
  if (id == "jl_sparsity_lower") {
    return jl_sparsity_lower(get("eps"), get("n"), get("m"));
  }
  if (id == "rip_sparsity_lower") {
    return rip_sparsity_lower(get("k"), get("n"), get("m"));
  }
  if (id == "rip_rows_lower") {
    return rip_rows_lower(get("delta"), get("k"), get("n"));
  }
  if (id == "code_size_exponents") {
    const auto e = code_size_exponents(get("eps"), get("k"), get("n"));
    return {std::min(e.e1, e.e2), std::string(id), true};
  }
  throw Error(ErrorKind::BadArgs, "unknown formula '" + std::string(id) + "'");
}

}  // namespace sparselb
