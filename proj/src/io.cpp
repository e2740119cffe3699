#include "sparselb/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sparselb/error.hpp"

namespace sparselb::io {
namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    parse_error(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::size_t index_field(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    parse_error(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_error(std::string(what) + " must be finite");
  return v;
}

}  // namespace

json to_json(const SparseMatrix& a) {
  json cols = json::array();
  for (std::size_t j = 0; j < a.cols(); ++j) {
    json col = json::array();
    for (const Entry& e : a.column(j)) col.push_back({e.row, e.value});
    cols.push_back(std::move(col));
  }
  return {{"m", a.rows()}, {"n", a.cols()}, {"cols", std::move(cols)}};
}

SparseMatrix matrix_from_json(const json& j) {
  const std::size_t m = index_field(field(j, "m"), "m");
  const std::size_t n = index_field(field(j, "n"), "n");
  const json& cols = field(j, "cols");
  if (!cols.is_array() || cols.size() != n) {
    parse_error("'cols' must be an array of n columns");
  }
  std::vector<std::vector<Entry>> columns(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (!cols[c].is_array()) parse_error("column must be an array");
    for (const json& pair : cols[c]) {
      if (!pair.is_array() || pair.size() != 2) {
        parse_error("entry must be a [row, value] pair");
      }
      const std::size_t row = index_field(pair[0], "row");
      const double value = finite_number(pair[1], "value");
      if (!columns[c].empty() && columns[c].back().row >= row) {
        parse_error("rows must be strictly increasing in column " +
                    std::to_string(c));
      }
      columns[c].push_back({row, value});
    }
  }
  return {m, n, std::move(columns)};
}

json to_json(const OneSparseMap& a) {
  json sigma = json::array();
  for (auto s : a.sigma) sigma.push_back(static_cast<int>(s));
  return {{"m", a.rows}, {"n", a.cols}, {"a", a.a}, {"sigma", std::move(sigma)}};
}

OneSparseMap map_from_json(const json& j) {
  OneSparseMap map;
  map.rows = index_field(field(j, "m"), "m");
  map.cols = index_field(field(j, "n"), "n");
  const json& a = field(j, "a");
  const json& sigma = field(j, "sigma");
  if (!a.is_array() || !sigma.is_array()) parse_error("'a' and 'sigma' must be arrays");
  for (const json& v : a) map.a.push_back(index_field(v, "a(i)"));
  for (const json& v : sigma) {
    if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
      parse_error("sigma entries must be 1 or -1");
    }
    map.sigma.push_back(static_cast<std::int8_t>(v.get<int>()));
  }
  map.validate();
  return map;
}

json to_json(const Code& c) {
  return {{"q", c.q}, {"t", c.t}, {"words", c.words}};
}

Code code_from_json(const json& j) {
  Code code;
  code.q = index_field(field(j, "q"), "q");
  code.t = index_field(field(j, "t"), "t");
  const json& words = field(j, "words");
  if (!words.is_array()) parse_error("'words' must be an array");
  for (const json& w : words) {
    if (!w.is_array()) parse_error("codeword must be an array");
    std::vector<std::uint32_t> word;
    for (const json& symbol : w) {
      word.push_back(static_cast<std::uint32_t>(index_field(symbol, "symbol")));
    }
    code.words.push_back(std::move(word));
  }
  code.validate();
  return code;
}

json to_json(const RealVector& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json to_json(const Certificate& c) {
  json out = {{"kind", std::string(to_string(c.kind()))}};
  switch (c.kind()) {
    case CertificateKind::none:
      break;
    case CertificateKind::incoherence_pair: {
      const auto& p = c.as<IncoherencePair>();
      out["i"] = p.i;
      out["j"] = p.j;
      out["dot"] = p.dot;
      break;
    }
    case CertificateKind::sparsity_lower_bound: {
      const auto& b = c.as<SparsityBound>();
      out["t"] = b.t;
      out["N"] = b.group_size;
      out["bound_value"] = b.bound_value;
      out["denominator"] = b.denominator;
      out["group"] = b.group;
      out["residual_mass"] = b.residual_mass;
      break;
    }
    case CertificateKind::rip_distortion: {
      const auto& r = c.as<RipDistortion>();
      json support = json::array();
      for (std::size_t i = 0; i < r.v.size(); ++i) {
        if (r.v[i] != 0.0) support.push_back({i, r.v[i]});
      }
      out["v"] = std::move(support);
      out["ratio"] = r.ratio;
      out["scale"] = r.scale;
      break;
    }
    case CertificateKind::kernel_witness: {
      const auto& k = c.as<KernelWitness>();
      json support = json::array();
      for (std::size_t i = 0; i < k.x.size(); ++i) {
        if (k.x[i] != 0.0) support.push_back({i, k.x[i]});
      }
      out["x"] = std::move(support);
      out["dimension"] = k.x.size();
      break;
    }
  }
  return out;
}

json to_json(const RipEstimate& r) {
  return {{"k", r.k},
          {"delta", r.delta},
          {"mode", r.mode == RipMode::exact ? "exact" : "lower_estimate"},
          {"worst_support", r.worst_support},
          {"worst_direction", to_json(r.worst_direction)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& err) {
    parse_error(path.string() + ": " + err.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::BadConfig, "cannot write " + path.string());
  out << text;
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return {buf, result.ptr};
}

}  // namespace sparselb::io
