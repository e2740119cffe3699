#include "sparselb/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "sparselb/bounds.hpp"
#include "sparselb/constructions.hpp"
#include "sparselb/error.hpp"
#include "sparselb/io.hpp"
#include "sparselb/kernels.hpp"
#include "sparselb/measures.hpp"
#include "sparselb/witnesses.hpp"

namespace sparselb {

using nlohmann::json;
using io::format_double;

Command parse_command(std::string_view name) {
  if (name == "construct") return Command::construct;
  if (name == "measure") return Command::measure;
  if (name == "witness") return Command::witness;
  if (name == "bounds") return Command::bounds;
  if (name == "sweep") return Command::sweep;
  if (name == "stream-demo") return Command::stream_demo;
  throw Error(ErrorKind::BadConfig, "unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::construct: return "construct";
    case Command::measure: return "measure";
    case Command::witness: return "witness";
    case Command::bounds: return "bounds";
    case Command::sweep: return "sweep";
    case Command::stream_demo: return "stream-demo";
  }
  return "construct";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw Error(ErrorKind::BadConfig, "format must be json or csv");
}

namespace {

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorKind::BadConfig, what);
}

const json& require_key(const json& params, const std::string& key) {
  if (!params.is_object() || !params.contains(key)) {
    bad_config("missing key '" + key + "'");
  }
  return params.at(key);
}

std::size_t get_size(const json& params, const std::string& key) {
  const json& v = require_key(params, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    bad_config("key '" + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::size_t get_size(const json& params, const std::string& key,
                     std::size_t fallback) {
  return params.contains(key) ? get_size(params, key) : fallback;
}

// Reads several size keys left to right, so the first missing one is reported.
template <std::size_t N>
std::array<std::size_t, N> get_sizes(const json& params,
                                     const std::array<const char*, N>& keys) {
  std::array<std::size_t, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = get_size(params, keys[i]);
  return out;
}

double get_double(const json& params, const std::string& key) {
  const json& v = require_key(params, key);
  if (!v.is_number()) bad_config("key '" + key + "' must be a number");
  return v.get<double>();
}

std::string get_string(const json& params, const std::string& key) {
  const json& v = require_key(params, key);
  if (!v.is_string()) bad_config("key '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::size_t> get_indices(const json& params, const std::string& key) {
  const json& v = require_key(params, key);
  if (!v.is_array()) bad_config("key '" + key + "' must be an array");
  std::vector<std::size_t> out;
  for (const json& x : v) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0) {
      bad_config("key '" + key + "' must hold nonnegative integers");
    }
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

json load_document(const json& v) {
  return v.is_string() ? io::read_json_file(v.get<std::string>()) : v;
}

Code load_code(const json& params, RngSeed seed) {
  if (params.contains("code")) return io::code_from_json(load_document(params["code"]));
  const auto [q, t, count] = get_sizes<3>(params, {"q", "t", "N"});
  const double eps = get_double(params, "eps");
  return random_code(q, t, count, eps, seed, get_size(params, "max_attempts", 10000));
}

SparseMatrix build_family(const json& params, RngSeed seed) {
  const std::string family = get_string(params, "family");
  if (family == "sparse_sign_jl") {
    const auto [m, n, s] = get_sizes<3>(params, {"m", "n", "s"});
    return sample_sparse_sign_jl(m, n, s, seed);
  }
  if (family == "osnap_block") {
    const auto [m, n, s] = get_sizes<3>(params, {"m", "n", "s"});
    return sample_osnap_block(m, n, s, seed);
  }
  if (family == "countsketch") {
    const auto [m, n] = get_sizes<2>(params, {"m", "n"});
    return sample_countsketch(m, n, seed).to_sparse();
  }
  if (family == "code_incoherent") return code_to_incoherent(load_code(params, seed));
  bad_config("key 'family' has unknown value '" + family + "'");
}

SparseMatrix load_matrix(const json& params, RngSeed seed) {
  if (params.contains("matrix")) {
    return io::matrix_from_json(load_document(params["matrix"]));
  }
  if (params.contains("family")) return build_family(params, seed);
  bad_config("missing key 'matrix' or 'family'");
}

OneSparseMap load_map(const json& params, RngSeed seed) {
  if (params.contains("map")) return io::map_from_json(load_document(params["map"]));
  const auto [m, n] = get_sizes<2>(params, {"m", "n"});
  return sample_countsketch(m, n, seed);
}

PatternSearch get_mode(const json& params) {
  if (!params.contains("mode")) return PatternSearch::canonical;
  const std::string mode = get_string(params, "mode");
  if (mode == "canonical") return PatternSearch::canonical;
  if (mode == "exhaustive") return PatternSearch::exhaustive;
  bad_config("key 'mode' must be canonical or exhaustive");
}

std::string scalar_text(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  return v.dump();
}

// Flattens scalar members of an object into param,value rows.
void append_scalars(std::vector<std::vector<std::string>>& rows,
                    const json& object, const std::string& prefix = "") {
  for (const auto& [key, value] : object.items()) {
    if (value.is_primitive()) rows.push_back({prefix + key, scalar_text(value)});
  }
}

ResultRecord record_for(const ExperimentConfig& config) {
  ResultRecord record;
  record.config = config.echo();
  return record;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(Command command, const json& j) {
  ExperimentConfig config;
  config.command = command;
  if (j.is_null()) return config;
  if (!j.is_object()) bad_config("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string() || parse_command(value.get<std::string>()) != command) {
        bad_config("key 'command' does not match the subcommand");
      }
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) bad_config("key 'seed' must be a 64-bit unsigned integer");
      config.seed = value.get<std::uint64_t>();
    } else if (key == "trials") {
      if (!value.is_number_unsigned() || value.get<std::uint64_t>() < 1) {
        bad_config("key 'trials' must be an integer >= 1");
      }
      config.trials = value.get<std::size_t>();
    } else if (key == "params") {
      if (!value.is_object()) bad_config("key 'params' must be an object");
      config.params = value;
    } else if (key == "output_path") {
      if (!value.is_string()) bad_config("key 'output_path' must be a string");
      config.output_path = value.get<std::string>();
    } else if (key == "output_format") {
      if (!value.is_string()) bad_config("key 'output_format' must be a string");
      config.output_format = parse_format(value.get<std::string>());
    } else {
      bad_config("unknown key '" + key + "'");
    }
  }
  return config;
}

json ExperimentConfig::echo() const {
  return {{"command", std::string(to_string(command))},
          {"params", params},
          {"seed", seed},
          {"trials", trials},
          {"output_format", output_format == OutputFormat::json ? "json" : "csv"}};
}

std::string ResultRecord::render(OutputFormat format) const {
  if (format == OutputFormat::json) return document.dump(2) + "\n";
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out += ',';
      out += cells[c];
    }
    out += '\n';
  };
  line(csv_header);
  for (const auto& row : csv_rows) line(row);
  return out;
}

ResultRecord run_construct(const ExperimentConfig& config) {
  const json& p = config.params;
  const RngSeed seed{config.seed};
  const std::string family = get_string(p, "family");
  ResultRecord record = record_for(config);

  if (family == "countsketch") {
    const auto [m, n] = get_sizes<2>(p, {"m", "n"});
    const OneSparseMap map = sample_countsketch(m, n, seed);
    record.document = io::to_json(map);
    record.csv_header = {"col", "row", "value"};
    for (std::size_t i = 0; i < map.cols; ++i) {
      record.csv_rows.push_back({std::to_string(i), std::to_string(map.a[i]),
                                 std::to_string(static_cast<int>(map.sigma[i]))});
    }
    return record;
  }
  if (family == "random_code") {
    const Code code = load_code(p, seed);
    record.document = io::to_json(code);
    record.csv_header = {"word", "position", "symbol"};
    for (std::size_t w = 0; w < code.size(); ++w) {
      for (std::size_t j = 0; j < code.t; ++j) {
        record.csv_rows.push_back({std::to_string(w), std::to_string(j),
                                   std::to_string(code.words[w][j])});
      }
    }
    return record;
  }
  if (family == "spread_vectors") {
    const auto [n, k] = get_sizes<2>(p, {"n", "k"});
    const auto vectors = spread_vectors(load_code(p, seed), n, k);
    json docs = json::array();
    record.csv_header = {"vector", "index", "value"};
    for (std::size_t v = 0; v < vectors.size(); ++v) {
      docs.push_back(io::to_json(vectors[v]));
      for (std::size_t i = 0; i < vectors[v].size(); ++i) {
        if (vectors[v][i] == 0.0) continue;
        record.csv_rows.push_back(
            {std::to_string(v), std::to_string(i), format_double(vectors[v][i])});
      }
    }
    record.document = {{"n", n}, {"vectors", std::move(docs)}};
    return record;
  }
  if (family == "coordinate_subspace") {
    const auto [n, d] = get_sizes<2>(p, {"n", "d"});
    const auto indices = sample_coordinate_subspace(n, d, seed);
    record.document = {{"indices", indices}};
    for (std::size_t i = 0; i < indices.size(); ++i) {
      record.csv_rows.push_back({std::to_string(i), std::to_string(indices[i])});
    }
    return record;
  }
  const SparseMatrix a = build_family(p, seed);
  record.document = io::to_json(a);
  record.csv_header = {"col", "row", "value"};
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (const Entry& e : a.column(j)) {
      record.csv_rows.push_back(
          {std::to_string(j), std::to_string(e.row), format_double(e.value)});
    }
  }
  return record;
}

ResultRecord run_measure(const ExperimentConfig& config) {
  const json& p = config.params;
  const RngSeed seed{config.seed};
  const std::string measure = get_string(p, "measure");
  const SparseMatrix a = load_matrix(p, seed);
  ResultRecord record = record_for(config);
  json value;
  json witness;

  if (measure == "column_norms") {
    value = column_norms(a);
  } else if (measure == "column_sparsity") {
    value = column_sparsity(a);
  } else if (measure == "coherence") {
    value = coherence(a);
    const auto pair = kernels::parallel::max_abs_column_dot(a);
    witness = {{"i", pair.i}, {"j", pair.j}, {"dot", pair.dot}};
  } else if (measure == "rip_exact") {
    const auto r = rip_constant_exact(a, get_size(p, "k"));
    value = r.delta;
    witness = io::to_json(r);
  } else if (measure == "rip_estimate") {
    const std::size_t k = get_size(p, "k");
    const auto r = rip_constant_lower_estimate(
        a, k, get_size(p, "trials", config.trials), seed);
    value = r.delta;
    witness = io::to_json(r);
  } else if (measure == "subspace_distortion") {
    const auto range = subspace_distortion(a, get_indices(p, "indices"));
    value = {{"sigma_min", range.sigma_min}, {"sigma_max", range.sigma_max}};
  } else if (measure == "row_mass_profile") {
    const auto profile = row_mass_profile(a, get_double(p, "x"));
    value = profile.flagged_rows.size();
    json per_row = json::array();
    for (const auto& c : profile.per_row) per_row.push_back({c.count_pos, c.count_neg});
    witness = {{"limit", profile.limit},
               {"flagged_rows", profile.flagged_rows},
               {"per_row", std::move(per_row)}};
  } else if (measure == "scale_profile") {
    const auto sp = scale_profile(a, get_size(p, "column"));
    value = sp.t;
    witness = {{"column", sp.column},
               {"threshold", sp.threshold},
               {"required_count", sp.required_count},
               {"actual_count", sp.actual_count}};
  } else {
    bad_config("key 'measure' has unknown value '" + measure + "'");
  }

  record.document = {{"measure", measure}, {"params", p}, {"value", value}};
  if (!witness.is_null()) record.document["witness"] = witness;
  if (value.is_primitive()) {
    record.csv_rows.push_back({"value", scalar_text(value)});
  } else if (value.is_object()) {
    append_scalars(record.csv_rows, value);
  } else {
    for (std::size_t i = 0; i < value.size(); ++i) {
      record.csv_rows.push_back({"value[" + std::to_string(i) + "]",
                                 scalar_text(value[i])});
    }
  }
  if (witness.is_object()) append_scalars(record.csv_rows, witness, "witness.");
  return record;
}

ResultRecord run_witness(const ExperimentConfig& config) {
  const json& p = config.params;
  const RngSeed seed{config.seed};
  const std::string name = get_string(p, "witness");
  ResultRecord record = record_for(config);
  Certificate cert;
  bool verified = false;

  if (name == "ose_collision") {
    const OneSparseMap map = load_map(p, seed);
    const auto indices =
        p.contains("indices")
            ? get_indices(p, "indices")
            : sample_coordinate_subspace(map.cols, get_size(p, "d"),
                                         RngSeed{Rng::stream(seed, 1)()});
    cert = ose_collision_witness(map, indices);
    verified = verify_certificate(cert, map);
  } else {
    const SparseMatrix a = load_matrix(p, seed);
    double eps = 0.0;
    if (name == "heart") {
      eps = get_double(p, "eps");
      cert = heart_violation_search(a, eps);
    } else if (name == "ttype") {
      eps = get_double(p, "eps");
      cert = ttype_collision_certify(a, eps, get_size(p, "t"));
    } else if (name == "sign_pattern") {
      eps = get_double(p, "eps");
      cert = sign_pattern_certify(a, eps, get_size(p, "t"), get_mode(p));
    } else if (name == "rip_pattern") {
      cert = rip_pattern_witness(a, get_size(p, "k"), get_mode(p));
    } else {
      bad_config("key 'witness' has unknown value '" + name + "'");
    }
    verified = verify_certificate(cert, a, eps);
  }

  const json cert_json = io::to_json(cert);
  record.document = {{"witness", name},
                     {"params", p},
                     {"certificate", cert_json},
                     {"verified", verified}};
  record.violation = cert.is_violation();
  record.csv_rows.push_back({"verified", verified ? "1" : "0"});
  append_scalars(record.csv_rows, cert_json);
  return record;
}

ResultRecord run_bounds(const ExperimentConfig& config) {
  const json& p = config.params;
  const std::string formula = get_string(p, "formula");
  std::map<std::string, double> args;
  const json& values = require_key(p, "params");
  if (!values.is_object()) bad_config("key 'params' must be an object");
  for (const auto& [key, value] : values.items()) {
    if (!value.is_number()) bad_config("bounds parameter '" + key + "' must be a number");
    args[key] = value.get<double>();
  }
  const BoundValue bound = evaluate_formula(formula, args);
  ResultRecord record = record_for(config);
  record.document = {{"formula", formula},
                     {"params", values},
                     {"value", bound.value},
                     {"normalized_constant", bound.normalized_constant}};
  record.csv_rows.push_back({"value", format_double(bound.value)});
  record.csv_rows.push_back(
      {"normalized_constant", bound.normalized_constant ? "1" : "0"});
  return record;
}

namespace {

struct GridPoint {
  double value = 0.0;
  json detail = json::object();
};

GridPoint run_grid_point(const std::string& experiment, const json& params,
                         std::size_t trials, RngSeed seed) {
  if (experiment == "ose_failure") {
    const auto [m, d, n] = get_sizes<3>(params, {"m", "d", "n"});
    const auto report =
        ose_failure_probability(m, d, n, get_size(params, "trials", trials), seed);
    return {report.rate,
            {{"failures", report.failures},
             {"collisions", report.collisions},
             {"trials", report.trials},
             {"mean_heavy_rows", report.mean_heavy_rows}}};
  }
  if (experiment == "bounds") {
    std::map<std::string, double> args;
    for (const auto& [key, value] : require_key(params, "params").items()) {
      if (!value.is_number()) bad_config("bounds parameter '" + key + "' must be a number");
      args[key] = value.get<double>();
    }
    const auto bound = evaluate_formula(get_string(params, "formula"), args);
    return {bound.value, {{"normalized_constant", bound.normalized_constant}}};
  }
  if (experiment == "sign_pattern_bound") {
    const auto [m, n, s, t] = get_sizes<4>(params, {"m", "n", "s", "t"});
    const double eps = get_double(params, "eps");
    const Certificate cert =
        sign_pattern_certify(sample_sparse_sign_jl(m, n, s, seed), eps, t, get_mode(params));
    const double value = cert.kind() == CertificateKind::sparsity_lower_bound
                             ? cert.as<SparsityBound>().bound_value
                             : 0.0;
    return {value, {{"kind", std::string(to_string(cert.kind()))}}};
  }
  if (experiment == "coherence") {
    return {coherence(normalize_columns(build_family(params, seed))), json::object()};
  }
  bad_config("key 'experiment' has unknown value '" + experiment + "'");
}

}  // namespace

ResultRecord run_sweep(const ExperimentConfig& config) {
  const json& p = config.params;
  const std::string experiment = get_string(p, "experiment");
  const json& axis = require_key(p, "axis");
  const std::string axis_name = get_string(axis, "name");
  const json& values = require_key(axis, "values");
  if (!values.is_array() || values.empty()) {
    bad_config("key 'axis.values' must be a nonempty array");
  }

  std::vector<json> grid;
  for (const json& v : values) {
    json params = p;
    params.erase("axis");
    if (experiment == "bounds") {
      if (!params.contains("params")) params["params"] = json::object();
      params["params"][axis_name] = v;
    } else {
      params[axis_name] = v;
    }
    grid.push_back(std::move(params));
  }

  std::vector<GridPoint> points(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    points[g] = run_grid_point(experiment, grid[g], config.trials,
                               RngSeed{Rng::stream(RngSeed{config.seed}, g)()});
  }

  ResultRecord record = record_for(config);
  json rows = json::array();
  double total = 0.0;
  bool nonincreasing = true;
  for (std::size_t g = 0; g < points.size(); ++g) {
    const std::string label = scalar_text(values[g]);
    json row = points[g].detail;
    row["param"] = values[g];
    row["value"] = points[g].value;
    rows.push_back(std::move(row));
    record.csv_rows.push_back({label, format_double(points[g].value)});
    total += points[g].value;
    if (g > 0 && points[g].value > points[g - 1].value) nonincreasing = false;
  }
  const json summary = {{"count", points.size()},
                        {"mean", total / static_cast<double>(points.size())},
                        {"nonincreasing", nonincreasing}};
  record.document = {{"config", record.config}, {"rows", rows}, {"summary", summary}};
  return record;
}

ResultRecord stream_demo(const ExperimentConfig& config) {
  const json& p = config.params;
  const std::size_t m = get_size(p, "m");
  const std::size_t n = get_size(p, "n");
  const std::size_t s = get_size(p, "s");
  const std::size_t updates = get_size(p, "updates");
  const bool negate = p.contains("negate") && p["negate"].is_boolean() &&
                      p["negate"].get<bool>();
  const RngSeed seed{config.seed};

  const SparseMatrix a =
      sample_sparse_sign_jl(m, n, s, RngSeed{Rng::stream(seed, 0)()});
  Rng rng = Rng::stream(seed, 1);
  std::vector<std::pair<std::size_t, double>> stream;
  stream.reserve(updates);
  for (std::size_t u = 0; u < updates; ++u) {
    const std::size_t i = rng.uniform(n);
    stream.emplace_back(i, 2.0 * rng.uniform_real() - 1.0);
  }
  if (negate) {
    for (std::size_t u = 0; u < updates; ++u) {
      stream.emplace_back(stream[u].first, -stream[u].second);
    }
  }

  RealVector sketch(m, 0.0);
  RealVector x(n, 0.0);
  std::size_t touched_min = std::numeric_limits<std::size_t>::max();
  std::size_t touched_max = 0;
  bool touched_matches = true;
  for (const auto& [i, v] : stream) {
    const std::size_t touched = stream_update_in_place(sketch, a, i, v);
    touched_min = std::min(touched_min, touched);
    touched_max = std::max(touched_max, touched);
    touched_matches = touched_matches && touched == a.column_nonzeros(i);
    x[i] += v;
  }
  if (stream.empty()) touched_min = 0;

  const RealVector direct = sparselb::apply(a, x);
  double deviation = 0.0;
  double sketch_max = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    deviation = std::max(deviation, std::abs(direct[r] - sketch[r]));
    sketch_max = std::max(sketch_max, std::abs(sketch[r]));
  }

  ResultRecord record = record_for(config);
  const json summary = {{"updates", stream.size()},
                        {"max_deviation", deviation},
                        {"max_abs_sketch", sketch_max},
                        {"touched_min", touched_min},
                        {"touched_max", touched_max},
                        {"touched_equals_column_nonzeros", touched_matches}};
  json rows = json::array();
  for (const auto& [key, value] : summary.items()) {
    rows.push_back({{"param", key}, {"value", value}});
    record.csv_rows.push_back({key, scalar_text(value)});
  }
  record.document = {{"config", record.config}, {"rows", rows}, {"summary", summary}};
  return record;
}

ResultRecord run_experiment(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::construct: return run_construct(config);
    case Command::measure: return run_measure(config);
    case Command::witness: return run_witness(config);
    case Command::bounds: return run_bounds(config);
    case Command::sweep: return run_sweep(config);
    case Command::stream_demo: return stream_demo(config);
  }
  bad_config("unknown command");
}

namespace {

json parse_kv_params(const std::string& text) {
  json out = json::object();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) bad_config("--params item '" + item + "' is not k=v");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      out[key] = v;
    } catch (const std::exception&) {
      bad_config("--params value for '" + key + "' is not a number");
    }
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Sparse embedding matrices, quality measures and lower-bound witnesses"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  std::string formula;
  std::string kv_params;

  const std::pair<const char*, const char*> commands[] = {
      {"construct", "sample a matrix, map, code or subspace"},
      {"measure", "coherence, RIP constants, distortion and row/scale profiles"},
      {"witness", "search for a certificate; exits 2 on a violation"},
      {"bounds", "evaluate a closed-form bound"},
      {"sweep", "run an experiment over one parameter axis"},
      {"stream-demo", "turnstile updates checked against direct application"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "64-bit seed (decimal)");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    if (std::string_view(name) == "bounds") {
      sub->add_option("--formula", formula, "formula id");
      sub->add_option("--params", kv_params, "comma-separated k=v pairs");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    const CLI::Option* seed_opt = active->get_option("--seed");
    const Command command = parse_command(active->get_name());
    const json file = config_path.empty() ? json() : io::read_json_file(config_path);
    ExperimentConfig config = ExperimentConfig::from_json(command, file);
    if (seed_opt->count() > 0) config.seed = seed;
    if (!out_path.empty()) config.output_path = out_path;
    if (!format.empty()) config.output_format = parse_format(format);
    if (command == Command::bounds) {
      if (!formula.empty()) config.params["formula"] = formula;
      if (!kv_params.empty()) config.params["params"] = parse_kv_params(kv_params);
    } else if (config_path.empty()) {
      bad_config("--config is required for " + std::string(to_string(command)));
    }

    const ResultRecord record = run_experiment(config);
    const std::string text = record.render(config.output_format);
    if (config.output_path) {
      io::write_text_file(*config.output_path, text);
    } else {
      out << text;
    }
    return command == Command::witness && record.violation ? 2 : 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sparselb
