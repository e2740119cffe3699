#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace sparselb {

enum class Command { construct, measure, witness, bounds, sweep, stream_demo };
enum class OutputFormat { json, csv };

Command parse_command(std::string_view name);
std::string_view to_string(Command command);
OutputFormat parse_format(std::string_view name);

/// One experiment invocation. A config file looks like
///   {"seed": 7, "trials": 500, "params": {...}}
/// and --seed / --out / --format on the command line override it.
struct ExperimentConfig {
  Command command = Command::construct;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::optional<std::filesystem::path> output_path;
  OutputFormat output_format = OutputFormat::json;

  /// Throws BadConfig naming the offending key.
  static ExperimentConfig from_json(Command command, const nlohmann::json& j);
  nlohmann::json echo() const;
};

struct ResultRecord {
  nlohmann::json config;
  std::vector<std::string> csv_header{"param", "value"};
  std::vector<std::vector<std::string>> csv_rows;
  /// Primary JSON output. Sweeps and the stream demo use
  /// {"config", "rows", "summary"}.
  nlohmann::json document;
  bool violation = false;

  /// JSON is dumped with sorted keys; CSV uses '\n' and a header row.
  std::string render(OutputFormat format) const;
};

/// One grid axis: `axis.name` is overwritten with each of `axis.values`;
/// grid point g runs with seed stream (seed, g).
ResultRecord run_sweep(const ExperimentConfig& config);

/// Random turnstile updates maintained through stream_update, checked
/// against apply(A, x) on the accumulated x.
ResultRecord stream_demo(const ExperimentConfig& config);

ResultRecord run_construct(const ExperimentConfig& config);
ResultRecord run_measure(const ExperimentConfig& config);
ResultRecord run_witness(const ExperimentConfig& config);
ResultRecord run_bounds(const ExperimentConfig& config);

ResultRecord run_experiment(const ExperimentConfig& config);

/// Full command line: `<subcommand> [--config p] [--seed u] [--out p]
/// [--format json|csv]`, plus `--formula id --params k=v,...` for bounds.
/// Returns 0 on success, 2 when a witness finds a violation, 1 on error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace sparselb
