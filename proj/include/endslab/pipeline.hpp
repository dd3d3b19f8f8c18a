#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "endslab/estimates.hpp"
#include "endslab/model.hpp"
#include "endslab/solitons.hpp"

namespace endslab {

struct Tolerances {
  double tol_lin = 1e-10;
  double tol_limit = 1e-6;
  double rank_tol = 1e-8;
  double fit_tol = 0.25;
  double quad_tol = 1e-9;
};

/// Configuration of a single run: a model spec or a soliton name, the
/// pipelines to execute, tolerances, and the output location.
struct RunConfig {
  std::string name = "run";
  std::optional<ModelSpec> model;
  std::optional<std::string> soliton;
  std::vector<std::string> pipeline;  // of: ends growth moser alpha dimension soliton
  Tolerances tol;
  double nu = 1.5;
  double tail_fraction = 0.3;
  std::vector<double> alpha_q = {1.0, 2.0, 3.0};
  double growth_q = 1.2;
  double chi_theta = 1.0;
  double r0_norm = 0.0;  // 0 -> R0
  double r0_diag = 0.0;  // 0 -> 4 R0
  std::string output_dir = "out";
  std::uint64_t seed = 12345;
  int jobs = 0;  // 0 -> ENDSLAB_JOBS or hardware

  static RunConfig from_json(const nlohmann::json& j, const std::string& name);
  nlohmann::ordered_json to_json() const;
};

struct PipelineResult {
  int exit_code = 0;  // 0 pass, 2 check failure
  nlohmann::ordered_json report;
  std::string report_md;
  std::vector<std::pair<std::string, std::string>> series;  // filename -> CSV body
};

PipelineResult run_pipeline(const RunConfig& config);

/// Write report.json, report.md, series/*.csv and run_meta.json (the only
/// file carrying timestamps) under out_dir.
void write_outputs(const PipelineResult& result, const std::string& out_dir);

const std::vector<std::string>& model_preset_names();
RunConfig preset_run_config(const std::string& name);  // throws ConfigError if unknown

/// Resolve a config file path, a model preset name, or a soliton name.
RunConfig load_run_config(const std::string& path_or_name);

std::string list_text();

struct CliOverrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

/// `run` subcommand body: 0 pass, 1 usage/config error, 2 check failure.
int run_command(const std::string& config_path_or_name, const CliOverrides& overrides);

}  // namespace endslab
