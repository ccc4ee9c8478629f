#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fairsample/fairness.hpp"

namespace fairsample {

// One axis of synthetic noise. Kinds: global_depolarizing, gate_depolarizing,
// coherent_overrotation, zz_after_cnot, readout (value = p10, p01 = value * readout_ratio).
struct NoiseSweep {
  std::string kind;
  std::vector<double> values;
  double readout_ratio = 1.0;
};

struct ExperimentConfig {
  std::vector<std::string> problems;
  // Problem -> architectures; problems without an entry use every supported architecture.
  std::map<std::string, std::vector<std::string>> architectures;
  std::vector<std::filesystem::path> backends;
  std::optional<NoiseSweep> noise;
  // Also run one noiseless cell per (problem, architecture, seed).
  bool include_ideal = false;
  long long shots = 40960;
  std::vector<std::uint64_t> seeds{0};
  std::string angles = "table";  // or "grid"
  int grid_resolution = 60;
  int nsrfs_inner = 1000;
  std::filesystem::path output = "results";

  void validate() const;
};

// Relative paths in `backends` are resolved against `base_dir`.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct ResultRow {
  std::string problem;
  std::string architecture;
  std::string backend;
  std::string embedding;
  long long shots = 0;
  long long discarded = 0;
  std::optional<double> gsp;
  std::optional<double> chi2;
  int dof = 0;
  NsrfsResult nsrfs;
  std::optional<double> aggregate_error;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::uint64_t seed = 0;
  std::string error;
};

// Rows in config enumeration order; failures are recorded in `error` and never abort the run.
std::vector<ResultRow> run_experiments(const ExperimentConfig& config, int jobs = 1);

const std::vector<std::string>& csv_columns();
// `comment` lines are written first, each prefixed with "# ".
std::string results_to_csv(const std::vector<ResultRow>& rows, const std::vector<std::string>& comment = {});
std::vector<ResultRow> results_from_csv(std::string_view text);

}  // namespace fairsample
