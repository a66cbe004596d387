#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfib/broadcast.hpp"
#include "qfib/channels.hpp"
#include "qfib/fisher.hpp"

namespace qfib {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSeedEnvVar = "QFI_BROADCAST_SEED";

// Parsed experiment description. See README for the JSON schema; unknown
// names and malformed grids raise ConfigError with the offending field.
struct ExperimentConfig {
  nlohmann::json raw;  // echoed into reports

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
};

struct RunReport {
  nlohmann::json config;
  std::string version;
  double wall_time_ms = 0.0;
  nlohmann::json results;  // one entry per requested check
  std::map<std::string, bool> verdicts;
  bool all_pass = true;
  std::vector<double> excluded_thetas;

  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
  // serialized form with the wall-time field removed, for determinism checks
  std::string canonical_dump() const;
  bool operator==(const RunReport& other) const;

  std::string to_csv() const;
};

RunReport run(const ExperimentConfig& config);

// One run per value, assigning `values[i]` at the dotted `parameter_path`
// (e.g. "channel.n_parties" or "estimate.n_samples").
std::vector<RunReport> sweep(const ExperimentConfig& config,
                             const std::string& parameter_path,
                             const std::vector<nlohmann::json>& values);

std::vector<std::pair<std::string, std::string>> list_families();
std::vector<std::pair<std::string, std::string>> list_channels();

}  // namespace qfib
