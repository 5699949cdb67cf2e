#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cplearn/core/coupling.hpp"
#include "cplearn/core/network.hpp"
#include "cplearn/hypothesis/basis.hpp"

namespace cplearn::cli {

/// One panel of a distribution sweep: the value at `parameter` (a JSON
/// pointer into the config) takes each of `values` in turn.
struct SweepPanel {
  std::string name;
  std::string parameter;
  std::vector<nlohmann::json> values;
  double domain;
};

/// Fully validated experiment. `source` is the canonical JSON it was built
/// from (after command-line overrides) and `hash` its FNV-1a digest.
struct ExperimentConfig {
  nlohmann::json source;
  std::uint64_t hash;
  std::string name;
  NetworkSpec network;
  CouplingFunction coupling;
  double domain;
  BasisFamily basis;
  std::vector<long long> T_list;
  std::vector<std::uint64_t> seeds;
  int bins;
  long long burn_in;
  long long thin;
  bool kl;
  long long resim_T;  ///< length of the KL rollouts; 0 means the learning T
  bool project_perp;
  std::vector<SweepPanel> sweep;
};

/// Throws ConfigError with the offending key on any invalid or missing value.
ExperimentConfig parse_config(const nlohmann::json& source);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Returns a copy with the value at a JSON pointer replaced, re-validated.
ExperimentConfig with_override(const ExperimentConfig& config, const std::string& pointer,
                               const nlohmann::json& value);

std::string hash_hex(std::uint64_t hash);

}  // namespace cplearn::cli
