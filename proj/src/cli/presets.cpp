#include "cplearn/cli/presets.hpp"

#include "cplearn/cli/preset_data.hpp"
#include "cplearn/core/errors.hpp"

namespace cplearn::cli {

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : generated::kPresets) names.emplace_back(name);
  return names;
}

nlohmann::json preset_source(const std::string& name) {
  for (const auto& [preset, text] : generated::kPresets) {
    if (preset == name) return nlohmann::json::parse(text);
  }
  throw ConfigError("unknown preset '" + name + "'");
}

ExperimentConfig load_preset(const std::string& name) { return parse_config(preset_source(name)); }

}  // namespace cplearn::cli
