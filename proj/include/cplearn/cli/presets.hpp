#pragma once

#include <string>
#include <vector>

#include "cplearn/cli/config.hpp"

namespace cplearn::cli {

/// Built-in experiment configs, the same files shipped under presets/.
std::vector<std::string> preset_names();
nlohmann::json preset_source(const std::string& name);
ExperimentConfig load_preset(const std::string& name);

}  // namespace cplearn::cli
