#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cplearn/cli/commands.hpp"
#include "cplearn/cli/config.hpp"
#include "cplearn/cli/presets.hpp"
#include "cplearn/core/errors.hpp"

namespace cli = cplearn::cli;

namespace {

struct Common {
  std::string config;
  std::string preset;
  std::string out = "out";
  int threads = 1;
  std::vector<std::uint64_t> seeds;
  std::vector<long long> T;
  int bins = 0;
  long long burn_in = -1;
};

void add_common(CLI::App* cmd, Common& c) {
  auto* config = cmd->add_option("--config", c.config, "Experiment config (JSON)");
  auto* preset = cmd->add_option("--preset", c.preset, "Built-in preset name");
  config->excludes(preset);
  cmd->add_option("--seed", c.seeds, "Seed(s), replacing the config's list");
  cmd->add_option("--T", c.T, "Trajectory length(s), replacing the config's list");
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--bins", c.bins, "Histogram bins")->check(CLI::PositiveNumber);
  cmd->add_option("--burn-in", c.burn_in, "Discarded steps before recording")->check(CLI::NonNegativeNumber);
}

cli::ExperimentConfig resolve(const Common& c) {
  if (c.config.empty() == c.preset.empty()) {
    throw cplearn::ConfigError("exactly one of --config and --preset is required");
  }
  nlohmann::json source;
  if (!c.preset.empty()) {
    source = cli::preset_source(c.preset);
  } else {
    source = cli::load_config(c.config).source;
  }
  if (!c.seeds.empty()) source["seeds"] = c.seeds;
  if (!c.T.empty()) source["T_list"] = c.T;
  if (c.bins > 0) source["bins"] = c.bins;
  if (c.burn_in >= 0) source["burn_in"] = c.burn_in;
  return cli::parse_config(source);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate stochastic agent networks and learn their coupling from one trajectory"};
  app.require_subcommand(1);

  Common common;
  auto* simulate = app.add_subcommand("simulate", "Write trajectories, sidecars and distance histograms");
  auto* learn = app.add_subcommand("learn", "Learn the coupling and write report tables");
  auto* figures = app.add_subcommand("figures", "Write plot data for learned couplings");
  auto* coercivity = app.add_subcommand("coercivity", "Estimate the coercivity constant");
  for (auto* cmd : {simulate, learn, figures, coercivity}) add_common(cmd, common);

  auto* presets = app.add_subcommand("presets", "List or print the built-in presets");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "List preset names");
  std::string show_name;
  auto* show = presets->add_subcommand("show", "Print a preset as JSON");
  show->add_option("name", show_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  try {
    if (presets->parsed()) {
      if (show->parsed()) {
        std::cout << cli::preset_source(show_name).dump(2) << '\n';
      } else {
        for (const auto& name : cli::preset_names()) {
          std::cout << name << "  " << cli::preset_source(name).value("description", "") << '\n';
        }
      }
      return cli::kExitOk;
    }
    const cli::ExperimentConfig config = resolve(common);
    const cli::RunOptions options{common.out, common.threads};
    if (simulate->parsed()) cli::cmd_simulate(config, options, std::cout);
    if (learn->parsed()) cli::cmd_learn(config, options, std::cout);
    if (figures->parsed()) cli::cmd_figures(config, options, std::cout);
    if (coercivity->parsed()) cli::cmd_coercivity(config, options, std::cout);
    return cli::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_for(e);
  }
}
