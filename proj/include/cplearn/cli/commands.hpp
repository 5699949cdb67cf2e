#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <ostream>
#include <vector>

#include "cplearn/cli/config.hpp"
#include "cplearn/hypothesis/coercivity.hpp"
#include "cplearn/learner/evaluate.hpp"
#include "cplearn/learner/problem.hpp"

namespace cplearn::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitDomain = 3,
  kExitSolver = 4,
};

int exit_code_for(const std::exception& error);

struct RunOptions {
  std::filesystem::path out = "out";
  int threads = 1;
};

/// Runs job(0..count-1) on up to `threads` workers. If any job throws, the
/// exception of the lowest failing index is rethrown after all workers stop.
void run_jobs(std::size_t count, int threads, const std::function<void(std::size_t)>& job);

/// Seed of the rollouts that compare rho with rho_hat for a learning seed.
inline constexpr std::uint64_t kResimSeedOffset = 1000003;

struct LearnRun {
  long long T;
  std::uint64_t seed;
  LearnResult result;
  CoercivityReport coercivity;
  EvaluationReport report;
  long long clamped;
};

/// Simulate, learn, and evaluate one (T, seed) entry without storing frames.
LearnRun learn_once(const ExperimentConfig& config, long long T, std::uint64_t seed);

struct Spread {
  double median;
  double iqr;
};

/// Median and interquartile range with linear interpolation between order statistics.
Spread spread(std::vector<double> values);

/// Trajectory, sidecar and histogram per (T, seed); sweep panels if configured.
void cmd_simulate(const ExperimentConfig& config, const RunOptions& options, std::ostream& log);
/// Report rows per (T, seed), per-T medians, learned couplings, coercivity.
std::vector<LearnRun> cmd_learn(const ExperimentConfig& config, const RunOptions& options,
                                std::ostream& log);
/// Per-T plot data for the first seed and the best approximation in H.
void cmd_figures(const ExperimentConfig& config, const RunOptions& options, std::ostream& log);
/// Coercivity constant per (T, seed).
void cmd_coercivity(const ExperimentConfig& config, const RunOptions& options, std::ostream& log);

}  // namespace cplearn::cli
