#include "cplearn/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "cplearn/core/dynamics.hpp"
#include "cplearn/core/errors.hpp"
#include "cplearn/learner/serialize.hpp"
#include "cplearn/learner/stream.hpp"
#include "cplearn/simulator/metrics.hpp"
#include "cplearn/simulator/trajectory_io.hpp"

namespace cplearn::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string tag(const ExperimentConfig& config, std::uint64_t seed) {
  return "config=" + hash_hex(config.hash) + " seed=" + std::to_string(seed);
}

std::string run_name(const char* prefix, long long T, std::uint64_t seed, const char* ext) {
  return std::string(prefix) + "_T" + std::to_string(T) + "_s" + std::to_string(seed) + ext;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_json(const fs::path& path, const json& j) { open_out(path) << j.dump(2) << '\n'; }

void warn_if_not_contractive(const ExperimentConfig& config, std::ostream& log) {
  const auto c = contractivity(config.network, config.coupling);
  if (!c.contractive) {
    log << "warning: h = " << config.network.h() << " exceeds h_max = " << c.h_max
        << "; the network is not guaranteed to be contractive\n";
  }
}

struct Job {
  long long T;
  std::uint64_t seed;
};

std::vector<Job> jobs_of(const ExperimentConfig& config) {
  std::vector<Job> jobs;
  for (long long T : config.T_list) {
    for (std::uint64_t seed : config.seeds) jobs.push_back({T, seed});
  }
  return jobs;
}

SimulationOptions sim_options(const ExperimentConfig& config, long long T, std::uint64_t seed) {
  SimulationOptions o;
  o.T = T;
  o.seed = seed;
  o.burn_in = config.burn_in;
  o.thin = config.thin;
  return o;
}

json trajectory_sidecar(const ExperimentConfig& config, const Trajectory& traj,
                        const DistanceHistogram& hist) {
  const auto c = contractivity(config.network, config.coupling);
  json bound = nullptr;
  if (c.zeta_bound < 1.0) bound = state_bound(config.network, c.zeta_bound);
  return {{"config_hash", hash_hex(config.hash)},
          {"seed", traj.seed()},
          {"T", traj.T()},
          {"stride", traj.stride()},
          {"frames", traj.frames()},
          {"burn_in", config.burn_in},
          {"fingerprint", hash_hex(traj.fingerprint())},
          {"contractive", traj.contractive()},
          {"h_max", c.h_max},
          {"zeta_bound", c.zeta_bound},
          {"state_bound", bound},
          {"domain", config.domain},
          {"histogram_overflow", hist.overflow()}};
}

/// Histogram of one rollout at full rate, with frames stored every config.thin steps.
std::pair<Trajectory, DistanceHistogram> simulate_with_histogram(const ExperimentConfig& config,
                                                                 long long T, std::uint64_t seed,
                                                                 double domain) {
  const auto options = sim_options(config, T, seed);
  DistanceHistogram hist(domain, config.bins);
  std::vector<double> data;
  std::vector<double> scratch;
  const bool contractive = run_simulation(
      config.network, config.coupling, options, [&](long long t, std::span<const double> x) {
        if (t % options.thin == 0) data.insert(data.end(), x.begin(), x.end());
        if (t < T) {
          visit_edges(config.network, x, scratch,
                      [&](const Edge&, std::span<const double>, double r) { hist.add(r); });
        }
      });
  Trajectory traj(config.network.n(), config.network.d(), config.network.h(), seed,
                  trajectory_fingerprint(config.network, config.coupling, options), T, options.thin,
                  contractive, std::move(data));
  return {std::move(traj), std::move(hist)};
}

std::string format_value(const json& value) {
  if (value.is_array() && value.size() == 1) return format_value(value.front());
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  std::ostringstream out;
  out << value.get<double>();
  return out.str();
}

}  // namespace

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return kExitConfig;
  if (dynamic_cast<const SimulationError*>(&error)) return kExitDomain;
  if (dynamic_cast<const DomainError*>(&error)) return kExitDomain;
  if (dynamic_cast<const SolverError*>(&error)) return kExitSolver;
  return kExitOther;
}

void run_jobs(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        job(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(workers, count); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

LearnRun learn_once(const ExperimentConfig& config, long long T, std::uint64_t seed) {
  AssembleOptions assemble_options;
  assemble_options.project_perp = config.project_perp;
  StreamingAccumulator acc(config.network, config.basis, config.bins, assemble_options);
  SimulationOptions options = sim_options(config, T, seed);
  options.thin = 1;
  run_simulation(config.network, config.coupling, options,
                 [&](long long, std::span<const double> x) { acc.push(x); });

  const LearnProblem problem = acc.problem();
  LearnResult result = solve(problem);
  const auto matrices = acc.coercivity();
  CoercivityReport coercivity = coercivity_constant(config.basis, matrices.upsilon, matrices.xi);

  EvaluateOptions eval{config.domain};
  eval.bins = config.bins;
  eval.kl = config.kl;
  eval.resim_seed = seed + kResimSeedOffset;
  eval.resim_T = config.resim_T > 0 ? config.resim_T : T;
  eval.burn_in = config.burn_in;
  EvaluationReport report = evaluate(acc.histogram(), result.empirical_error, T, seed,
                                     config.network, config.coupling, result, eval);
  return {T, seed, std::move(result), std::move(coercivity), std::move(report), problem.clamped};
}

Spread spread(std::vector<double> values) {
  if (values.empty()) return {std::nan(""), std::nan("")};
  std::sort(values.begin(), values.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {quantile(0.5), quantile(0.75) - quantile(0.25)};
}

void cmd_simulate(const ExperimentConfig& config, const RunOptions& options, std::ostream& log) {
  fs::create_directories(options.out);
  warn_if_not_contractive(config, log);
  const auto jobs = jobs_of(config);
  run_jobs(jobs.size(), options.threads, [&](std::size_t k) {
    const auto [T, seed] = jobs[k];
    const auto [traj, hist] = simulate_with_histogram(config, T, seed, config.domain);
    write_trajectory(options.out / run_name("traj", T, seed, ".bin"), traj);
    write_json(options.out / run_name("traj", T, seed, ".json"), trajectory_sidecar(config, traj, hist));
    write_histogram_csv(options.out / run_name("hist", T, seed, ".csv"), hist, tag(config, seed));
  });

  struct Member {
    std::size_t panel;
    std::size_t value;
  };
  std::vector<Member> members;
  for (std::size_t p = 0; p < config.sweep.size(); ++p) {
    for (std::size_t v = 0; v < config.sweep[p].values.size(); ++v) members.push_back({p, v});
  }
  run_jobs(members.size(), options.threads, [&](std::size_t k) {
    const SweepPanel& panel = config.sweep[members[k].panel];
    const json& value = panel.values[members[k].value];
    const ExperimentConfig variant = with_override(config, panel.parameter, value);
    const std::uint64_t seed = variant.seeds.front();
    const long long T = variant.T_list.front();
    DistanceHistogram hist(panel.domain, variant.bins);
    std::vector<double> scratch;
    run_simulation(variant.network, variant.coupling, sim_options(variant, T, seed),
                   [&](long long t, std::span<const double> x) {
                     if (t == T) return;
                     visit_edges(variant.network, x, scratch,
                                 [&](const Edge&, std::span<const double>, double r) { hist.add(r); });
                   });
    const std::string name = "sweep_" + panel.name + "_" + format_value(value) + ".csv";
    write_histogram_csv(options.out / name, hist,
                        tag(config, seed) + " " + panel.parameter + "=" + format_value(value) +
                            " overflow=" + std::to_string(hist.overflow()));
  });
  log << "wrote " << jobs.size() << " trajectories and " << members.size() << " sweep histograms to "
      << options.out.string() << '\n';
}

std::vector<LearnRun> cmd_learn(const ExperimentConfig& config, const RunOptions& options,
                                std::ostream& log) {
  fs::create_directories(options.out);
  warn_if_not_contractive(config, log);
  const auto jobs = jobs_of(config);
  std::vector<std::optional<LearnRun>> slots(jobs.size());
  run_jobs(jobs.size(), options.threads, [&](std::size_t k) {
    slots[k] = learn_once(config, jobs[k].T, jobs[k].seed);
  });
  std::vector<LearnRun> runs;
  for (auto& s : slots) runs.push_back(std::move(*s));

  auto report = open_out(options.out / "report.csv");
  report << "# config=" << hash_hex(config.hash) << " name=" << config.name << '\n';
  write_report_header(report);
  for (const auto& run : runs) {
    write_report_row(report, run.report);
    json learned = to_json(run.result);
    learned["config_hash"] = hash_hex(config.hash);
    learned["seed"] = run.seed;
    learned["T"] = run.T;
    learned["c_H"] = run.coercivity.c_H;
    learned["clamped_samples"] = run.clamped;
    write_json(options.out / run_name("learned", run.T, run.seed, ".json"), learned);
    json coercivity = to_json(run.coercivity);
    coercivity["config_hash"] = hash_hex(config.hash);
    coercivity["seed"] = run.seed;
    coercivity["T"] = run.T;
    write_json(options.out / run_name("coercivity", run.T, run.seed, ".json"), coercivity);
  }

  auto summary = open_out(options.out / "summary.csv");
  summary << "# config=" << hash_hex(config.hash) << " name=" << config.name << " seeds=";
  for (std::size_t k = 0; k < config.seeds.size(); ++k) summary << (k ? ";" : "") << config.seeds[k];
  summary << '\n'
          << "T,runs,E_T_median,E_T_iqr,E_T_excess_median,E_T_excess_iqr,l2_rho_error_median,"
             "l2_rho_error_iqr,kl_median,kl_iqr,c_H_median,c_H_iqr\n"
          << std::setprecision(12);
  log << std::setprecision(4) << std::scientific;
  log << "T          E_T_excess  l2_error    kl          c_H\n";
  for (long long T : config.T_list) {
    std::vector<double> e, excess, l2, kl, ch;
    for (const auto& run : runs) {
      if (run.T != T) continue;
      e.push_back(run.report.empirical_error);
      excess.push_back(run.report.excess_error);
      l2.push_back(run.report.l2_rho_error);
      if (run.report.kl) kl.push_back(*run.report.kl);
      ch.push_back(run.coercivity.c_H);
    }
    const Spread se = spread(e), sx = spread(excess), sl = spread(l2), sc = spread(ch);
    summary << T << ',' << e.size() << ',' << se.median << ',' << se.iqr << ',' << sx.median << ','
            << sx.iqr << ',' << sl.median << ',' << sl.iqr << ',';
    if (!kl.empty()) {
      const Spread sk = spread(kl);
      summary << sk.median << ',' << sk.iqr;
      log << std::left << std::setw(11) << T << sx.median << "  " << sl.median << "  " << sk.median
          << "  " << sc.median << '\n';
    } else {
      summary << ',';
      log << std::left << std::setw(11) << T << sx.median << "  " << sl.median << "  -           "
          << sc.median << '\n';
    }
    summary << ',' << sc.median << ',' << sc.iqr << '\n';
  }
  log << std::defaultfloat;
  return runs;
}

void cmd_figures(const ExperimentConfig& config, const RunOptions& options, std::ostream& log) {
  fs::create_directories(options.out);
  const std::uint64_t seed = config.seeds.front();
  const auto& T_list = config.T_list;
  run_jobs(T_list.size() + 1, options.threads, [&](std::size_t k) {
    if (k < T_list.size()) {
      const LearnRun run = learn_once(config, T_list[k], seed);
      auto out = open_out(options.out / run_name("figure", run.T, seed, ".csv"));
      out << "# " << tag(config, seed) << " T=" << run.T << '\n';
      write_nu_table(out, run.report.nu);
      return;
    }
    // Best approximation of phi in H, weighted by the longest rollout.
    const long long T = *std::max_element(T_list.begin(), T_list.end());
    StreamingAccumulator acc(config.network, config.basis, config.bins, {}, &config.coupling);
    SimulationOptions sim = sim_options(config, T, seed);
    sim.thin = 1;
    run_simulation(config.network, config.coupling, sim,
                   [&](long long, std::span<const double> x) { acc.push(x); });
    const LearnResult best = solve(acc.problem());
    const WeightedErrorTable table = pointwise_weighted_error(config.coupling, best.phi_hat, acc.histogram());
    auto out = open_out(options.out / run_name("best_in_H", T, seed, ".csv"));
    out << "# " << tag(config, seed) << " T=" << T << '\n';
    write_nu_table(out, table);
  });
  log << "wrote " << T_list.size() << " figure tables and the best approximation to "
      << options.out.string() << '\n';
}

void cmd_coercivity(const ExperimentConfig& config, const RunOptions& options, std::ostream& log) {
  fs::create_directories(options.out);
  const auto jobs = jobs_of(config);
  std::vector<std::optional<std::pair<CoercivityReport, long long>>> slots(jobs.size());
  run_jobs(jobs.size(), options.threads, [&](std::size_t k) {
    const auto [T, seed] = jobs[k];
    StreamingAccumulator acc(config.network, config.basis, config.bins);
    SimulationOptions sim = sim_options(config, T, seed);
    sim.thin = 1;
    run_simulation(config.network, config.coupling, sim,
                   [&](long long, std::span<const double> x) { acc.push(x); });
    const auto m = acc.coercivity();
    slots[k].emplace(coercivity_constant(config.basis, m.upsilon, m.xi), m.clamped);
  });
  auto table = open_out(options.out / "coercivity.csv");
  table << "# config=" << hash_hex(config.hash) << " name=" << config.name << '\n'
        << "T,seed,c_H,kernel_dim,clamped_samples\n"
        << std::setprecision(12);
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto& [report, clamped] = *slots[k];
    table << jobs[k].T << ',' << jobs[k].seed << ',' << report.c_H << ',' << report.kernel_dim << ','
          << clamped << '\n';
    json j = to_json(report);
    j["config_hash"] = hash_hex(config.hash);
    j["seed"] = jobs[k].seed;
    j["T"] = jobs[k].T;
    write_json(options.out / run_name("coercivity", jobs[k].T, jobs[k].seed, ".json"), j);
    log << "T=" << jobs[k].T << " seed=" << jobs[k].seed << " c_H=" << report.c_H << '\n';
  }
}

}  // namespace cplearn::cli
