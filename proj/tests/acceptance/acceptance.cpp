// Acceptance checks. Each criterion prints one PASS/FAIL line; the exit
// status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "CLI11.hpp"

#include "cplearn/cli/commands.hpp"
#include "cplearn/cli/config.hpp"
#include "cplearn/cli/presets.hpp"
#include "cplearn/core/dynamics.hpp"
#include "cplearn/learner/problem.hpp"
#include "cplearn/learner/stream.hpp"
#include "cplearn/simulator/metrics.hpp"

using namespace cplearn;
using namespace cplearn::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

std::string list(const std::vector<double>& values) {
  std::string s = "[";
  for (std::size_t k = 0; k < values.size(); ++k) s += (k ? ", " : "") + fmt(values[k]);
  return s + "]";
}

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::uint64_t k = 0; k < count; ++k) seeds[k] = k;
  return seeds;
}

ExperimentConfig configure(const std::string& preset, const std::vector<long long>& T_list,
                           const std::vector<std::uint64_t>& seeds, bool kl) {
  json source = preset_source(preset);
  source["T_list"] = T_list;
  source["seeds"] = seeds;
  source["kl"] = kl;
  return parse_config(source);
}

std::vector<LearnRun> learn_all(const ExperimentConfig& config) {
  std::vector<LearnRun> runs;
  for (long long T : config.T_list) {
    for (std::uint64_t seed : config.seeds) runs.push_back(learn_once(config, T, seed));
  }
  return runs;
}

std::vector<double> medians(const std::vector<LearnRun>& runs, const std::vector<long long>& T_list,
                            const std::function<double(const LearnRun&)>& metric) {
  std::vector<double> out;
  for (long long T : T_list) {
    std::vector<double> values;
    for (const auto& run : runs) {
      if (run.T == T) values.push_back(metric(run));
    }
    out.push_back(spread(values).median);
  }
  return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!(v[k] < v[k - 1])) return false;
  }
  return true;
}

bool within_factor(const std::vector<double>& got, const std::vector<double>& want, double factor) {
  for (std::size_t k = 0; k < got.size(); ++k) {
    if (!(got[k] <= factor * want[k] && got[k] >= want[k] / factor)) return false;
  }
  return true;
}

Outcome table_trend(const std::string& preset, const std::vector<double>& paper, bool check_l2) {
  const std::vector<long long> T_list{100, 1000, 10000};
  const auto runs = learn_all(configure(preset, T_list, seed_range(9), false));
  const auto excess = medians(runs, T_list, [](const LearnRun& r) { return r.report.excess_error; });
  const auto l2 = medians(runs, T_list, [](const LearnRun& r) { return r.report.l2_rho_error; });
  bool pass = strictly_decreasing(excess) && within_factor(excess, paper, 3.0);
  std::string detail = "median E_T excess over 9 seeds " + list(excess) + " vs paper " + list(paper);
  if (check_l2) {
    pass = pass && strictly_decreasing(l2);
    detail += ", median L2 error " + list(l2);
  }
  return {pass, detail};
}

Outcome criterion1() { return table_trend("cucker-smale-a", {0.0809, 0.0256, 0.0081}, false); }

Outcome criterion2() { return table_trend("formation-b", {0.2580, 0.0815, 0.0259}, true); }

double coercivity_at(const ExperimentConfig& config, long long T, std::uint64_t seed) {
  StreamingAccumulator acc(config.network, config.basis, config.bins);
  SimulationOptions options;
  options.T = T;
  options.seed = seed;
  options.burn_in = config.burn_in;
  run_simulation(config.network, config.coupling, options,
                 [&](long long, std::span<const double> x) { acc.push(x); });
  const auto m = acc.coercivity();
  return coercivity_constant(config.basis, m.upsilon, m.xi).c_H;
}

Outcome criterion3() {
  const long long T = 100000;
  bool pass = true;
  std::string detail;
  for (const auto& [preset, paper] : {std::pair<std::string, double>{"cucker-smale-a", 3.8469},
                                      std::pair<std::string, double>{"formation-b", 0.0371}}) {
    const auto config = load_preset(preset);
    std::vector<double> values;
    for (std::uint64_t seed = 0; seed < 3; ++seed) values.push_back(coercivity_at(config, T, seed));
    const double c = spread(values).median;
    const bool ok = c > 0.0 && std::abs(c - paper) <= 0.5 * paper;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + preset + " median c_H " + fmt(c) + " over 3 seeds " +
              list(values) + " vs paper " + fmt(paper) + (ok ? "" : " (outside +/-50%)");
  }
  return {pass, detail};
}

Outcome criterion4() {
  const auto config = load_preset("cucker-smale-a");
  SimulationOptions options;
  options.T = 100000;
  options.seed = 0;
  options.burn_in = config.burn_in;
  double max_r = 0.0;
  long long violations = 0;
  std::vector<double> scratch;
  run_simulation(config.network, config.coupling, options, [&](long long, std::span<const double> x) {
    visit_edges(config.network, x, scratch, [&](const Edge&, std::span<const double>, double r) {
      max_r = std::max(max_r, r);
      if (r > config.domain) ++violations;
    });
  });
  return {violations == 0, "max pair distance " + fmt(max_r) + " over 1e5 steps, " +
                               std::to_string(violations) + " edge samples above R = " + fmt(config.domain)};
}

Outcome criterion5() {
  const auto base = load_preset("cucker-smale-a");
  const NetworkSpec spec = base.network.with_noise(NoiseModel::uniform_componentwise(0.0));
  const BasisFamily& basis = base.basis;
  const int q = basis.size();
  Eigen::VectorXd truth(q);
  for (int k = 0; k < q; ++k) truth(k) = 0.02 + 0.01 * std::sin(1.0 + k);
  const auto phi = CouplingFunction::expansion(basis, truth, Extension::Clamp);

  // Agents spread along a segment so every bin is visited at t = 0.
  Eigen::VectorXd x0(spec.dim());
  for (int i = 0; i < spec.n(); ++i) {
    x0(2 * i) = 0.58 * i / (spec.n() - 1);
    x0(2 * i + 1) = 0.002 * ((i * 7) % 5);
  }
  SimulationOptions options;
  options.T = 1000;
  options.burn_in = 0;
  options.initial = x0;
  const auto traj = simulate(spec, phi, options);
  const auto result = solve(assemble(traj, spec, basis));
  const double err = (result.coeffs - truth).cwiseAbs().maxCoeff();
  return {err <= 1e-8 && !result.rank_deficient,
          "max coefficient error " + fmt(err) + " over Q = " + std::to_string(q) + " (" + result.solve_method + ")"};
}

Outcome criterion6() {
  Rng rng(20240611);
  double worst = 0.0;
  int failures = 0;
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 2 + static_cast<int>(rng.uniform() * 5);
    const int d = 1 + static_cast<int>(rng.uniform() * 3);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = rng.uniform(0.2, 2.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (rng.uniform() < 0.5) w(i, j) = w(j, i) = rng.uniform(0.2, 2.0);
      }
    }
    const NetworkSpec spec(n, d, 0.01, w, NoiseModel::uniform_componentwise(rng.uniform(0.5, 5.0)),
                           rng.uniform(0.1, 1.0));
    const auto phi = CouplingFunction::cucker_smale(rng.uniform(0.5, 2.0), rng.uniform(0.0, 1.0), 10.0);
    const int q = 1 + static_cast<int>(rng.uniform() * 5);
    const long long T = 2 + static_cast<long long>(rng.uniform() * 99);
    SimulationOptions options;
    options.T = T;
    options.seed = static_cast<std::uint64_t>(instance);
    options.burn_in = static_cast<long long>(rng.uniform() * 50);
    const auto traj = simulate(spec, phi, options);
    double r_max = 0.0;
    for_each_distance(traj, spec, [&](long long, double r) { r_max = std::max(r_max, r); });
    const auto basis = rng.uniform() < 0.5 ? BasisFamily::indicator(q, 1.05 * r_max)
                                           : BasisFamily::monomial(q, 1.05 * r_max);

    StreamingAccumulator acc(spec, basis, 10);
    for (long long k = 0; k < traj.frames(); ++k) acc.push(traj.frame(k));
    const auto streamed = solve(acc.problem());

    AssembleOptions dense;
    dense.dense = true;
    const auto p = assemble(traj, spec, basis, dense);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(*p.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd oracle = svd.solve(*p.b);
    const double rel = (streamed.coeffs - oracle).norm() / std::max(oracle.norm(), 1e-300);
    worst = std::max(worst, rel);
    if (!(rel <= 1e-8)) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " of 100 instances above 1e-8, worst relative error " + fmt(worst)};
}

Outcome criterion7() {
  const auto config = load_preset("cucker-smale-a");
  const auto& spec = config.network;
  const std::vector<long long> marks{1000, 10000, 100000};
  std::vector<double> first, second;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<DistanceHistogram> prefix;
    DistanceHistogram hist(config.domain, config.bins);
    std::vector<double> scratch;
    SimulationOptions options;
    options.T = marks.back();
    options.seed = seed;
    options.burn_in = config.burn_in;
    run_simulation(spec, config.coupling, options, [&](long long t, std::span<const double> x) {
      if (std::find(marks.begin(), marks.end(), t) != marks.end()) prefix.push_back(hist);
      if (t == options.T) return;
      visit_edges(spec, x, scratch, [&](const Edge&, std::span<const double>, double r) { hist.add(r); });
    });
    first.push_back(kl_divergence(prefix[1], prefix[0]));
    second.push_back(kl_divergence(prefix[2], prefix[1]));
  }
  const double kl_a = spread(first).median, kl_b = spread(second).median;

  // Two rollouts from different initial conditions, no burn-in.
  SimulationOptions a;
  a.T = 100000;
  a.seed = 11;
  a.burn_in = 0;
  a.initial = Eigen::VectorXd::Zero(spec.dim());
  SimulationOptions b = a;
  b.seed = 12;
  Rng rng(5);
  b.initial = sample_initial_state(spec.with_initial_radius(0.25), config.coupling, rng);
  const auto rho_a = resimulate_distribution(spec, config.coupling, a, config.domain, config.bins);
  const auto rho_b = resimulate_distribution(spec, config.coupling, b, config.domain, config.bins);
  const double kl_x0 = kl_divergence(rho_a, rho_b);

  return {kl_b < kl_a && kl_x0 < 1e-2,
          "median KL(rho_10T || rho_T) " + fmt(kl_a) + " at T = 1e3, " + fmt(kl_b) +
              " at T = 1e4; KL between initial conditions at T = 1e5 " + fmt(kl_x0)};
}

Outcome criterion8() {
  double worst = 0.0;
  int checked = 0;
  for (const std::string preset : {"cucker-smale-a", "formation-b"}) {
    const auto runs = learn_all(configure(preset, {100, 1000}, seed_range(3), true));
    for (const auto& run : runs) {
      const double l2 = run.report.l2_rho_error;
      const double gap = std::abs(run.report.nu.integral() - l2 * l2) / std::max(1.0, l2 * l2);
      worst = std::max(worst, gap);
      ++checked;
    }
  }
  return {worst <= 1e-10, std::to_string(checked) + " evaluate runs, worst relative gap " + fmt(worst)};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion9() {
  const auto config = configure("cucker-smale-a", {100, 1000}, {0, 1}, true);
  const auto root = fs::temp_directory_path() / "cplearn_acceptance_determinism";
  fs::remove_all(root);
  std::ostringstream log;
  for (const auto& [dir, threads] : {std::pair<std::string, int>{"a", 1}, std::pair<std::string, int>{"b", 2}}) {
    cmd_simulate(config, {root / dir, threads}, log);
    cmd_learn(config, {root / dir, threads}, log);
  }
  int files = 0, different = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    const auto other = root / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++different;
  }
  fs::remove_all(root);
  return {files > 0 && different == 0,
          std::to_string(files) + " files compared, " + std::to_string(different) + " differ"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,
                                                       criterion4, criterion5, criterion6,
                                                       criterion7, criterion8, criterion9};
  bool all = true;
  for (int k = 1; k <= 9; ++k) {
    if (only && k != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s %s [%.1f s]\n", k, outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(),
                seconds);
    std::fflush(stdout);
    all = all && outcome.pass;
  }
  return all ? 0 : 1;
}
