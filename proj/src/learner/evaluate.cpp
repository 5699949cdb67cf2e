#include "cplearn/learner/evaluate.hpp"

#include <cmath>
#include <limits>

#include "cplearn/core/errors.hpp"
#include "cplearn/simulator/metrics.hpp"

namespace cplearn {

EvaluationReport evaluate(const Trajectory& traj, const NetworkSpec& spec,
                          const CouplingFunction& phi_true, const LearnResult& result,
                          const EvaluateOptions& options) {
  return evaluate(histogram(traj, spec, options.domain, options.bins),
                  empirical_error(traj, spec, result.phi_hat), traj.T(), traj.seed(), spec, phi_true,
                  result, options);
}

EvaluationReport evaluate(DistanceHistogram rho_T, double empirical_error, long long T,
                          std::uint64_t seed, const NetworkSpec& spec,
                          const CouplingFunction& phi_true, const LearnResult& result,
                          const EvaluateOptions& options) {
  if (rho_T.bins() != options.bins || rho_T.domain() != options.domain) {
    throw ConfigError("histogram grid does not match the evaluation options");
  }
  const double floor = noise_floor(spec);

  std::optional<double> kl;
  if (options.kl) {
    SimulationOptions sim;
    sim.T = options.resim_T;
    sim.seed = options.resim_seed;
    sim.burn_in = options.burn_in;
    const auto rho = resimulate_distribution(spec, phi_true, sim, options.domain, options.bins);
    try {
      const auto rho_hat =
          resimulate_distribution(spec, result.phi_hat, sim, options.domain, options.bins);
      kl = kl_divergence(rho, rho_hat);
    } catch (const SimulationError&) {
      kl = std::numeric_limits<double>::infinity();
    }
  }

  auto nu = pointwise_weighted_error(phi_true, result.phi_hat, rho_T);
  const double l2 = weighted_l2_distance(phi_true, result.phi_hat, rho_T);
  return {T, seed, empirical_error, floor, std::abs(empirical_error - floor), l2, kl,
          std::move(rho_T), std::move(nu)};
}

}  // namespace cplearn
