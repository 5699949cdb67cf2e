#pragma once

#include <cstdint>
#include <optional>

#include "cplearn/learner/errors.hpp"
#include "cplearn/learner/problem.hpp"
#include "cplearn/simulator/histogram.hpp"

namespace cplearn {

struct EvaluateOptions {
  double domain;                ///< histogram range R
  int bins = 100;
  bool kl = true;               ///< resimulate and compare distributions
  std::uint64_t resim_seed = 0;
  long long resim_T = 10000;
  long long burn_in = 1000;
};

struct EvaluationReport {
  long long T;
  std::uint64_t seed;
  double empirical_error;  ///< raw E_T(phi_hat)
  double noise_floor;
  double excess_error;     ///< |E_T - sigma^2/N_e|
  double l2_rho_error;     ///< ||phi - phi_hat|| weighted by rho_T
  std::optional<double> kl;  ///< D_KL(rho || rho_hat), both from resim_seed
  DistanceHistogram rho_T;
  WeightedErrorTable nu;
};

/// One Table-1/Table-2 row for a learned coupling. rho is the histogram of a
/// fresh rollout under phi_true, rho_hat the same rollout (same seed) under
/// phi_hat. kl is +infinity when the phi_hat rollout diverges.
EvaluationReport evaluate(const Trajectory& traj, const NetworkSpec& spec,
                          const CouplingFunction& phi_true, const LearnResult& result,
                          const EvaluateOptions& options);

/// Same report from quantities accumulated while streaming: the histogram of
/// the learning rollout and E_T(phi_hat) from the normal equations.
EvaluationReport evaluate(DistanceHistogram rho_T, double empirical_error, long long T,
                          std::uint64_t seed, const NetworkSpec& spec,
                          const CouplingFunction& phi_true, const LearnResult& result,
                          const EvaluateOptions& options);

}  // namespace cplearn
