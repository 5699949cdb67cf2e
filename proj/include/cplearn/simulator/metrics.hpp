#pragma once

#include "cplearn/core/coupling.hpp"
#include "cplearn/core/network.hpp"
#include "cplearn/simulator/histogram.hpp"
#include "cplearn/simulator/simulate.hpp"

namespace cplearn {

inline constexpr double kDefaultKlSmoothing = 1e-12;

/// (sum_b mass_b |(psi1 - psi2)(c_b) c_b|^2)^(1/2) over bin centers c_b.
double weighted_l2_distance(const CouplingFunction& psi1, const CouplingFunction& psi2,
                            const DistanceHistogram& hist);

/// sum_b p_b log(p_b / q_b) after adding smoothing to both and renormalizing.
double kl_divergence(const DistanceHistogram& p, const DistanceHistogram& q,
                     double smoothing = kDefaultKlSmoothing);

/// Histogram of a fresh rollout driven by phi_hat, built without storing frames.
DistanceHistogram resimulate_distribution(const NetworkSpec& spec, const CouplingFunction& phi_hat,
                                          const SimulationOptions& options, double domain,
                                          int bins);

}  // namespace cplearn
