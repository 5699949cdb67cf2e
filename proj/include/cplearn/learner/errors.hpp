#pragma once

#include <vector>

#include "cplearn/core/coupling.hpp"
#include "cplearn/core/network.hpp"
#include "cplearn/simulator/histogram.hpp"
#include "cplearn/simulator/simulate.hpp"

namespace cplearn {

/// E_T(psi) = (1/(T N_e)) sum_t ||(x_{t+1} - x_t)/h - F_psi(x_t)||^2.
double empirical_error(const Trajectory& traj, const NetworkSpec& spec, const CouplingFunction& psi);

/// sigma^2 / N_e with sigma^2 = n Tr(Sigma): the limit of E_T(phi).
double noise_floor(const NetworkSpec& spec);

struct WeightedErrorTable {
  std::vector<double> centers;
  std::vector<double> mass;
  std::vector<double> phi;
  std::vector<double> phi_hat;
  std::vector<double> nu;        ///< |(phi - phi_hat)(c) c|^2 rho(c), rho = mass / width
  std::vector<double> sq_error;  ///< (phi - phi_hat)^2(c)
  double width;

  /// sum_b nu_b * width; equals weighted_l2_distance^2.
  double integral() const;
};

WeightedErrorTable pointwise_weighted_error(const CouplingFunction& phi,
                                            const CouplingFunction& phi_hat,
                                            const DistanceHistogram& hist);

}  // namespace cplearn
