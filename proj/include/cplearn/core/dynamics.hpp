#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cplearn/core/coupling.hpp"
#include "cplearn/core/network.hpp"

namespace cplearn {

/// One undirected edge (i < j) at a given state.
///
/// delta is the offset-corrected relative state (x^j - x^i) - (b^j - b^i);
/// r is the inter-agent distance ||x^j - x^i|| at which the coupling acts.
/// Without an offset, r = ||delta||.
struct Displacement {
  int i;
  int j;
  double weight;
  Eigen::VectorXd delta;
  double r;
};

/// Calls fn(edge, delta, r) for every edge of spec at state x, where delta is a
/// span of length d valid only during the call. This is the hot path shared by
/// force evaluation, histogramming and least-squares assembly.
template <class Fn>
void visit_edges(const NetworkSpec& spec, std::span<const double> x, std::vector<double>& scratch,
                 Fn&& fn) {
  const int d = spec.d();
  scratch.resize(static_cast<std::size_t>(d));
  const double* b = spec.offset().data();
  for (const Edge& e : spec.edges()) {
    const std::size_t oi = static_cast<std::size_t>(e.i) * d;
    const std::size_t oj = static_cast<std::size_t>(e.j) * d;
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) {
      const double raw = x[oj + k] - x[oi + k];
      r2 += raw * raw;
      scratch[static_cast<std::size_t>(k)] = raw - (b[oj + k] - b[oi + k]);
    }
    fn(e, std::span<const double>(scratch), std::sqrt(r2));
  }
}

std::vector<Displacement> relative_displacements(const NetworkState& state, const NetworkSpec& spec);

/// (F_phi(x))_i = sum_j k_ij phi(r^ij) delta^ij, i.e. -L_x (x - b).
/// Coupling failures surface as CouplingDomainError naming the edge.
Eigen::VectorXd force(const NetworkState& state, const NetworkSpec& spec,
                      const CouplingFunction& phi);

/// Allocation-free variant of force(); out must have length n*d.
void force_into(std::span<const double> x, const NetworkSpec& spec, const CouplingFunction& phi,
                std::span<double> out, std::vector<double>& scratch);

/// x_{t+1} = x_t + h F_phi(x_t) + h w.
NetworkState step(const NetworkState& state, const NetworkSpec& spec, const CouplingFunction& phi,
                  const Eigen::VectorXd& noise);

struct ContractivityReport {
  double zeta_bound;  ///< conservative bound on the contraction factor on the disagreement space
  bool contractive;   ///< h <= h_max
  double h_max;       ///< 1 / (K~ S0)
};

/// Step-size condition h <= 1/(K~ S0) and a conservative zeta bound from the
/// coupling's range [phi_min, S0] over its domain: the algebraic connectivity
/// of the weight Laplacian bounds lambda_2(L_x) from below, Gershgorin bounds
/// lambda_max(L_x) by 2 K~ S0.
ContractivityReport contractivity(const NetworkSpec& spec, const CouplingFunction& phi);

/// R = 2 (R0 + h omega / (1 - zeta)) with omega the noise bound on ||w_t||.
/// Throws ConfigError for zeta outside [0, 1).
double state_bound(const NetworkSpec& spec, double zeta);

/// Splits x into its consensus part (mean replicated per agent) and the
/// disagreement part x - x_bar.
std::pair<Eigen::VectorXd, Eigen::VectorXd> project_diagonal(const Eigen::VectorXd& x, int n, int d);

/// Scalar state-dependent Laplacian (L_x without the I_d factor).
Eigen::MatrixXd state_laplacian(const NetworkState& state, const NetworkSpec& spec,
                                const CouplingFunction& phi);

/// max(|1 - h lambda_2|, |1 - h lambda_max|) of the given scalar Laplacian.
double spectral_deviation(const Eigen::MatrixXd& laplacian, double h);

}  // namespace cplearn
