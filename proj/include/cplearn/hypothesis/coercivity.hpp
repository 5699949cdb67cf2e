#pragma once

#include "json.hpp"

#include <Eigen/Dense>

#include "cplearn/core/network.hpp"
#include "cplearn/hypothesis/basis.hpp"
#include "cplearn/simulator/simulate.hpp"

namespace cplearn {

inline constexpr double kDefaultRankTol = 1e-10;

struct CoercivityMatrices {
  Eigen::MatrixXd upsilon;
  Eigen::MatrixXd xi;
  long long clamped = 0;  ///< edge samples with r > R evaluated at R
};

struct CoercivityReport {
  BasisFamily basis;
  Eigen::MatrixXd upsilon;
  Eigen::MatrixXd xi;
  double c_H;
  int kernel_dim;
  /// Columns span ker(xi) at the rank tolerance.
  Eigen::MatrixXd excluded_directions;
};

/// Time averages over every stored frame:
///   upsilon = (1/N_e) mean_t sum_i (sum_j k_ij psi(r^ij) r^ij)^T (...),
///   xi      = (1/N_e) mean_t sum_edges psi(r) psi(r)^T r^2.
/// The expectation under the stationary law is replaced by the trajectory average.
CoercivityMatrices coercivity_matrices(const BasisFamily& basis, const Trajectory& traj,
                                       const NetworkSpec& spec);

/// Smallest generalized eigenvalue of (upsilon, xi) on the span of the xi
/// eigenvectors with eigenvalue > rank_tol * lambda_max(xi).
CoercivityReport coercivity_constant(const BasisFamily& basis, const Eigen::MatrixXd& upsilon,
                                     const Eigen::MatrixXd& xi, double rank_tol = kDefaultRankTol);

/// {Q, kind, c_H, kernel_dim, upsilon, xi} with row-major matrices.
nlohmann::json to_json(const CoercivityReport& report);

}  // namespace cplearn
