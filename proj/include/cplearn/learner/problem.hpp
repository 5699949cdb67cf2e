#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "cplearn/core/coupling.hpp"
#include "cplearn/core/network.hpp"
#include "cplearn/hypothesis/basis.hpp"
#include "cplearn/simulator/simulate.hpp"

namespace cplearn {

struct AssembleOptions {
  /// Project the targets v_t onto the disagreement subspace before use.
  bool project_perp = false;
  /// Also materialize A and b (tests and small problems only).
  bool dense = false;
};

/// Normal equations of min ||A rho - b||^2 with A stacked from the design
/// blocks A_t and b from v_t = (x_{t+1} - x_t) / h, t = 0..T-1.
struct LearnProblem {
  BasisFamily basis;
  Eigen::MatrixXd gram;  ///< A^T A
  Eigen::VectorXd rhs;   ///< A^T b
  double target_sq = 0;  ///< b^T b
  long long T = 0;
  int edge_count = 0;
  long long clamped = 0;  ///< edge samples with r > R evaluated at R
  std::optional<Eigen::MatrixXd> A;
  std::optional<Eigen::VectorXd> b;
  /// F with F^T F = [A b]^T [A b], accumulated by streaming QR. When empty,
  /// solve() derives one from gram, rhs and target_sq.
  Eigen::MatrixXd factor;
};

/// Fills gram, rhs and target_sq of p from p.factor.
void set_normal_equations(LearnProblem& p);

LearnProblem assemble(const Trajectory& traj, const NetworkSpec& spec, const BasisFamily& basis,
                      const AssembleOptions& options = {});

/// Same design, noise-free targets F_phi(x_t): the rho_T-weighted projection of
/// phi onto the span of the basis.
LearnProblem assemble_best_approximation(const Trajectory& traj, const NetworkSpec& spec,
                                         const BasisFamily& basis, const CouplingFunction& phi,
                                         const AssembleOptions& options = {});

struct LearnResult {
  Eigen::VectorXd coeffs;
  CouplingFunction phi_hat;  ///< basis expansion, constant beyond R
  double empirical_error;    ///< E_T(phi_hat) from the normal equations
  double residual_norm;      ///< ||A^T A rho - A^T b||
  bool rank_deficient;
  std::string solve_method;  ///< "direct" or "pseudo-inverse"
};

inline constexpr double kConditionGuard = 1e12;
inline constexpr double kPinvTol = 1e-13;

/// Minimum-norm least-squares solution. Columns are scaled to unit diagonal;
/// a direct solve through the factor is used when the scaled Gram matrix has
/// condition number <= kConditionGuard, a spectral pseudo-inverse otherwise.
/// Both work on F rather than A^T A, so accuracy tracks cond(A), not cond(A)^2.
/// Zero columns get coefficient 0.
LearnResult solve(const LearnProblem& problem);

}  // namespace cplearn
