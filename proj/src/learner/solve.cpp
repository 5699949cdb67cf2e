#include "cplearn/learner/problem.hpp"

#include <cmath>
#include <vector>

#include <Eigen/SVD>

#include "cplearn/core/errors.hpp"
#include "cplearn/learner/factor.hpp"

namespace cplearn {

LearnResult solve(const LearnProblem& problem) {
  const Eigen::Index q = problem.basis.size();
  const Eigen::MatrixXd f = problem.factor.size()
                                ? problem.factor
                                : normal_equation_factor(problem.gram, problem.rhs, problem.target_sq);
  if (f.cols() != q + 1) throw SolverError("malformed least-squares problem");
  const auto a = f.leftCols(q);
  const auto b = f.col(q);

  // Columns with zero norm are identically zero in A.
  std::vector<Eigen::Index> active;
  Eigen::VectorXd norms(q);
  for (Eigen::Index k = 0; k < q; ++k) {
    norms(k) = a.col(k).norm();
    if (norms(k) > 0.0) active.push_back(k);
  }
  if (active.empty()) throw SolverError("no informative samples: A^T A is zero");
  const auto m = static_cast<Eigen::Index>(active.size());
  Eigen::VectorXd scale(m);
  Eigen::MatrixXd as(f.rows(), m);
  for (Eigen::Index c = 0; c < m; ++c) {
    scale(c) = 1.0 / norms(active[c]);
    as.col(c) = a.col(active[c]) * scale(c);
  }

  // Singular values of the scaled factor are the square roots of the
  // eigenvalues of the scaled Gram matrix.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(as, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double s_max = s(0);
  const double s_min = s(m - 1);
  const bool well_conditioned = s_min > 0.0 && (s_max / s_min) * (s_max / s_min) <= kConditionGuard;

  Eigen::VectorXd raw(m);
  std::string method;
  if (well_conditioned) {
    raw = scale.asDiagonal() * as.householderQr().solve(b);
    method = "direct";
  } else {
    Eigen::VectorXd proj = svd.matrixU().transpose() * b;
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (s(k) * s(k) > kPinvTol * s_max * s_max) {
        proj(k) /= s(k);
      } else {
        proj(k) = 0.0;
        null_cols.push_back(k);
      }
    }
    raw = scale.asDiagonal() * (svd.matrixV() * proj);
    // null(A) = S null(A S); remove that component to get the raw-coordinate
    // minimum-norm solution.
    if (!null_cols.empty()) {
      Eigen::MatrixXd null_basis(m, static_cast<Eigen::Index>(null_cols.size()));
      for (std::size_t c = 0; c < null_cols.size(); ++c) {
        null_basis.col(static_cast<Eigen::Index>(c)) = scale.asDiagonal() * svd.matrixV().col(null_cols[c]);
      }
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(null_basis);
      const Eigen::MatrixXd orth = qr.householderQ() * Eigen::MatrixXd::Identity(m, null_basis.cols());
      raw -= orth * (orth.transpose() * raw);
    }
    method = "pseudo-inverse";
  }

  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(q);
  for (Eigen::Index c = 0; c < m; ++c) coeffs(active[c]) = raw(c);

  const Eigen::VectorXd residual = a * coeffs - b;
  const double error =
      residual.squaredNorm() / (static_cast<double>(problem.T) * static_cast<double>(problem.edge_count));

  return {coeffs,
          CouplingFunction::expansion(problem.basis, coeffs, Extension::Clamp),
          error,
          (a.transpose() * residual).norm(),
          !well_conditioned || m < q,
          std::move(method)};
}

}  // namespace cplearn
