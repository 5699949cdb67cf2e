#include "cplearn/hypothesis/coercivity.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "cplearn/core/errors.hpp"
#include "cplearn/hypothesis/design.hpp"

namespace cplearn {

namespace {

std::vector<double> row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

}  // namespace

CoercivityMatrices coercivity_matrices(const BasisFamily& basis, const Trajectory& traj,
                                       const NetworkSpec& spec) {
  if (traj.n() != spec.n() || traj.d() != spec.d()) {
    throw ConfigError("trajectory does not match the network dimensions");
  }
  if (traj.frames() < 1) throw ConfigError("empty trajectory");
  const int q = basis.size();
  CoercivityMatrices out{Eigen::MatrixXd::Zero(q, q), Eigen::MatrixXd::Zero(q, q), 0};
  DesignBuilder design(spec, basis);
  for (long long k = 0; k < traj.frames(); ++k) {
    out.clamped += design.build(traj.frame(k), &out.xi);
    out.upsilon.selfadjointView<Eigen::Lower>().rankUpdate(design.block().transpose());
  }
  out.upsilon = out.upsilon.selfadjointView<Eigen::Lower>();
  const double scale = 1.0 / (static_cast<double>(traj.frames()) * spec.edge_count());
  out.upsilon *= scale;
  out.xi *= scale;
  out.upsilon = 0.5 * (out.upsilon + out.upsilon.transpose()).eval();
  out.xi = 0.5 * (out.xi + out.xi.transpose()).eval();
  return out;
}

CoercivityReport coercivity_constant(const BasisFamily& basis, const Eigen::MatrixXd& upsilon,
                                     const Eigen::MatrixXd& xi, double rank_tol) {
  const Eigen::Index q = xi.rows();
  if (xi.cols() != q || upsilon.rows() != q || upsilon.cols() != q) {
    throw ConfigError("coercivity matrices must be square and of equal size");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> xi_eig(xi);
  const Eigen::VectorXd& lambda = xi_eig.eigenvalues();
  const double lambda_max = lambda.size() ? lambda.maxCoeff() : 0.0;
  if (!(lambda_max > 0.0)) throw SolverError("no informative samples: xi is zero");

  std::vector<Eigen::Index> kept;
  std::vector<Eigen::Index> dropped;
  for (Eigen::Index k = 0; k < q; ++k) {
    (lambda(k) > rank_tol * lambda_max ? kept : dropped).push_back(k);
  }
  Eigen::MatrixXd basis_kept(q, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    basis_kept.col(static_cast<Eigen::Index>(k)) = xi_eig.eigenvectors().col(kept[k]);
  }
  Eigen::MatrixXd excluded(q, static_cast<Eigen::Index>(dropped.size()));
  for (std::size_t k = 0; k < dropped.size(); ++k) {
    excluded.col(static_cast<Eigen::Index>(k)) = xi_eig.eigenvectors().col(dropped[k]);
  }

  const Eigen::MatrixXd xi_s = basis_kept.transpose() * xi * basis_kept;
  const Eigen::MatrixXd up_s = basis_kept.transpose() * upsilon * basis_kept;
  Eigen::LLT<Eigen::MatrixXd> chol(0.5 * (xi_s + xi_s.transpose()));
  if (chol.info() != Eigen::Success) throw SolverError("Cholesky factorization of xi failed");
  const Eigen::MatrixXd l_inv =
      chol.matrixL().solve(Eigen::MatrixXd::Identity(xi_s.rows(), xi_s.cols()));
  Eigen::MatrixXd whitened = l_inv * up_s * l_inv.transpose();
  whitened = 0.5 * (whitened + whitened.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> w_eig(whitened, Eigen::EigenvaluesOnly);
  const double c_h = std::max(0.0, w_eig.eigenvalues().minCoeff());

  return {basis, upsilon, xi, c_h, static_cast<int>(dropped.size()), std::move(excluded)};
}

nlohmann::json to_json(const CoercivityReport& report) {
  return {{"Q", report.basis.size()},
          {"kind", to_string(report.basis.kind())},
          {"c_H", report.c_H},
          {"kernel_dim", report.kernel_dim},
          {"upsilon", row_major(report.upsilon)},
          {"xi", row_major(report.xi)}};
}

}  // namespace cplearn
