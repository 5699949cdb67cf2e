#include "cplearn/learner/problem.hpp"

#include <vector>

#include "cplearn/core/dynamics.hpp"
#include "cplearn/core/errors.hpp"
#include "cplearn/hypothesis/design.hpp"
#include "cplearn/learner/factor.hpp"

namespace cplearn {

namespace {

void check(const Trajectory& traj, const NetworkSpec& spec) {
  if (traj.n() != spec.n() || traj.d() != spec.d()) {
    throw ConfigError("trajectory does not match the network dimensions");
  }
  if (traj.frames() < 2) throw ConfigError("learning needs at least two states");
  if (traj.stride() != 1) throw ConfigError("learning needs an unthinned trajectory");
}

void remove_mean(Eigen::VectorXd& v, int n, int d) {
  v = project_diagonal(v, n, d).second;
}

// target(k, out) writes the regression target for transition k.
template <class Target>
LearnProblem accumulate(const Trajectory& traj, const NetworkSpec& spec, const BasisFamily& basis,
                        const AssembleOptions& options, Target&& target) {
  check(traj, spec);
  const int q = basis.size();
  const long long T = traj.frames() - 1;
  const Eigen::Index dim = spec.dim();
  LearnProblem p{basis, Eigen::MatrixXd::Zero(q, q), Eigen::VectorXd::Zero(q), 0.0, T,
                 spec.edge_count(), 0, std::nullopt, std::nullopt, {}};
  if (options.dense) {
    p.A = Eigen::MatrixXd(dim * T, q);
    p.b = Eigen::VectorXd(dim * T);
  }
  DesignBuilder design(spec, basis);
  StreamingQR qr(q + 1);
  Eigen::MatrixXd rows(dim, q + 1);
  Eigen::VectorXd v(dim);
  for (long long k = 0; k < T; ++k) {
    p.clamped += design.build(traj.frame(k));
    target(k, v);
    if (options.project_perp) remove_mean(v, spec.n(), spec.d());
    rows.leftCols(q) = design.block();
    rows.col(q) = v;
    qr.add_rows(rows);
    if (options.dense) {
      p.A->middleRows(k * dim, dim) = design.block();
      p.b->segment(k * dim, dim) = v;
    }
  }
  p.factor = qr.factor();
  set_normal_equations(p);
  return p;
}

}  // namespace

void set_normal_equations(LearnProblem& p) {
  const Eigen::Index q = p.factor.cols() - 1;
  const auto a = p.factor.leftCols(q);
  const auto b = p.factor.col(q);
  p.gram = a.transpose() * a;
  p.gram = 0.5 * (p.gram + p.gram.transpose()).eval();
  p.rhs = a.transpose() * b;
  p.target_sq = b.squaredNorm();
}

LearnProblem assemble(const Trajectory& traj, const NetworkSpec& spec, const BasisFamily& basis,
                      const AssembleOptions& options) {
  const double inv_h = 1.0 / traj.h();
  return accumulate(traj, spec, basis, options, [&](long long k, Eigen::VectorXd& v) {
    const auto x0 = traj.frame(k);
    const auto x1 = traj.frame(k + 1);
    for (std::size_t c = 0; c < x0.size(); ++c) v(static_cast<Eigen::Index>(c)) = (x1[c] - x0[c]) * inv_h;
  });
}

LearnProblem assemble_best_approximation(const Trajectory& traj, const NetworkSpec& spec,
                                         const BasisFamily& basis, const CouplingFunction& phi,
                                         const AssembleOptions& options) {
  std::vector<double> scratch;
  return accumulate(traj, spec, basis, options, [&](long long k, Eigen::VectorXd& v) {
    force_into(traj.frame(k), spec, phi, std::span<double>(v.data(), static_cast<std::size_t>(v.size())),
               scratch);
  });
}

}  // namespace cplearn
