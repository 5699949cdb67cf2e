#include "cplearn/core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cplearn/core/errors.hpp"

namespace cplearn {

namespace {

double coupling_at(const CouplingFunction& phi, const Edge& e, double r) {
  try {
    return phi(r);
  } catch (const DomainError& err) {
    throw CouplingDomainError(e.i, e.j, r, err.what());
  }
}

Eigen::VectorXd laplacian_spectrum(const Eigen::MatrixXd& laplacian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

std::vector<Displacement> relative_displacements(const NetworkState& state, const NetworkSpec& spec) {
  if (state.x.size() != spec.dim()) throw ConfigError("state length must be n*d");
  std::vector<Displacement> out;
  out.reserve(spec.edges().size());
  std::vector<double> scratch;
  visit_edges(spec, std::span<const double>(state.x.data(), static_cast<std::size_t>(state.x.size())),
              scratch, [&](const Edge& e, std::span<const double> delta, double r) {
                out.push_back({e.i, e.j, e.weight,
                               Eigen::Map<const Eigen::VectorXd>(delta.data(),
                                                                 static_cast<Eigen::Index>(delta.size())),
                               r});
              });
  return out;
}

void force_into(std::span<const double> x, const NetworkSpec& spec, const CouplingFunction& phi,
                std::span<double> out, std::vector<double>& scratch) {
  std::fill(out.begin(), out.end(), 0.0);
  const int d = spec.d();
  visit_edges(spec, x, scratch, [&](const Edge& e, std::span<const double> delta, double r) {
    const double c = e.weight * coupling_at(phi, e, r);
    const std::size_t oi = static_cast<std::size_t>(e.i) * d;
    const std::size_t oj = static_cast<std::size_t>(e.j) * d;
    for (int k = 0; k < d; ++k) {
      const double f = c * delta[static_cast<std::size_t>(k)];
      out[oi + k] += f;
      out[oj + k] -= f;
    }
  });
}

Eigen::VectorXd force(const NetworkState& state, const NetworkSpec& spec, const CouplingFunction& phi) {
  if (state.x.size() != spec.dim()) throw ConfigError("state length must be n*d");
  Eigen::VectorXd out(spec.dim());
  std::vector<double> scratch;
  force_into(std::span<const double>(state.x.data(), static_cast<std::size_t>(state.x.size())), spec,
             phi, std::span<double>(out.data(), static_cast<std::size_t>(out.size())), scratch);
  return out;
}

NetworkState step(const NetworkState& state, const NetworkSpec& spec, const CouplingFunction& phi,
                  const Eigen::VectorXd& noise) {
  if (noise.size() != spec.dim()) throw ConfigError("noise sample must have length n*d");
  return {state.x + spec.h() * (force(state, spec, phi) + noise), state.t + 1};
}

ContractivityReport contractivity(const NetworkSpec& spec, const CouplingFunction& phi) {
  const double degree = spec.max_weighted_degree();
  const double s0 = phi.sup_bound();
  const double h = spec.h();
  const double h_max = s0 > 0.0 ? 1.0 / (degree * s0) : std::numeric_limits<double>::infinity();

  // Weight Laplacian L_K; L_x = sum_e k_e phi(r_e) (edge Laplacian) lies
  // between phi_min L_K and S0 L_K in the Loewner order when phi >= 0.
  const auto n = spec.n();
  Eigen::MatrixXd weight_laplacian = -spec.weights();
  weight_laplacian.diagonal() = spec.weights().rowwise().sum();
  const double lambda2 = n > 1 ? laplacian_spectrum(weight_laplacian)(1) : 0.0;

  const double phi_min = std::max(0.0, phi.inf_bound());
  const double lower = 1.0 - h * phi_min * lambda2;
  const double upper = 1.0 - h * s0 * 2.0 * degree;
  const double zeta = phi.inf_bound() < 0.0 ? std::numeric_limits<double>::infinity()
                                            : std::max(std::abs(lower), std::abs(upper));
  return {zeta, h <= h_max, h_max};
}

double state_bound(const NetworkSpec& spec, double zeta) {
  if (!(zeta >= 0.0 && zeta < 1.0)) {
    std::ostringstream msg;
    msg << "state bound needs a contraction factor in [0, 1), got " << zeta;
    throw ConfigError(msg.str());
  }
  const double omega = spec.noise().bound(spec.n(), spec.d());
  return 2.0 * (spec.initial_radius() + spec.h() * omega / (1.0 - zeta));
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> project_diagonal(const Eigen::VectorXd& x, int n, int d) {
  if (x.size() != static_cast<Eigen::Index>(n) * d) throw ConfigError("state length must be n*d");
  const Eigen::Map<const Eigen::MatrixXd> agents(x.data(), d, n);
  const Eigen::VectorXd mean = agents.rowwise().mean();
  Eigen::VectorXd bar(x.size());
  Eigen::Map<Eigen::MatrixXd>(bar.data(), d, n) = mean.replicate(1, n);
  Eigen::VectorXd perp = x - bar;
  return {std::move(bar), std::move(perp)};
}

Eigen::MatrixXd state_laplacian(const NetworkState& state, const NetworkSpec& spec,
                                const CouplingFunction& phi) {
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(spec.n(), spec.n());
  std::vector<double> scratch;
  visit_edges(spec, std::span<const double>(state.x.data(), static_cast<std::size_t>(state.x.size())),
              scratch, [&](const Edge& e, std::span<const double>, double r) {
                const double c = e.weight * coupling_at(phi, e, r);
                laplacian(e.i, e.j) -= c;
                laplacian(e.j, e.i) -= c;
                laplacian(e.i, e.i) += c;
                laplacian(e.j, e.j) += c;
              });
  return laplacian;
}

double spectral_deviation(const Eigen::MatrixXd& laplacian, double h) {
  if (laplacian.rows() < 2) return 0.0;
  const Eigen::VectorXd lambda = laplacian_spectrum(laplacian);
  return std::max(std::abs(1.0 - h * lambda(1)), std::abs(1.0 - h * lambda(lambda.size() - 1)));
}

}  // namespace cplearn
