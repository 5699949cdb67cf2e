#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cplearn/core/random.hpp"

namespace cplearn {

enum class NoiseKind {
  UniformComponentwise,  ///< every scalar component uniform on [-omega, omega]
  UniformBall,           ///< every agent's d-vector uniform in the ball of radius omega
};

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

/// Bounded, zero-mean, i.i.d. process noise w_t with per-agent covariance
/// Sigma = variance * I_d.
class NoiseModel {
 public:
  NoiseModel(NoiseKind kind, double omega);

  static NoiseModel uniform_componentwise(double omega) {
    return NoiseModel(NoiseKind::UniformComponentwise, omega);
  }
  static NoiseModel uniform_ball(double omega) { return NoiseModel(NoiseKind::UniformBall, omega); }

  NoiseKind kind() const { return kind_; }
  double omega() const { return omega_; }

  /// Variance of one scalar component (diagonal entry of Sigma).
  double component_variance(int d) const;

  /// Almost-sure bound on the stacked vector norm ||w_t|| for n agents in R^d.
  double bound(int n, int d) const;

  /// Fills out (length n*d, agent-major) with one draw.
  void sample(Rng& rng, int d, std::span<double> out) const;

 private:
  NoiseKind kind_;
  double omega_;
};

struct Edge {
  int i;
  int j;
  double weight;
};

/// Static description of the network: topology, step size, noise, offsets.
///
/// States are stacked agent-major: x = [x^1; ...; x^n], each x^i in R^d.
class NetworkSpec {
 public:
  /// Validates symmetry, zero diagonal, nonnegativity and connectivity.
  /// An empty offset means b = 0.
  NetworkSpec(int n, int d, double h, Eigen::MatrixXd weights, NoiseModel noise,
              double initial_radius = 0.0, Eigen::VectorXd offset = {});

  static NetworkSpec complete(int n, int d, double h, double weight, NoiseModel noise,
                              double initial_radius = 0.0);
  static NetworkSpec chain(int n, int d, double h, double weight, NoiseModel noise,
                           double initial_radius = 0.0, Eigen::VectorXd offset = {});

  int n() const { return n_; }
  int d() const { return d_; }
  int dim() const { return n_ * d_; }
  double h() const { return h_; }
  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::VectorXd& offset() const { return offset_; }
  double initial_radius() const { return initial_radius_; }
  const NoiseModel& noise() const { return noise_; }

  /// Undirected edges i < j with k_ij > 0, in row-major order.
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// K = max k_ij.
  double max_weight() const;
  /// K~ = max_i sum_j k_ij.
  double max_weighted_degree() const;

  /// sigma^2 = n * Tr(Sigma).
  double noise_power() const;

  NetworkSpec with_h(double h) const;
  NetworkSpec with_noise(NoiseModel noise) const;
  NetworkSpec with_initial_radius(double radius) const;
  NetworkSpec with_weights_scaled(double factor) const;

 private:
  int n_;
  int d_;
  double h_;
  Eigen::MatrixXd weights_;
  NoiseModel noise_;
  double initial_radius_;
  Eigen::VectorXd offset_;
  std::vector<Edge> edges_;
};

/// Formation offset b^i = (i * spacing, 0, ..., 0).
Eigen::VectorXd chain_offset(int n, int d, double spacing);

/// Snapshot of the network at step t.
struct NetworkState {
  Eigen::VectorXd x;
  long long t = 0;
};

}  // namespace cplearn
