#include "cplearn/core/network.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "cplearn/core/errors.hpp"

namespace cplearn {

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::UniformComponentwise:
      return "uniform-component-wise";
    case NoiseKind::UniformBall:
      return "custom-bounded";
  }
  return "unknown";
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "uniform-component-wise") return NoiseKind::UniformComponentwise;
  if (name == "custom-bounded" || name == "uniform-ball") return NoiseKind::UniformBall;
  throw ConfigError("unknown noise kind '" + name + "'");
}

NoiseModel::NoiseModel(NoiseKind kind, double omega) : kind_(kind), omega_(omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw ConfigError("noise amplitude omega must be finite and nonnegative");
  }
}

double NoiseModel::component_variance(int d) const {
  switch (kind_) {
    case NoiseKind::UniformComponentwise:
      return omega_ * omega_ / 3.0;
    case NoiseKind::UniformBall:
      // E||u||^2 = omega^2 d / (d + 2) for u uniform in the d-ball.
      return omega_ * omega_ / (d + 2.0);
  }
  return 0.0;
}

double NoiseModel::bound(int n, int d) const {
  switch (kind_) {
    case NoiseKind::UniformComponentwise:
      return omega_ * std::sqrt(static_cast<double>(n) * d);
    case NoiseKind::UniformBall:
      return omega_ * std::sqrt(static_cast<double>(n));
  }
  return 0.0;
}

void NoiseModel::sample(Rng& rng, int d, std::span<double> out) const {
  switch (kind_) {
    case NoiseKind::UniformComponentwise:
      for (double& w : out) w = rng.uniform(-omega_, omega_);
      return;
    case NoiseKind::UniformBall: {
      const std::size_t agents = out.size() / static_cast<std::size_t>(d);
      for (std::size_t a = 0; a < agents; ++a) {
        auto block = out.subspan(a * static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        double norm2 = 0.0;
        for (double& w : block) {
          w = rng.normal();
          norm2 += w * w;
        }
        const double radius = omega_ * std::pow(rng.uniform(), 1.0 / d);
        const double scale = norm2 > 0.0 ? radius / std::sqrt(norm2) : 0.0;
        for (double& w : block) w *= scale;
      }
      return;
    }
  }
}

namespace {

bool connected(const Eigen::MatrixXd& weights) {
  const auto n = weights.rows();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<Eigen::Index> frontier;
  frontier.push(0);
  seen[0] = true;
  Eigen::Index reached = 1;
  while (!frontier.empty()) {
    const auto i = frontier.front();
    frontier.pop();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (weights(i, j) > 0.0 && !seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == n;
}

}  // namespace

NetworkSpec::NetworkSpec(int n, int d, double h, Eigen::MatrixXd weights, NoiseModel noise,
                         double initial_radius, Eigen::VectorXd offset)
    : n_(n),
      d_(d),
      h_(h),
      weights_(std::move(weights)),
      noise_(noise),
      initial_radius_(initial_radius),
      offset_(std::move(offset)) {
  if (n < 1) throw ConfigError("agent count n must be positive");
  if (d < 1) throw ConfigError("state dimension d must be positive");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("step size h must be positive");
  if (!(initial_radius >= 0.0)) throw ConfigError("initial radius R0 must be nonnegative");
  if (weights_.rows() != n || weights_.cols() != n) {
    throw ConfigError("weight matrix must be n x n");
  }
  for (int i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) throw ConfigError("weight matrix must have a zero diagonal");
    for (int j = 0; j < n; ++j) {
      const double k = weights_(i, j);
      if (!(k >= 0.0) || !std::isfinite(k)) throw ConfigError("weights must be finite and nonnegative");
      if (k != weights_(j, i)) {
        std::ostringstream msg;
        msg << "weight matrix must be symmetric (k_" << i << j << " != k_" << j << i << ")";
        throw ConfigError(msg.str());
      }
    }
  }
  if (!connected(weights_)) throw ConfigError("network graph must be connected");
  if (offset_.size() == 0) offset_ = Eigen::VectorXd::Zero(dim());
  if (offset_.size() != dim()) throw ConfigError("equilibrium offset must have length n*d");

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (weights_(i, j) > 0.0) edges_.push_back({i, j, weights_(i, j)});
    }
  }
}

NetworkSpec NetworkSpec::complete(int n, int d, double h, double weight, NoiseModel noise,
                                  double initial_radius) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(n, n, weight);
  w.diagonal().setZero();
  return NetworkSpec(n, d, h, std::move(w), noise, initial_radius);
}

NetworkSpec NetworkSpec::chain(int n, int d, double h, double weight, NoiseModel noise,
                               double initial_radius, Eigen::VectorXd offset) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    w(i, i + 1) = weight;
    w(i + 1, i) = weight;
  }
  return NetworkSpec(n, d, h, std::move(w), noise, initial_radius, std::move(offset));
}

double NetworkSpec::max_weight() const { return weights_.maxCoeff(); }

double NetworkSpec::max_weighted_degree() const { return weights_.rowwise().sum().maxCoeff(); }

double NetworkSpec::noise_power() const { return n_ * d_ * noise_.component_variance(d_); }

NetworkSpec NetworkSpec::with_h(double h) const {
  return NetworkSpec(n_, d_, h, weights_, noise_, initial_radius_, offset_);
}

NetworkSpec NetworkSpec::with_noise(NoiseModel noise) const {
  return NetworkSpec(n_, d_, h_, weights_, noise, initial_radius_, offset_);
}

NetworkSpec NetworkSpec::with_initial_radius(double radius) const {
  return NetworkSpec(n_, d_, h_, weights_, noise_, radius, offset_);
}

NetworkSpec NetworkSpec::with_weights_scaled(double factor) const {
  return NetworkSpec(n_, d_, h_, weights_ * factor, noise_, initial_radius_, offset_);
}

Eigen::VectorXd chain_offset(int n, int d, double spacing) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * d);
  for (int i = 0; i < n; ++i) b(static_cast<Eigen::Index>(i) * d) = i * spacing;
  return b;
}

}  // namespace cplearn
