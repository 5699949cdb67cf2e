#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cplearn/core/network.hpp"
#include "cplearn/hypothesis/basis.hpp"

namespace cplearn {

/// Builds the design block A_t for one state: column q is F_{psi_q}(x_t), the
/// force the network would feel if phi were psi_q. Distances above R are
/// clamped to R for the basis factor only.
class DesignBuilder {
 public:
  DesignBuilder(const NetworkSpec& spec, const BasisFamily& basis);

  /// Rebuilds block() for state x. When xi is given, adds
  /// sum_edges r^2 psi(r) psi(r)^T to it. Returns the number of clamped edges.
  long long build(std::span<const double> x, Eigen::MatrixXd* xi = nullptr);

  /// (n d) x Q.
  const Eigen::MatrixXd& block() const { return block_; }

 private:
  const NetworkSpec& spec_;
  const BasisFamily& basis_;
  Eigen::MatrixXd block_;
  std::vector<double> scratch_;
  std::vector<double> psi_;
};

}  // namespace cplearn
