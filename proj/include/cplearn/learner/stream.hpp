#pragma once

#include <span>
#include <vector>

#include "cplearn/core/network.hpp"
#include "cplearn/hypothesis/basis.hpp"
#include "cplearn/hypothesis/coercivity.hpp"
#include "cplearn/hypothesis/design.hpp"
#include "cplearn/learner/factor.hpp"
#include "cplearn/learner/problem.hpp"
#include "cplearn/simulator/histogram.hpp"

namespace cplearn {

/// Consumes frames x_0, x_1, ... of an unthinned rollout and accumulates, in a
/// single pass, what assemble(), coercivity_matrices() and histogram() would
/// compute from the stored trajectory.
class StreamingAccumulator {
 public:
  /// With noise_free_target set, targets are F_phi(x_t) instead of the finite
  /// differences, as in assemble_best_approximation().
  StreamingAccumulator(const NetworkSpec& spec, const BasisFamily& basis, int bins,
                       const AssembleOptions& options = {},
                       const CouplingFunction* noise_free_target = nullptr);

  void push(std::span<const double> x);

  long long frames() const { return frames_; }
  LearnProblem problem() const;
  CoercivityMatrices coercivity() const;
  /// Distances of frames 0..T-1.
  const DistanceHistogram& histogram() const { return hist_; }

 private:
  const NetworkSpec& spec_;
  BasisFamily basis_;
  AssembleOptions options_;
  const CouplingFunction* target_;
  DesignBuilder design_;
  DistanceHistogram hist_;
  StreamingQR qr_;
  Eigen::MatrixXd rows_;
  Eigen::MatrixXd upsilon_;
  Eigen::MatrixXd xi_;
  std::vector<double> prev_x_;
  std::vector<double> prev_r_;
  std::vector<double> scratch_;
  long long frames_ = 0;
  long long clamped_learn_ = 0;
  long long clamped_all_ = 0;
  long long prev_clamped_ = 0;
};

}  // namespace cplearn
