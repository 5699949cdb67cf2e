#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cplearn/core/coupling.hpp"
#include "cplearn/core/network.hpp"
#include "cplearn/core/random.hpp"

namespace cplearn {

struct SimulationOptions {
  long long T = 1000;         ///< recorded transitions
  std::uint64_t seed = 0;
  long long burn_in = 1000;   ///< steps run and discarded before frame 0
  long long thin = 1;         ///< keep every thin-th frame
  std::optional<Eigen::VectorXd> initial;  ///< overrides the sampled x_0
};

/// Recorded rollout x_0..x_T (every stride-th frame when thinned).
class Trajectory {
 public:
  Trajectory(int n, int d, double h, std::uint64_t seed, std::uint64_t fingerprint, long long T,
             long long stride, bool contractive, std::vector<double> data);

  int n() const { return n_; }
  int d() const { return d_; }
  double h() const { return h_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t fingerprint() const { return fingerprint_; }
  /// Number of simulated transitions covered.
  long long T() const { return T_; }
  long long stride() const { return stride_; }
  bool contractive() const { return contractive_; }
  /// Number of stored frames.
  long long frames() const;
  std::span<const double> frame(long long k) const;
  NetworkState state(long long k) const;
  const std::vector<double>& data() const { return data_; }

 private:
  int n_;
  int d_;
  double h_;
  std::uint64_t seed_;
  std::uint64_t fingerprint_;
  long long T_;
  long long stride_;
  bool contractive_;
  std::vector<double> data_;
};

/// Hash of every input that determines a rollout.
std::uint64_t trajectory_fingerprint(const NetworkSpec& spec, const CouplingFunction& phi,
                                     const SimulationOptions& options);

/// x_0 = b + u with u uniform in the ball ||u|| <= R0 of R^{nd}, redrawn until
/// every neighbor distance lies in the coupling's domain.
Eigen::VectorXd sample_initial_state(const NetworkSpec& spec, const CouplingFunction& phi, Rng& rng);

/// Runs burn_in + T steps and calls visit(t, x_t) for t = 0..T. Returns whether
/// the spec is contractive for phi. Throws SimulationError on coupling failure
/// or a non-finite state; t in the error counts from the first burn-in step.
bool run_simulation(const NetworkSpec& spec, const CouplingFunction& phi,
                    const SimulationOptions& options,
                    const std::function<void(long long, std::span<const double>)>& visit);

Trajectory simulate(const NetworkSpec& spec, const CouplingFunction& phi,
                    const SimulationOptions& options);

}  // namespace cplearn
