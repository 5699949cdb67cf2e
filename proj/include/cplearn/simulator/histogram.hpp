#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cplearn/core/network.hpp"
#include "cplearn/simulator/simulate.hpp"

namespace cplearn {

/// One neighbor distance at frame t.
struct DistanceSample {
  long long t;
  int i;
  int j;
  Eigen::VectorXd delta;
  double r;
};

/// Every edge of every frame t = 0..frames-2 (the transitions' start states).
std::vector<DistanceSample> distance_stream(const Trajectory& traj, const NetworkSpec& spec);

/// Streaming form of distance_stream: fn(t, r) without allocation.
template <class Fn>
void for_each_distance(const Trajectory& traj, const NetworkSpec& spec, Fn&& fn);

/// B uniform bins on [0, R]. Values above R land in the last bin and are counted
/// as overflow.
class DistanceHistogram {
 public:
  DistanceHistogram(double domain, int bins);

  void add(double r);
  /// Counts add; grids must match.
  void merge(const DistanceHistogram& other);

  double domain() const { return domain_; }
  int bins() const { return static_cast<int>(counts_.size()); }
  double width() const { return domain_ / bins(); }
  std::uint64_t samples() const { return samples_; }
  std::uint64_t overflow() const { return overflow_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  /// counts / samples; all zero when empty.
  std::vector<double> mass() const;
  std::vector<double> centers() const;
  /// B + 1 boundaries.
  std::vector<double> edges() const;
  bool same_grid(const DistanceHistogram& other) const;

 private:
  double domain_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t samples_ = 0;
  std::uint64_t overflow_ = 0;
};

DistanceHistogram histogram(std::span<const double> distances, double domain, int bins);
DistanceHistogram histogram(const Trajectory& traj, const NetworkSpec& spec, double domain, int bins);

}  // namespace cplearn

#include "cplearn/core/dynamics.hpp"

namespace cplearn {

template <class Fn>
void for_each_distance(const Trajectory& traj, const NetworkSpec& spec, Fn&& fn) {
  std::vector<double> scratch;
  for (long long k = 0; k + 1 < traj.frames(); ++k) {
    visit_edges(spec, traj.frame(k), scratch,
                [&](const Edge&, std::span<const double>, double r) { fn(k, r); });
  }
}

}  // namespace cplearn
