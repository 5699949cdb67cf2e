#include "cplearn/simulator/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "cplearn/core/errors.hpp"
#include "cplearn/hypothesis/basis.hpp"

namespace cplearn {

DistanceHistogram::DistanceHistogram(double domain, int bins) : domain_(domain) {
  if (bins < 1) throw ConfigError("histogram needs at least one bin");
  if (!(domain > 0.0) || !std::isfinite(domain)) throw ConfigError("histogram domain must be positive");
  counts_.assign(static_cast<std::size_t>(bins), 0);
}

void DistanceHistogram::add(double r) {
  if (!(r >= 0.0)) throw DomainError("distance must be nonnegative");
  if (r > domain_) ++overflow_;
  ++counts_[static_cast<std::size_t>(uniform_bin(r, domain_, bins()))];
  ++samples_;
}

void DistanceHistogram::merge(const DistanceHistogram& other) {
  if (!same_grid(other)) throw ConfigError("cannot merge histograms with different grids");
  for (std::size_t b = 0; b < counts_.size(); ++b) counts_[b] += other.counts_[b];
  samples_ += other.samples_;
  overflow_ += other.overflow_;
}

std::vector<double> DistanceHistogram::mass() const {
  std::vector<double> out(counts_.size(), 0.0);
  if (samples_ == 0) return out;
  const double total = static_cast<double>(samples_);
  for (std::size_t b = 0; b < counts_.size(); ++b) out[b] = static_cast<double>(counts_[b]) / total;
  return out;
}

std::vector<double> DistanceHistogram::centers() const {
  std::vector<double> out(counts_.size());
  for (std::size_t b = 0; b < out.size(); ++b) {
    const int k = static_cast<int>(b);
    out[b] = 0.5 * (uniform_edge(k, domain_, bins()) + uniform_edge(k + 1, domain_, bins()));
  }
  return out;
}

std::vector<double> DistanceHistogram::edges() const {
  std::vector<double> out(counts_.size() + 1);
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = uniform_edge(static_cast<int>(b), domain_, bins());
  }
  return out;
}

bool DistanceHistogram::same_grid(const DistanceHistogram& other) const {
  return bins() == other.bins() && domain_ == other.domain_;
}

DistanceHistogram histogram(std::span<const double> distances, double domain, int bins) {
  DistanceHistogram hist(domain, bins);
  for (double r : distances) hist.add(r);
  return hist;
}

DistanceHistogram histogram(const Trajectory& traj, const NetworkSpec& spec, double domain, int bins) {
  DistanceHistogram hist(domain, bins);
  for_each_distance(traj, spec, [&](long long, double r) { hist.add(r); });
  return hist;
}

std::vector<DistanceSample> distance_stream(const Trajectory& traj, const NetworkSpec& spec) {
  if (traj.n() != spec.n() || traj.d() != spec.d()) {
    throw ConfigError("trajectory does not match the network dimensions");
  }
  std::vector<DistanceSample> out;
  out.reserve(static_cast<std::size_t>(std::max(0LL, traj.frames() - 1)) * spec.edges().size());
  std::vector<double> scratch;
  for (long long k = 0; k + 1 < traj.frames(); ++k) {
    visit_edges(spec, traj.frame(k), scratch,
                [&](const Edge& e, std::span<const double> delta, double r) {
                  out.push_back({k * traj.stride(), e.i, e.j,
                                 Eigen::Map<const Eigen::VectorXd>(
                                     delta.data(), static_cast<Eigen::Index>(delta.size())),
                                 r});
                });
  }
  return out;
}

}  // namespace cplearn
