#include "cplearn/learner/errors.hpp"

#include <cmath>

#include "cplearn/core/dynamics.hpp"
#include "cplearn/core/errors.hpp"

namespace cplearn {

double empirical_error(const Trajectory& traj, const NetworkSpec& spec, const CouplingFunction& psi) {
  if (traj.n() != spec.n() || traj.d() != spec.d()) {
    throw ConfigError("trajectory does not match the network dimensions");
  }
  if (traj.frames() < 2) throw ConfigError("empirical error needs at least two states");
  if (traj.stride() != 1) throw ConfigError("empirical error needs an unthinned trajectory");
  const auto dim = static_cast<std::size_t>(spec.dim());
  std::vector<double> f(dim);
  std::vector<double> scratch;
  const double inv_h = 1.0 / traj.h();
  double sum = 0.0;
  for (long long k = 0; k + 1 < traj.frames(); ++k) {
    const auto x0 = traj.frame(k);
    const auto x1 = traj.frame(k + 1);
    force_into(x0, spec, psi, f, scratch);
    for (std::size_t c = 0; c < dim; ++c) {
      const double r = (x1[c] - x0[c]) * inv_h - f[c];
      sum += r * r;
    }
  }
  return sum / (static_cast<double>(traj.frames() - 1) * spec.edge_count());
}

double noise_floor(const NetworkSpec& spec) { return spec.noise_power() / spec.edge_count(); }

double WeightedErrorTable::integral() const {
  double sum = 0.0;
  for (double v : nu) sum += v * width;
  return sum;
}

WeightedErrorTable pointwise_weighted_error(const CouplingFunction& phi,
                                            const CouplingFunction& phi_hat,
                                            const DistanceHistogram& hist) {
  WeightedErrorTable table{hist.centers(), hist.mass(), {}, {}, {}, {}, hist.width()};
  const std::size_t bins = table.centers.size();
  table.phi.resize(bins);
  table.phi_hat.resize(bins);
  table.nu.resize(bins);
  table.sq_error.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double c = table.centers[b];
    table.phi[b] = phi(c);
    table.phi_hat[b] = phi_hat(c);
    const double diff = table.phi[b] - table.phi_hat[b];
    table.sq_error[b] = diff * diff;
    table.nu[b] = diff * diff * c * c * (table.mass[b] / table.width);
  }
  return table;
}

}  // namespace cplearn
