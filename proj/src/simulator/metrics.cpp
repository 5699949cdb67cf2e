#include "cplearn/simulator/metrics.hpp"

#include <cmath>

#include "cplearn/core/dynamics.hpp"
#include "cplearn/core/errors.hpp"

namespace cplearn {

double weighted_l2_distance(const CouplingFunction& psi1, const CouplingFunction& psi2,
                            const DistanceHistogram& hist) {
  const auto mass = hist.mass();
  const auto centers = hist.centers();
  double sum = 0.0;
  for (std::size_t b = 0; b < mass.size(); ++b) {
    if (mass[b] == 0.0) continue;
    const double c = centers[b];
    const double diff = (psi1(c) - psi2(c)) * c;
    sum += mass[b] * diff * diff;
  }
  return std::sqrt(sum);
}

double kl_divergence(const DistanceHistogram& p, const DistanceHistogram& q, double smoothing) {
  if (!p.same_grid(q)) throw ConfigError("KL divergence needs identical bin grids");
  if (!(smoothing >= 0.0)) throw ConfigError("KL smoothing must be nonnegative");
  if (p.samples() == 0 || q.samples() == 0) throw ConfigError("KL divergence of an empty histogram");
  const auto pm = p.mass();
  const auto qm = q.mass();
  const double scale = 1.0 + smoothing * static_cast<double>(pm.size());
  double kl = 0.0;
  for (std::size_t b = 0; b < pm.size(); ++b) {
    const double pb = (pm[b] + smoothing) / scale;
    const double qb = (qm[b] + smoothing) / scale;
    if (pb > 0.0) kl += pb * std::log(pb / qb);
  }
  return kl;
}

DistanceHistogram resimulate_distribution(const NetworkSpec& spec, const CouplingFunction& phi_hat,
                                          const SimulationOptions& options, double domain,
                                          int bins) {
  DistanceHistogram hist(domain, bins);
  std::vector<double> scratch;
  run_simulation(spec, phi_hat, options, [&](long long t, std::span<const double> x) {
    if (t == options.T) return;
    visit_edges(spec, x, scratch, [&](const Edge&, std::span<const double>, double r) { hist.add(r); });
  });
  return hist;
}

}  // namespace cplearn
