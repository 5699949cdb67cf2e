#include "cplearn/simulator/simulate.hpp"

#include <cmath>
#include <sstream>

#include "cplearn/core/dynamics.hpp"
#include "cplearn/core/errors.hpp"
#include "cplearn/core/hash.hpp"

namespace cplearn {

namespace {

constexpr int kMaxInitialDraws = 100000;

bool within_domain(const NetworkSpec& spec, const Eigen::VectorXd& x, double domain) {
  bool ok = true;
  std::vector<double> scratch;
  visit_edges(spec, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), scratch,
              [&](const Edge&, std::span<const double>, double r) { ok = ok && r <= domain; });
  return ok;
}

}  // namespace

Trajectory::Trajectory(int n, int d, double h, std::uint64_t seed, std::uint64_t fingerprint,
                       long long T, long long stride, bool contractive, std::vector<double> data)
    : n_(n),
      d_(d),
      h_(h),
      seed_(seed),
      fingerprint_(fingerprint),
      T_(T),
      stride_(stride),
      contractive_(contractive),
      data_(std::move(data)) {
  if (n < 1 || d < 1) throw ConfigError("trajectory needs n, d >= 1");
  if (stride < 1) throw ConfigError("trajectory stride must be >= 1");
  const auto dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(d);
  if (data_.empty() || data_.size() % dim != 0) {
    throw ConfigError("trajectory data must hold a whole number of frames");
  }
}

long long Trajectory::frames() const {
  return static_cast<long long>(data_.size() / (static_cast<std::size_t>(n_) * d_));
}

std::span<const double> Trajectory::frame(long long k) const {
  const auto dim = static_cast<std::size_t>(n_) * static_cast<std::size_t>(d_);
  return std::span<const double>(data_).subspan(static_cast<std::size_t>(k) * dim, dim);
}

NetworkState Trajectory::state(long long k) const {
  const auto f = frame(k);
  return {Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size())),
          k * stride_};
}

std::uint64_t trajectory_fingerprint(const NetworkSpec& spec, const CouplingFunction& phi,
                                     const SimulationOptions& options) {
  Fnv1a hash;
  hash.value(spec.n()).value(spec.d()).value(spec.h()).value(spec.initial_radius());
  hash.bytes(spec.weights().data(), sizeof(double) * static_cast<std::size_t>(spec.weights().size()));
  hash.bytes(spec.offset().data(), sizeof(double) * static_cast<std::size_t>(spec.offset().size()));
  hash.text(to_string(spec.noise().kind())).value(spec.noise().omega());
  hash.text(phi.describe());
  hash.value(options.T).value(options.seed).value(options.burn_in).value(options.thin);
  if (options.initial) {
    hash.bytes(options.initial->data(), sizeof(double) * static_cast<std::size_t>(options.initial->size()));
  }
  return hash.digest();
}

Eigen::VectorXd sample_initial_state(const NetworkSpec& spec, const CouplingFunction& phi, Rng& rng) {
  const auto dim = spec.dim();
  const double radius = spec.initial_radius();
  Eigen::VectorXd x(dim);
  for (int attempt = 0; attempt < kMaxInitialDraws; ++attempt) {
    double norm2 = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      x(k) = rng.normal();
      norm2 += x(k) * x(k);
    }
    const double scale = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
    x *= norm2 > 0.0 ? scale / std::sqrt(norm2) : 0.0;
    x += spec.offset();
    if (within_domain(spec, x, phi.domain())) return x;
  }
  std::ostringstream msg;
  msg << "no initial state with R0 = " << radius << " keeps every neighbor distance within "
      << phi.domain() << " after " << kMaxInitialDraws << " draws";
  throw ConfigError(msg.str());
}

bool run_simulation(const NetworkSpec& spec, const CouplingFunction& phi,
                    const SimulationOptions& options,
                    const std::function<void(long long, std::span<const double>)>& visit) {
  if (options.T < 1) throw ConfigError("T must be >= 1");
  if (options.burn_in < 0) throw ConfigError("burn_in must be >= 0");
  if (options.thin < 1) throw ConfigError("thin must be >= 1");

  Rng rng(options.seed);
  Eigen::VectorXd x0;
  if (options.initial) {
    if (options.initial->size() != spec.dim()) throw ConfigError("initial state must have length n*d");
    x0 = *options.initial;
  } else {
    x0 = sample_initial_state(spec, phi, rng);
  }

  const auto dim = static_cast<std::size_t>(spec.dim());
  std::vector<double> x(x0.data(), x0.data() + dim);
  std::vector<double> f(dim);
  std::vector<double> w(dim);
  std::vector<double> scratch;
  const double h = spec.h();
  const long long total = options.burn_in + options.T;

  for (long long s = 0;; ++s) {
    if (s >= options.burn_in) visit(s - options.burn_in, std::span<const double>(x));
    if (s == total) break;
    try {
      force_into(x, spec, phi, f, scratch);
    } catch (const CouplingDomainError& err) {
      std::ostringstream msg;
      msg << "step " << s << ": edge (" << err.i() << ", " << err.j() << ") at r = " << err.r()
          << ": " << err.what();
      throw SimulationError(s, err.i(), err.j(), err.r(), msg.str());
    }
    spec.noise().sample(rng, spec.d(), w);
    bool finite = true;
    for (std::size_t k = 0; k < dim; ++k) {
      x[k] += h * (f[k] + w[k]);
      finite = finite && std::isfinite(x[k]);
    }
    if (!finite) {
      std::ostringstream msg;
      msg << "step " << s << ": state is no longer finite";
      throw SimulationError(s + 1, -1, -1, std::nan(""), msg.str());
    }
  }
  return contractivity(spec, phi).contractive;
}

Trajectory simulate(const NetworkSpec& spec, const CouplingFunction& phi,
                    const SimulationOptions& options) {
  std::vector<double> data;
  const auto dim = static_cast<std::size_t>(spec.dim());
  const long long stored = options.T / std::max(1LL, options.thin) + 1;
  data.reserve(static_cast<std::size_t>(stored) * dim);
  const bool contractive =
      run_simulation(spec, phi, options, [&](long long t, std::span<const double> x) {
        if (t % options.thin == 0) data.insert(data.end(), x.begin(), x.end());
      });
  return Trajectory(spec.n(), spec.d(), spec.h(), options.seed,
                    trajectory_fingerprint(spec, phi, options), options.T, options.thin, contractive,
                    std::move(data));
}

}  // namespace cplearn
