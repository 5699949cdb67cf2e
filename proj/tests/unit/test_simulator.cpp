#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cplearn/core/dynamics.hpp"
#include "cplearn/core/errors.hpp"
#include "cplearn/simulator/histogram.hpp"
#include "cplearn/simulator/metrics.hpp"
#include "cplearn/simulator/simulate.hpp"
#include "cplearn/simulator/trajectory_io.hpp"

using namespace cplearn;

namespace {

NetworkSpec small_cs_spec(double omega = 1.0) {
  return NetworkSpec::complete(5, 2, 0.01, 1.0, NoiseModel::uniform_componentwise(omega), 0.05);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cplearn_test_" + name);
}

DistanceHistogram from_counts(double domain, const std::vector<int>& counts) {
  DistanceHistogram hist(domain, static_cast<int>(counts.size()));
  const double width = domain / counts.size();
  for (std::size_t b = 0; b < counts.size(); ++b) {
    for (int k = 0; k < counts[b]; ++k) hist.add((b + 0.5) * width);
  }
  return hist;
}

}  // namespace

TEST_CASE("simulate replays the step map with the same random draws") {
  const auto spec = small_cs_spec();
  const auto phi = CouplingFunction::cucker_smale(1.0, 0.4, 2.0);
  SimulationOptions options;
  options.T = 50;
  options.seed = 9;
  options.burn_in = 7;
  const auto traj = simulate(spec, phi, options);
  REQUIRE(traj.frames() == 51);

  Rng rng(options.seed);
  NetworkState s{sample_initial_state(spec, phi, rng), 0};
  std::vector<double> w(static_cast<std::size_t>(spec.dim()));
  for (long long t = 0; t < options.burn_in + options.T + 1; ++t) {
    if (t >= options.burn_in) {
      const auto frame = traj.frame(t - options.burn_in);
      const Eigen::Map<const Eigen::VectorXd> stored(frame.data(), spec.dim());
      CHECK((stored - s.x).norm() <= 1e-12);
    }
    spec.noise().sample(rng, spec.d(), w);
    s = step(s, spec, phi, Eigen::Map<Eigen::VectorXd>(w.data(), spec.dim()));
  }
}

TEST_CASE("simulate is deterministic in the seed and distinct across seeds") {
  const auto spec = small_cs_spec();
  const auto phi = CouplingFunction::cucker_smale(1.0, 0.4, 2.0);
  SimulationOptions options;
  options.T = 30;
  const auto a = simulate(spec, phi, options);
  const auto b = simulate(spec, phi, options);
  CHECK(a.data() == b.data());
  CHECK(a.fingerprint() == b.fingerprint());
  options.seed = 1;
  const auto c = simulate(spec, phi, options);
  CHECK(a.data() != c.data());
  CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("thinning keeps every k-th frame of the full rollout") {
  const auto spec = small_cs_spec();
  const auto phi = CouplingFunction::cucker_smale(1.0, 0.4, 2.0);
  SimulationOptions options;
  options.T = 20;
  const auto full = simulate(spec, phi, options);
  options.thin = 5;
  const auto thin = simulate(spec, phi, options);
  REQUIRE(thin.frames() == 5);
  CHECK(thin.stride() == 5);
  for (long long k = 0; k < thin.frames(); ++k) {
    const auto a = thin.frame(k);
    const auto b = full.frame(5 * k);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
    CHECK(thin.state(k).t == 5 * k);
  }
}

TEST_CASE("initial states respect the radius and the coupling domain") {
  const auto spec = NetworkSpec::chain(6, 1, 0.01, 1.0, NoiseModel::uniform_componentwise(1.0), 1.0,
                                       chain_offset(6, 1, 1.0));
  const auto phi = CouplingFunction::formation_repulsive(10.0, 0.4, 1.0, 1.01, 1.9);
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd x = sample_initial_state(spec, phi, rng);
    CHECK((x - spec.offset()).norm() <= 1.0 + 1e-12);
    for (const auto& e : relative_displacements({x, 0}, spec)) CHECK(e.r <= 1.9);
  }
}

TEST_CASE("initial state sampling gives up on an unreachable domain") {
  const auto spec = NetworkSpec::chain(3, 1, 0.01, 1.0, NoiseModel::uniform_componentwise(1.0), 0.0,
                                       chain_offset(3, 1, 5.0));
  const auto phi = CouplingFunction::cucker_smale(1.0, 0.4, 1.0);
  Rng rng(0);
  CHECK_THROWS_AS(sample_initial_state(spec, phi, rng), ConfigError);
}

TEST_CASE("simulation reports the step and edge of a singular coupling") {
  const auto spec = NetworkSpec::chain(2, 1, 0.01, 1.0, NoiseModel::uniform_componentwise(0.0));
  const auto phi = CouplingFunction::formation_repulsive(10.0, 0.4, 1.0, 1.01, 1.9);
  SimulationOptions options;
  options.T = 5;
  options.burn_in = 2;
  Eigen::VectorXd x0(2);
  x0 << 0.0, 2.5;
  options.initial = x0;
  try {
    simulate(spec, phi, options);
    FAIL("expected a simulation error");
  } catch (const SimulationError& err) {
    CHECK(err.t() == 0);
    CHECK(err.i() == 0);
    CHECK(err.j() == 1);
    CHECK(err.r() == doctest::Approx(2.5));
  }
}

TEST_CASE("simulation rejects inconsistent options") {
  const auto spec = small_cs_spec();
  const auto phi = CouplingFunction::cucker_smale(1.0, 0.4, 2.0);
  SimulationOptions options;
  options.T = 0;
  CHECK_THROWS_AS(simulate(spec, phi, options), ConfigError);
  options.T = 5;
  options.thin = 0;
  CHECK_THROWS_AS(simulate(spec, phi, options), ConfigError);
  options.thin = 1;
  options.initial = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(simulate(spec, phi, options), ConfigError);
}

TEST_CASE("trajectory binary round trip") {
  const auto spec = small_cs_spec();
  const auto phi = CouplingFunction::cucker_smale(1.0, 0.4, 2.0);
  SimulationOptions options;
  options.T = 12;
  options.seed = 77;
  const auto traj = simulate(spec, phi, options);
  const auto path = temp_path("roundtrip.bin");
  write_trajectory(path, traj);
  CHECK(std::filesystem::file_size(path) == 4 + 4 + 4 + 4 + 8 + 8 + 8 + 13 * 10 * 8);
  const auto back = read_trajectory(path);
  CHECK(back.n() == 5);
  CHECK(back.d() == 2);
  CHECK(back.T() == 12);
  CHECK(back.seed() == 77);
  CHECK(back.h() == spec.h());
  CHECK(back.data() == traj.data());

  std::ifstream in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  CHECK(std::string(magic, 4) == "CPLT");
  std::filesystem::remove(path);
}

TEST_CASE("reading a corrupt trajectory fails cleanly") {
  const auto path = temp_path("corrupt.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOPE and some bytes";
  }
  CHECK_THROWS(read_trajectory(path));
  CHECK_THROWS(read_trajectory(temp_path("missing.bin")));
  std::filesystem::remove(path);
}

TEST_CASE("histogram: bin placement examples") {
  const std::vector<double> r{0.05, 0.15, 0.15, 0.95};
  const auto hist = histogram(r, 1.0, 10);
  const std::vector<std::uint64_t> expected{1, 2, 0, 0, 0, 0, 0, 0, 0, 1};
  CHECK(hist.counts() == expected);
  CHECK(hist.mass()[1] == doctest::Approx(0.5));
  CHECK(hist.overflow() == 0);

  const std::vector<double> edge{1.0};
  CHECK(histogram(edge, 1.0, 10).counts()[9] == 1);
  CHECK(histogram(edge, 1.0, 10).overflow() == 0);

  const std::vector<double> beyond{1.5, 0.2};
  const auto over = histogram(beyond, 1.0, 4);
  CHECK(over.counts()[3] == 1);
  CHECK(over.overflow() == 1);
  CHECK(over.samples() == 2);
}

TEST_CASE("histogram: bin edges agree with the basis partition") {
  for (int bins : {3, 7, 10, 100}) {
    const double domain = 0.6;
    DistanceHistogram hist(domain, bins);
    const auto edges = hist.edges();
    REQUIRE(edges.size() == static_cast<std::size_t>(bins + 1));
    for (int b = 0; b < bins; ++b) {
      CHECK(uniform_bin(edges[b], domain, bins) == b);
      CHECK(uniform_bin(std::nextafter(edges[b + 1], 0.0), domain, bins) == b);
      CHECK(hist.centers()[b] == doctest::Approx(0.5 * (edges[b] + edges[b + 1])));
    }
    CHECK(edges.back() == domain);
  }
}

TEST_CASE("histogram: invalid grids and values") {
  CHECK_THROWS_AS(DistanceHistogram(0.0, 10), ConfigError);
  CHECK_THROWS_AS(DistanceHistogram(1.0, 0), ConfigError);
  DistanceHistogram hist(1.0, 4);
  CHECK_THROWS_AS(hist.add(-0.1), DomainError);
  CHECK(hist.mass() == std::vector<double>(4, 0.0));
  CHECK_THROWS_AS(hist.merge(DistanceHistogram(1.0, 5)), ConfigError);
}

TEST_CASE("histogram: merge equals a single pass") {
  const std::vector<double> a{0.1, 0.2, 0.7}, b{0.4, 0.9, 1.3};
  auto merged = histogram(a, 1.0, 5);
  merged.merge(histogram(b, 1.0, 5));
  const std::vector<double> all{0.1, 0.2, 0.7, 0.4, 0.9, 1.3};
  const auto single = histogram(all, 1.0, 5);
  CHECK(merged.counts() == single.counts());
  CHECK(merged.samples() == single.samples());
  CHECK(merged.overflow() == single.overflow());
}

TEST_CASE("histogram of a trajectory uses the transition start frames") {
  const auto spec = small_cs_spec();
  const auto phi = CouplingFunction::cucker_smale(1.0, 0.4, 2.0);
  SimulationOptions options;
  options.T = 40;
  const auto traj = simulate(spec, phi, options);
  const auto stream = distance_stream(traj, spec);
  CHECK(stream.size() == 40u * 10u);
  std::vector<double> r;
  for (const auto& s : stream) {
    CHECK(s.t < 40);
    CHECK(s.r == doctest::Approx(s.delta.norm()));
    r.push_back(s.r);
  }
  const auto direct = histogram(traj, spec, 0.2, 16);
  CHECK(direct.counts() == histogram(r, 0.2, 16).counts());
  CHECK(direct.samples() == 400);
}

TEST_CASE("histogram CSV output") {
  const std::vector<double> r{0.1, 0.6};
  const auto path = temp_path("hist.csv");
  write_histogram_csv(path, histogram(r, 1.0, 2), "demo");
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "# demo\nbin_left,bin_right,mass\n0,0.5,0.5\n0.5,1,0.5\n");
  std::filesystem::remove(path);
}

TEST_CASE("KL divergence examples") {
  const auto p = from_counts(1.0, {1, 1});
  CHECK(kl_divergence(p, p) == 0.0);
  const auto q = from_counts(1.0, {1, 0});
  CHECK(kl_divergence(q, p) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  // Disjoint support is finite thanks to smoothing and large.
  const auto r = from_counts(1.0, {0, 1});
  CHECK(std::isfinite(kl_divergence(q, r)));
  CHECK(kl_divergence(q, r) > 20.0);
  CHECK_THROWS_AS(kl_divergence(p, from_counts(1.0, {1, 1, 1})), ConfigError);
  CHECK_THROWS_AS(kl_divergence(p, DistanceHistogram(1.0, 2)), ConfigError);
}

TEST_CASE("KL divergence is nonnegative on random histograms") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> a(8), b(8);
    for (int k = 0; k < 8; ++k) {
      a[k] = static_cast<int>(rng.uniform() * 20);
      b[k] = static_cast<int>(rng.uniform() * 20) + 1;
    }
    a[0] += 1;
    CHECK(kl_divergence(from_counts(1.0, a), from_counts(1.0, b)) >= -1e-15);
  }
}

TEST_CASE("weighted L2 distance examples") {
  const auto hist = from_counts(1.0, {0, 0, 0, 0, 1});
  const auto one = CouplingFunction::constant(1.0, 1.0);
  const auto zero = CouplingFunction::constant(0.0, 1.0);
  CHECK(weighted_l2_distance(one, zero, hist) == doctest::Approx(0.9));
  CHECK(weighted_l2_distance(one, one, hist) == 0.0);

  const auto spread = from_counts(1.0, {1, 1});
  CHECK(weighted_l2_distance(one, zero, spread) ==
        doctest::Approx(std::sqrt(0.5 * 0.25 * 0.25 + 0.5 * 0.75 * 0.75)));
}

TEST_CASE("resimulated distribution equals the histogram of a stored rollout") {
  const auto spec = small_cs_spec();
  const auto phi = CouplingFunction::cucker_smale(1.0, 0.4, 2.0);
  SimulationOptions options;
  options.T = 60;
  options.seed = 3;
  const auto streamed = resimulate_distribution(spec, phi, options, 0.25, 20);
  const auto stored = histogram(simulate(spec, phi, options), spec, 0.25, 20);
  CHECK(streamed.counts() == stored.counts());
  CHECK(streamed.overflow() == stored.overflow());
}
