#include "cplearn/simulator/trajectory_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cplearn/core/errors.hpp"

namespace cplearn {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'P', 'L', 'T'};
constexpr std::uint32_t kVersion = 1;


template <class T>
void put(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!in) throw std::runtime_error("truncated trajectory file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(traj.n()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(traj.d()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(traj.frames() - 1));
  put<std::uint64_t>(out, traj.seed());
  put<double>(out, traj.h() * static_cast<double>(traj.stride()));
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(traj.data().data()),
              static_cast<std::streamsize>(traj.data().size() * sizeof(double)));
  } else {
    for (double v : traj.data()) put<double>(out, v);
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error(path.string() + " is not a trajectory file");
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) throw std::runtime_error("unsupported trajectory version");
  const auto n = get<std::uint32_t>(in);
  const auto d = get<std::uint32_t>(in);
  const auto T = get<std::uint64_t>(in);
  const auto seed = get<std::uint64_t>(in);
  const auto h = get<double>(in);
  const std::size_t count = static_cast<std::size_t>(T + 1) * n * d;
  std::vector<double> data(count);
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("truncated trajectory file");
  } else {
    for (double& v : data) v = get<double>(in);
  }
  return Trajectory(static_cast<int>(n), static_cast<int>(d), h, seed, 0, static_cast<long long>(T), 1,
                    true, std::move(data));
}

void write_histogram_csv(const std::filesystem::path& path, const DistanceHistogram& hist,
                         const std::string& comment) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "bin_left,bin_right,mass\n" << std::setprecision(17);
  const auto edges = hist.edges();
  const auto mass = hist.mass();
  for (std::size_t b = 0; b < mass.size(); ++b) {
    out << edges[b] << ',' << edges[b + 1] << ',' << mass[b] << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace cplearn
