#pragma once

#include <filesystem>
#include <string>

#include "cplearn/simulator/histogram.hpp"
#include "cplearn/simulator/simulate.hpp"

namespace cplearn {

/// Little-endian binary: "CPLT", u32 version, u32 n, u32 d, u64 T, u64 seed,
/// f64 h, then T+1 frames of n*d f64. A thinned trajectory is written with
/// T = frames - 1 and h scaled by the stride.
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory(const std::filesystem::path& path);

/// CSV bin_left,bin_right,mass; a non-empty comment goes first as "# comment".
void write_histogram_csv(const std::filesystem::path& path, const DistanceHistogram& hist,
                         const std::string& comment = {});

}  // namespace cplearn
