#pragma once

#include <filesystem>
#include <vector>

#include "critwave/evolve.hpp"

namespace critwave {

// Fixed column layout: t,L2,H1dot,Linf,Hneg. Values are written with 17
// significant digits so a reread reproduces the doubles exactly; data files
// never contain timestamps or environment details (those live in the run
// manifest only), which keeps reruns byte-identical.
void write_trajectory_csv(const std::filesystem::path& file, const Trajectory& traj);

std::vector<TrajectorySample> read_trajectory_csv(const std::filesystem::path& file);

}  // namespace critwave
