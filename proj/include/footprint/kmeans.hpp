#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "footprint/common.hpp"

namespace footprint {

struct ClusterModel {
  int k = 0;
  std::vector<std::vector<double>> centers;  // relabeled, see below
  std::vector<int> assignments;              // group ids 1..k
  double inertia = 0.0;
  std::vector<double> inertia_trace;  // per Lloyd iteration, winning restart
  std::uint64_t seed = 0;
  int restarts = 0;
  int best_restart = 0;
};

// Lloyd's algorithm with k-means++ initialization, best of `restarts` runs
// (ties broken by restart index). Convergence: relative inertia change
// < 1e-6 or 300 iterations. An emptied cluster is reseeded with the point
// farthest from its assigned center. Groups are relabeled 1..k by
// descending sum of center coordinates so ids are stable for identical
// float results.
ClusterModel kmeans(const std::vector<std::vector<double>>& points, int k = 6,
                    std::uint64_t seed = 0, int restarts = 50, int jobs = 1);

struct GroupProfileRow {
  int group = 0;  // 0 = Total row
  std::size_t count = 0;
  std::vector<double> mean;  // per variable
  std::vector<double> sd;    // sample sd, singleton reported as 0
};

// One row per group (1..k) plus a Total row; counts sum to n.
std::vector<GroupProfileRow> group_profiles(const ClusterModel& model,
                                            const std::vector<std::vector<double>>& points);

}  // namespace footprint
