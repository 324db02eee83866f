#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "footprint/geometry.hpp"
#include "footprint/zones.hpp"

namespace footprint {

// Sparse inverse-distance weights over a distance band. w_ij = 1/d_ij for
// centroid distances 0 < d_ij <= threshold_m, else 0; coincident centroids
// are clamped to d = 1 m. Symmetric unless row-standardized.
struct SpatialWeights {
  std::size_t n = 0;
  double threshold_m = 0.0;
  bool row_standardized = false;
  double s0 = 0.0;  // sum of all weights
  // rows[i] = (j, w_ij) with j != i, ascending j
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;

  double row_sum(std::size_t i) const {
    double s = 0.0;
    for (const auto& [j, w] : rows[i]) s += w;
    return s;
  }
  bool isolated(std::size_t i) const { return rows[i].empty(); }
};

SpatialWeights build_weights(const std::vector<Point>& centroids, CrsMode mode,
                             double threshold_m = 500.0, bool row_standardize = false);

SpatialWeights build_weights(const std::vector<Zone>& zones, CrsMode mode,
                             double threshold_m = 500.0, bool row_standardize = false);

}  // namespace footprint
