#include "footprint/spatial_weights.hpp"

#include <algorithm>
#include <cmath>

namespace footprint {

SpatialWeights build_weights(const std::vector<Point>& centroids, CrsMode mode,
                             double threshold_m, bool row_standardize) {
  if (threshold_m <= 0.0) throw ConfigError("weights threshold must be > 0");
  if (centroids.size() < 2) throw DataError("need at least 2 zones for spatial weights");

  SpatialWeights W;
  W.n = centroids.size();
  W.threshold_m = threshold_m;
  W.rows.resize(W.n);

  // Coarse grid prefilter in projected mode keeps this O(n) per zone for
  // city-sized inputs; geographic mode falls back to the full scan.
  if (mode == CrsMode::projected && W.n > 256) {
    BoundingBox box{centroids[0].x, centroids[0].y, centroids[0].x, centroids[0].y};
    for (const auto& c : centroids) {
      box.min_x = std::min(box.min_x, c.x);
      box.min_y = std::min(box.min_y, c.y);
      box.max_x = std::max(box.max_x, c.x);
      box.max_y = std::max(box.max_y, c.y);
    }
    double cell = threshold_m;
    int nx = std::max(1, static_cast<int>((box.max_x - box.min_x) / cell) + 1);
    int ny = std::max(1, static_cast<int>((box.max_y - box.min_y) / cell) + 1);
    std::vector<std::vector<std::uint32_t>> grid(static_cast<std::size_t>(nx) * ny);
    auto cell_of = [&](const Point& p) {
      int cx = std::clamp(static_cast<int>((p.x - box.min_x) / cell), 0, nx - 1);
      int cy = std::clamp(static_cast<int>((p.y - box.min_y) / cell), 0, ny - 1);
      return std::make_pair(cx, cy);
    };
    for (std::uint32_t i = 0; i < W.n; ++i) {
      auto [cx, cy] = cell_of(centroids[i]);
      grid[static_cast<std::size_t>(cy) * nx + cx].push_back(i);
    }
    for (std::uint32_t i = 0; i < W.n; ++i) {
      auto [cx, cy] = cell_of(centroids[i]);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          int gx = cx + dx, gy = cy + dy;
          if (gx < 0 || gx >= nx || gy < 0 || gy >= ny) continue;
          for (std::uint32_t j : grid[static_cast<std::size_t>(gy) * nx + gx]) {
            if (j == i) continue;
            double d = distance_m(centroids[i], centroids[j], mode);
            if (d > threshold_m) continue;
            d = std::max(d, 1.0);  // coincident-centroid clamp
            W.rows[i].emplace_back(j, 1.0 / d);
          }
        }
      }
      std::sort(W.rows[i].begin(), W.rows[i].end());
    }
  } else {
    for (std::uint32_t i = 0; i < W.n; ++i) {
      for (std::uint32_t j = 0; j < W.n; ++j) {
        if (j == i) continue;
        double d = distance_m(centroids[i], centroids[j], mode);
        if (d > threshold_m) continue;
        d = std::max(d, 1.0);
        W.rows[i].emplace_back(j, 1.0 / d);
      }
    }
  }

  if (row_standardize) {
    W.row_standardized = true;
    for (auto& row : W.rows) {
      double s = 0.0;
      for (const auto& [j, w] : row) s += w;
      if (s > 0.0)
        for (auto& [j, w] : row) w /= s;
    }
  }
  for (std::size_t i = 0; i < W.n; ++i) W.s0 += W.row_sum(i);
  return W;
}

SpatialWeights build_weights(const std::vector<Zone>& zones, CrsMode mode, double threshold_m,
                             bool row_standardize) {
  std::vector<Point> centroids;
  centroids.reserve(zones.size());
  for (const auto& z : zones) centroids.push_back(z.centroid);
  return build_weights(centroids, mode, threshold_m, row_standardize);
}

}  // namespace footprint
