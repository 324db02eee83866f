#pragma once

#include <span>
#include <vector>

#include "footprint/common.hpp"

namespace footprint {

// x = lon, y = lat in geographic mode; meters in projected mode.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  bool contains(const Point& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

using Ring = std::vector<Point>;  // closed: first vertex == last vertex

inline constexpr double kEarthRadiusM = 6371000.0;

double distance_m(const Point& a, const Point& b, CrsMode mode);

// Signed shoelace area of a closed ring, in the ring's native units squared.
double signed_ring_area(std::span<const Point> ring);

// Polygon area in hectares. Geographic rings are first projected with a
// local equirectangular projection centered at the mean latitude of the
// polygon (adequate at city scale). Holes must be wound opposite to outer
// rings; their signed areas subtract.
double polygon_area_ha(const std::vector<Ring>& rings, CrsMode mode);

// Area-weighted centroid over all rings, returned in input coordinates.
Point polygon_centroid(const std::vector<Ring>& rings, CrsMode mode);

BoundingBox rings_bbox(const std::vector<Ring>& rings);

// Boundary-inclusive even-odd containment over the union of rings.
bool point_in_rings(const Point& p, const std::vector<Ring>& rings);

bool point_on_segment(const Point& p, const Point& a, const Point& b);

}  // namespace footprint
