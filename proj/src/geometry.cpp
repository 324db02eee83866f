#include "footprint/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace footprint {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

double haversine_m(const Point& a, const Point& b) {
  double lat1 = a.y * kDegToRad;
  double lat2 = b.y * kDegToRad;
  double dlat = (b.y - a.y) * kDegToRad;
  double dlon = (b.x - a.x) * kDegToRad;
  double s = std::sin(dlat / 2.0);
  double t = std::sin(dlon / 2.0);
  double h = s * s + std::cos(lat1) * std::cos(lat2) * t * t;
  h = std::min(1.0, h);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

double mean_latitude(const std::vector<Ring>& rings) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& ring : rings) {
    for (const auto& p : ring) {
      sum += p.y;
      ++n;
    }
  }
  return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

Point equirect_project(const Point& p, double lat0_deg) {
  double k = kEarthRadiusM * kDegToRad;
  return {p.x * k * std::cos(lat0_deg * kDegToRad), p.y * k};
}

Point equirect_unproject(const Point& p, double lat0_deg) {
  double k = kEarthRadiusM * kDegToRad;
  return {p.x / (k * std::cos(lat0_deg * kDegToRad)), p.y / k};
}

std::vector<Ring> project_rings(const std::vector<Ring>& rings, double lat0_deg) {
  std::vector<Ring> out(rings.size());
  for (std::size_t i = 0; i < rings.size(); ++i) {
    out[i].reserve(rings[i].size());
    for (const auto& p : rings[i]) out[i].push_back(equirect_project(p, lat0_deg));
  }
  return out;
}

// Signed area and area-weighted centroid of one closed ring in planar coords.
void ring_area_centroid(std::span<const Point> ring, double& area, Point& centroid) {
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    const Point& p = ring[i];
    const Point& q = ring[i + 1];
    double cross = p.x * q.y - q.x * p.y;
    a2 += cross;
    cx += (p.x + q.x) * cross;
    cy += (p.y + q.y) * cross;
  }
  area = a2 / 2.0;
  if (a2 != 0.0) {
    centroid = {cx / (3.0 * a2), cy / (3.0 * a2)};
  } else {
    centroid = ring.empty() ? Point{} : ring.front();
  }
}

}  // namespace

double distance_m(const Point& a, const Point& b, CrsMode mode) {
  if (mode == CrsMode::geographic) return haversine_m(a, b);
  return std::hypot(a.x - b.x, a.y - b.y);
}

double signed_ring_area(std::span<const Point> ring) {
  double area;
  Point c;
  ring_area_centroid(ring, area, c);
  return area;
}

double polygon_area_ha(const std::vector<Ring>& rings, CrsMode mode) {
  const std::vector<Ring>* planar = &rings;
  std::vector<Ring> projected;
  if (mode == CrsMode::geographic) {
    projected = project_rings(rings, mean_latitude(rings));
    planar = &projected;
  }
  double total_m2 = 0.0;
  for (const auto& ring : *planar) total_m2 += signed_ring_area(ring);
  return std::abs(total_m2) / 10000.0;
}

Point polygon_centroid(const std::vector<Ring>& rings, CrsMode mode) {
  double lat0 = 0.0;
  const std::vector<Ring>* planar = &rings;
  std::vector<Ring> projected;
  if (mode == CrsMode::geographic) {
    lat0 = mean_latitude(rings);
    projected = project_rings(rings, lat0);
    planar = &projected;
  }
  double total_area = 0.0;
  double cx = 0.0, cy = 0.0;
  for (const auto& ring : *planar) {
    double area;
    Point c;
    ring_area_centroid(ring, area, c);
    total_area += area;
    cx += c.x * area;
    cy += c.y * area;
  }
  Point result;
  if (total_area != 0.0) {
    result = {cx / total_area, cy / total_area};
  } else if (!planar->empty() && !planar->front().empty()) {
    result = planar->front().front();
  }
  if (mode == CrsMode::geographic) result = equirect_unproject(result, lat0);
  return result;
}

BoundingBox rings_bbox(const std::vector<Ring>& rings) {
  BoundingBox box{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                  std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const auto& ring : rings) {
    for (const auto& p : ring) {
      box.min_x = std::min(box.min_x, p.x);
      box.min_y = std::min(box.min_y, p.y);
      box.max_x = std::max(box.max_x, p.x);
      box.max_y = std::max(box.max_y, p.y);
    }
  }
  return box;
}

bool point_on_segment(const Point& p, const Point& a, const Point& b) {
  double minx = std::min(a.x, b.x), maxx = std::max(a.x, b.x);
  double miny = std::min(a.y, b.y), maxy = std::max(a.y, b.y);
  if (p.x < minx || p.x > maxx || p.y < miny || p.y > maxy) return false;
  double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
  double scale = std::max({1.0, std::abs(b.x - a.x), std::abs(b.y - a.y),
                           std::abs(p.x - a.x), std::abs(p.y - a.y)});
  return std::abs(cross) <= 1e-12 * scale * scale;
}

bool point_in_rings(const Point& p, const std::vector<Ring>& rings) {
  bool inside = false;
  for (const auto& ring : rings) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      const Point& a = ring[i];
      const Point& b = ring[i + 1];
      if (point_on_segment(p, a, b)) return true;  // boundary counts as inside
      if ((a.y > p.y) != (b.y > p.y)) {
        double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
        if (p.x < x_cross) inside = !inside;
      }
    }
  }
  return inside;
}

}  // namespace footprint
