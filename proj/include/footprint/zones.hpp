#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "footprint/event.hpp"
#include "footprint/geometry.hpp"

namespace footprint {

// A census tract: polygon (possibly multi-part, with holes), area, centroid.
struct Zone {
  std::string id;
  std::vector<Ring> rings;
  double area_ha = 0.0;
  Point centroid;
  BoundingBox bbox;
};

// Loads a GeoJSON FeatureCollection of Polygon/MultiPolygon features.
// Each feature needs a unique `id` property; `area_ha`, when present, takes
// precedence over the computed area. Duplicate ids, unclosed rings and
// zero-area polygons are fatal (DataError naming the feature).
std::vector<Zone> load_zones(const std::string& path, CrsMode crs_mode);
std::vector<Zone> zones_from_geojson(const nlohmann::json& fc, CrsMode crs_mode);

struct PointAssignment {
  std::size_t event_index;
  std::optional<std::size_t> zone_index;  // absent when outside every zone
};

// Uniform grid over zone bounding boxes. Queries return candidates in
// ascending zone-id order so that the boundary tie-break (lexicographically
// smallest matching id) is the same as the naive scan's.
class ZoneIndex {
 public:
  explicit ZoneIndex(const std::vector<Zone>& zones);
  // Index of the containing zone with the smallest id, or nullopt.
  std::optional<std::size_t> locate(const Point& p) const;

 private:
  const std::vector<Zone>& zones_;
  std::vector<std::size_t> id_order_;  // zone indices sorted by id
  BoundingBox extent_;
  int nx_ = 1, ny_ = 1;
  double cell_w_ = 1.0, cell_h_ = 1.0;
  std::vector<std::vector<std::uint32_t>> cells_;  // per cell, id-rank order
};

// Grid-accelerated spatial join; one assignment per event, in event order.
std::vector<PointAssignment> assign_points(const std::vector<EventRecord>& events,
                                           const std::vector<Zone>& zones);

// Brute-force O(n*m) reference join with the identical tie-break.
std::vector<PointAssignment> assign_points_naive(const std::vector<EventRecord>& events,
                                                 const std::vector<Zone>& zones);

}  // namespace footprint
