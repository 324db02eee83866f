#include "footprint/zones.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace footprint {

namespace {

Ring parse_ring(const nlohmann::json& coords, const std::string& feature_id) {
  Ring ring;
  for (const auto& pt : coords) {
    if (!pt.is_array() || pt.size() < 2)
      throw DataError("feature '" + feature_id + "': bad coordinate");
    ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
  }
  if (ring.size() < 4)
    throw DataError("feature '" + feature_id + "': ring with fewer than 4 vertices");
  if (ring.front().x != ring.back().x || ring.front().y != ring.back().y)
    throw DataError("feature '" + feature_id + "': unclosed ring");
  return ring;
}

void parse_polygon(const nlohmann::json& coords, const std::string& feature_id,
                   std::vector<Ring>& out) {
  for (const auto& ring : coords) out.push_back(parse_ring(ring, feature_id));
}

}  // namespace

std::vector<Zone> zones_from_geojson(const nlohmann::json& fc, CrsMode crs_mode) {
  if (!fc.is_object() || fc.value("type", "") != "FeatureCollection" || !fc.contains("features"))
    throw DataError("zones file is not a GeoJSON FeatureCollection");

  std::vector<Zone> zones;
  std::set<std::string> seen_ids;
  for (const auto& feature : fc["features"]) {
    Zone z;
    const auto& props = feature.value("properties", nlohmann::json::object());
    if (props.contains("id")) {
      const auto& id = props["id"];
      z.id = id.is_string() ? id.get<std::string>() : id.dump();
    } else if (feature.contains("id")) {
      const auto& id = feature["id"];
      z.id = id.is_string() ? id.get<std::string>() : id.dump();
    } else {
      throw DataError("zone feature without id property");
    }
    if (!seen_ids.insert(z.id).second) throw DataError("duplicate zone id '" + z.id + "'");

    const auto& geom = feature.value("geometry", nlohmann::json::object());
    std::string type = geom.value("type", "");
    if (type == "Polygon") {
      parse_polygon(geom["coordinates"], z.id, z.rings);
    } else if (type == "MultiPolygon") {
      for (const auto& poly : geom["coordinates"]) parse_polygon(poly, z.id, z.rings);
    } else {
      throw DataError("feature '" + z.id + "': unsupported geometry type '" + type + "'");
    }

    double computed_ha = polygon_area_ha(z.rings, crs_mode);
    if (props.contains("area_ha") && props["area_ha"].is_number()) {
      z.area_ha = props["area_ha"].get<double>();
    } else {
      z.area_ha = computed_ha;
    }
    if (!(z.area_ha > 0.0) || computed_ha <= 0.0)
      throw DataError("feature '" + z.id + "': zero-area polygon");
    z.centroid = polygon_centroid(z.rings, crs_mode);
    z.bbox = rings_bbox(z.rings);
    zones.push_back(std::move(z));
  }
  return zones;
}

std::vector<Zone> load_zones(const std::string& path, CrsMode crs_mode) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open zones file: " + path);
  nlohmann::json fc = nlohmann::json::parse(in, nullptr, false);
  if (fc.is_discarded()) throw DataError("zones file is not valid JSON: " + path);
  return zones_from_geojson(fc, crs_mode);
}

ZoneIndex::ZoneIndex(const std::vector<Zone>& zones) : zones_(zones) {
  id_order_.resize(zones.size());
  for (std::size_t i = 0; i < zones.size(); ++i) id_order_[i] = i;
  std::sort(id_order_.begin(), id_order_.end(),
            [&](std::size_t a, std::size_t b) { return zones[a].id < zones[b].id; });

  if (zones.empty()) {
    cells_.resize(1);
    return;
  }
  extent_ = zones.front().bbox;
  for (const auto& z : zones) {
    extent_.min_x = std::min(extent_.min_x, z.bbox.min_x);
    extent_.min_y = std::min(extent_.min_y, z.bbox.min_y);
    extent_.max_x = std::max(extent_.max_x, z.bbox.max_x);
    extent_.max_y = std::max(extent_.max_y, z.bbox.max_y);
  }
  int target = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(zones.size()))));
  nx_ = ny_ = std::min(target * 2, 256);
  cell_w_ = std::max((extent_.max_x - extent_.min_x) / nx_, 1e-12);
  cell_h_ = std::max((extent_.max_y - extent_.min_y) / ny_, 1e-12);
  cells_.resize(static_cast<std::size_t>(nx_) * ny_);

  // Insert in id-rank order so each cell's candidate list is already sorted.
  for (std::uint32_t rank = 0; rank < id_order_.size(); ++rank) {
    const auto& box = zones[id_order_[rank]].bbox;
    int x0 = std::clamp(static_cast<int>((box.min_x - extent_.min_x) / cell_w_), 0, nx_ - 1);
    int x1 = std::clamp(static_cast<int>((box.max_x - extent_.min_x) / cell_w_), 0, nx_ - 1);
    int y0 = std::clamp(static_cast<int>((box.min_y - extent_.min_y) / cell_h_), 0, ny_ - 1);
    int y1 = std::clamp(static_cast<int>((box.max_y - extent_.min_y) / cell_h_), 0, ny_ - 1);
    for (int cy = y0; cy <= y1; ++cy)
      for (int cx = x0; cx <= x1; ++cx)
        cells_[static_cast<std::size_t>(cy) * nx_ + cx].push_back(rank);
  }
}

std::optional<std::size_t> ZoneIndex::locate(const Point& p) const {
  if (zones_.empty() || !extent_.contains(p)) return std::nullopt;
  int cx = std::clamp(static_cast<int>((p.x - extent_.min_x) / cell_w_), 0, nx_ - 1);
  int cy = std::clamp(static_cast<int>((p.y - extent_.min_y) / cell_h_), 0, ny_ - 1);
  for (std::uint32_t rank : cells_[static_cast<std::size_t>(cy) * nx_ + cx]) {
    std::size_t zi = id_order_[rank];
    const Zone& z = zones_[zi];
    if (z.bbox.contains(p) && point_in_rings(p, z.rings)) return zi;
  }
  return std::nullopt;
}

std::vector<PointAssignment> assign_points(const std::vector<EventRecord>& events,
                                           const std::vector<Zone>& zones) {
  ZoneIndex index(zones);
  std::vector<PointAssignment> out;
  out.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i)
    out.push_back({i, index.locate({events[i].lon, events[i].lat})});
  return out;
}

std::vector<PointAssignment> assign_points_naive(const std::vector<EventRecord>& events,
                                                 const std::vector<Zone>& zones) {
  std::vector<std::size_t> id_order(zones.size());
  for (std::size_t i = 0; i < zones.size(); ++i) id_order[i] = i;
  std::sort(id_order.begin(), id_order.end(),
            [&](std::size_t a, std::size_t b) { return zones[a].id < zones[b].id; });

  std::vector<PointAssignment> out;
  out.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    Point p{events[i].lon, events[i].lat};
    PointAssignment a{i, std::nullopt};
    for (std::size_t zi : id_order) {
      if (zones[zi].bbox.contains(p) && point_in_rings(p, zones[zi].rings)) {
        a.zone_index = zi;
        break;
      }
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace footprint
