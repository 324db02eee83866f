#include "footprint/typology.hpp"

#include <algorithm>
#include <cmath>

namespace footprint {

std::string membership_label(const std::array<bool, kNumSources>& membership) {
  std::string label;
  if (membership[static_cast<int>(Source::photo)]) label += 'P';
  if (membership[static_cast<int>(Source::checkin)]) label += 'F';
  if (membership[static_cast<int>(Source::tweet)]) label += 'T';
  return label.empty() ? "none" : label;
}

std::vector<TypologyClass> combine_hh(const LisaResult& photo, const LisaResult& checkin,
                                      const LisaResult& tweet, const std::vector<Zone>& zones) {
  const std::size_t n = zones.size();
  if (photo.zones.size() != n || checkin.zones.size() != n || tweet.zones.size() != n)
    throw DataError("combine_hh: LISA results cover different zone sets");

  auto is_hh = [](const LisaZone& z) {
    return z.quadrant == Quadrant::HH && z.significant;
  };

  std::vector<TypologyClass> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TypologyClass t;
    t.zone_id = zones[i].id;
    t.membership[static_cast<int>(Source::photo)] = is_hh(photo.zones[i]);
    t.membership[static_cast<int>(Source::checkin)] = is_hh(checkin.zones[i]);
    t.membership[static_cast<int>(Source::tweet)] = is_hh(tweet.zones[i]);
    t.label = membership_label(t.membership);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<GradientRow> specialization_gradient(const std::vector<TypologyClass>& typology,
                                                 const std::vector<Zone>& zones, Point center,
                                                 double ring_m, CrsMode mode) {
  if (ring_m <= 0.0) throw ConfigError("ring width must be > 0");
  if (typology.size() != zones.size())
    throw DataError("specialization_gradient: typology does not cover zones");

  std::vector<GradientRow> rows;
  for (std::size_t i = 0; i < zones.size(); ++i) {
    double d = distance_m(zones[i].centroid, center, mode);
    int ring = std::max(1, static_cast<int>(std::ceil(d / ring_m)));
    if (static_cast<std::size_t>(ring) > rows.size()) rows.resize(ring);
    GradientRow& row = rows[ring - 1];
    row.ring = ring;
    ++row.zone_count;
    int m = 0;
    for (bool b : typology[i].membership) m += b ? 1 : 0;
    row.mean_membership += m;
    row.class_share[typology[i].label] += 1.0;
  }
  for (auto& row : rows) {
    if (row.zone_count == 0) continue;
    row.mean_membership /= static_cast<double>(row.zone_count);
    for (auto& [label, share] : row.class_share)
      share /= static_cast<double>(row.zone_count);
  }
  // empty interior rings stay (count 0); trailing empties are dropped
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].ring = static_cast<int>(i + 1);
  while (!rows.empty() && rows.back().zone_count == 0) rows.pop_back();
  return rows;
}

}  // namespace footprint
