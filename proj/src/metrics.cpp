#include "footprint/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace footprint {

CountTable unique_tourist_counts(const std::vector<EventRecord>& events,
                                 const std::vector<PointAssignment>& assignments,
                                 std::size_t n_zones) {
  if (assignments.size() != events.size())
    throw DataError("assignments do not cover all events");
  CountTable counts(n_zones, std::array<long, kNumSources>{});
  // distinct (source, zone, user)
  std::set<std::tuple<int, std::size_t, std::string_view>> seen;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!assignments[i].zone_index) continue;
    std::size_t zi = *assignments[i].zone_index;
    if (zi >= n_zones) throw DataError("assignment references unknown zone");
    int src = static_cast<int>(events[i].source);
    if (seen.emplace(src, zi, events[i].user_id).second) ++counts[zi][src];
  }
  return counts;
}

std::vector<double> density(std::span<const long> counts, const std::vector<Zone>& zones) {
  if (counts.size() != zones.size()) throw DataError("count/zone size mismatch");
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!(zones[i].area_ha > 0.0))
      throw DataError("zone '" + zones[i].id + "' has non-positive area");
    out[i] = static_cast<double>(counts[i]) / zones[i].area_ha;
  }
  return out;
}

std::vector<double> rescale(std::span<const double> values) {
  if (values.size() < 2) throw NumericError("degenerate rescale: fewer than 2 values");
  auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  double lo = *min_it, hi = *max_it;
  if (lo == hi) throw NumericError("degenerate rescale: constant vector");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = 1000.0 * (values[i] - lo) / (hi - lo);
  return out;
}

DescriptiveStats descriptive_stats(std::span<const double> values) {
  if (values.empty()) throw NumericError("descriptive_stats: empty vector");
  DescriptiveStats s;
  s.count = values.size();
  s.min = values[0];
  s.max = values[0];
  for (double v : values) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    s.sum += v;
  }
  s.mean = s.sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  if (s.mean != 0.0) s.cv = 100.0 * s.sd / s.mean;
  return s;
}

TemporalProfile temporal_profile(const std::vector<EventRecord>& events, Source source) {
  TemporalProfile p;
  p.source = source;
  long total = 0;
  for (const auto& e : events) {
    if (e.source != source) continue;
    ++p.hour_counts[static_cast<std::size_t>(e.ts.hour)];
    ++total;
  }
  if (total > 0) {
    for (std::size_t h = 0; h < 24; ++h)
      p.hour_shares[h] = static_cast<double>(p.hour_counts[h]) / static_cast<double>(total);
  }
  return p;
}

}  // namespace footprint
