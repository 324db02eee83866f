#pragma once

#include <array>
#include <span>
#include <vector>

#include "footprint/event.hpp"
#include "footprint/zones.hpp"

namespace footprint {

// Per-zone distinct tourist counts, indexed [zone][source].
using CountTable = std::vector<std::array<long, kNumSources>>;

// events must already be filtered to tourists; assignments is parallel to
// events. A user active in several zones contributes 1 to each of them;
// duplicate events of a user in a zone count once.
CountTable unique_tourist_counts(const std::vector<EventRecord>& events,
                                 const std::vector<PointAssignment>& assignments,
                                 std::size_t n_zones);

// density = count / area_ha, per zone.
std::vector<double> density(std::span<const long> counts, const std::vector<Zone>& zones);

// Min-max linear map onto [0, 1000]. Requires at least two distinct values;
// a constant vector is a degenerate rescale (NumericError).
std::vector<double> rescale(std::span<const double> values);

struct DescriptiveStats {
  std::size_t count = 0;
  double min = 0.0, max = 0.0, sum = 0.0, mean = 0.0;
  double sd = 0.0;               // sample sd (n-1); 0 for a singleton
  std::optional<double> cv;      // 100*sd/mean; absent when mean == 0
};

DescriptiveStats descriptive_stats(std::span<const double> values);

struct TemporalProfile {
  Source source = Source::photo;
  std::array<long, 24> hour_counts{};
  std::array<double, 24> hour_shares{};  // all zero when no events
};

// Counts events of the given source per local hour of day.
TemporalProfile temporal_profile(const std::vector<EventRecord>& events, Source source);

}  // namespace footprint
