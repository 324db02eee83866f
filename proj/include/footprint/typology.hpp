#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "footprint/moran.hpp"
#include "footprint/zones.hpp"

namespace footprint {

// Which sources' significant HH clusters contain the zone, and the derived
// 8-way class label: P (photo), F (checkin), T (tweet), their combinations,
// or "none".
struct TypologyClass {
  std::string zone_id;
  std::array<bool, kNumSources> membership{};  // indexed by Source
  std::string label;
};

std::string membership_label(const std::array<bool, kNumSources>& membership);

// Fuses the three univariate LISA results (parallel to zones). Mismatched
// zone sets are fatal.
std::vector<TypologyClass> combine_hh(const LisaResult& photo, const LisaResult& checkin,
                                      const LisaResult& tweet, const std::vector<Zone>& zones);

struct GradientRow {
  int ring = 0;  // 1-based; ring r covers ((r-1)*ring_m, r*ring_m]
  std::size_t zone_count = 0;
  double mean_membership = 0.0;            // mean |membership| over the ring's zones
  std::map<std::string, double> class_share;
};

// Class frequencies by concentric distance band (zone centroid to center).
// Ring 1 starts at distance 0; empty trailing rings are omitted.
std::vector<GradientRow> specialization_gradient(const std::vector<TypologyClass>& typology,
                                                 const std::vector<Zone>& zones, Point center,
                                                 double ring_m, CrsMode mode);

}  // namespace footprint
