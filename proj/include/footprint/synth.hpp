#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "footprint/common.hpp"
#include "footprint/config.hpp"

namespace footprint {

// Inclusive cell-coordinate rectangle with planted extra tourists per zone.
struct HotspotSpec {
  Source source = Source::photo;
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  int tourists_per_zone = 0;
};

// A deterministic synthetic city: square-cell zones on a grid (projected
// coordinates), background tourist traffic in every zone, planted hotspots,
// and residents with year-spanning activity. Everything is a pure function
// of the scenario and the seed.
struct CityScenario {
  int nx = 15;
  int ny = 15;
  double cell_m = 200.0;  // 200 m cells => 4 ha zones
  std::uint64_t seed = 1;
  int year = 2013;
  // background tourists per zone, indexed by Source (checkin traffic is
  // emitted as tweets carrying a check-in URL)
  std::array<int, kNumSources> base_tourists{2, 1, 3};
  int max_events_per_tourist = 3;
  int residents = 50;
  int events_per_resident = 12;
  std::vector<HotspotSpec> hotspots;

  static CityScenario from_kv(const KvConfig& kv);
};

struct SynthOutput {
  std::string zones_file;
  std::string photo_file;
  std::string tweet_file;
  std::string truth_labels_file;
  std::string truth_hotspots_file;
  std::string pipeline_config_file;
  std::size_t photo_events = 0;
  std::size_t tweet_events = 0;
};

// Writes zones.geojson, events_photo.ndjson, events_tweet.ndjson,
// truth_labels.csv, truth_hotspots.csv and a ready-to-run pipeline.conf
// into out_dir. Output is byte-identical for identical scenario + seed.
SynthOutput generate(const CityScenario& scenario, const std::string& out_dir);

// Zone id for grid cell (col x, row y); ids sort row-major.
std::string synth_zone_id(int x, int y);

}  // namespace footprint
