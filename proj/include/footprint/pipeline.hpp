#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "footprint/classify.hpp"
#include "footprint/config.hpp"
#include "footprint/kmeans.hpp"
#include "footprint/metrics.hpp"
#include "footprint/moran.hpp"
#include "footprint/regression.hpp"
#include "footprint/typology.hpp"
#include "footprint/zones.hpp"

namespace footprint {

struct SourceCounts {
  std::size_t parsed_accepted = 0;
  std::size_t parsed_rejected = 0;
  std::size_t tourist_events = 0;
  std::size_t resident_events = 0;
  std::size_t assigned = 0;
  std::size_t unassigned = 0;
};

struct PipelineResult {
  std::vector<Zone> zones;
  std::array<SourceCounts, kNumSources> counts;
  CountTable zone_counts;  // [zone][source]
  std::array<std::vector<double>, kNumSources> densities;
  std::array<std::vector<double>, kNumSources> analysis_values;  // rescaled (or raw)
  std::array<DescriptiveStats, kNumSources> raw_stats;
  std::array<DescriptiveStats, kNumSources> analysis_stats;
  std::array<TemporalProfile, kNumSources> temporal;
  std::vector<RegressionResult> regressions;  // the three source pairs
  ClusterModel clusters;
  std::vector<GroupProfileRow> profiles;
  std::array<MoranResult, kNumSources> moran;
  std::array<LisaResult, kNumSources> lisa;
  std::vector<TypologyClass> typology;
  std::vector<GradientRow> gradient;
  Point gradient_center;
};

// Runs ingest -> classify -> assign -> metrics -> {ols, kmeans, moran, lisa}
// -> typology. Stage errors propagate as the owning module's exception type.
// When store_dir is non-empty, per-stage intermediates (accepted events,
// labels, assignments) are persisted there as NDJSON/CSV.
PipelineResult run_pipeline(const PipelineConfig& config, const std::string& store_dir = "");

// Writes the intermediate store, all CSV/GeoJSON exports and the run
// manifest under config.out_dir. config_text is hashed into the manifest.
void write_outputs(const PipelineResult& result, const PipelineConfig& config,
                   const std::string& config_text);

// FNV-1a 64-bit, used for manifest content hashes.
std::uint64_t fnv1a(const std::string& data);
std::uint64_t fnv1a_file(const std::string& path);

// Plain-text summary of a finished run directory (the `report` subcommand).
std::string render_report(const std::string& out_dir);

}  // namespace footprint
