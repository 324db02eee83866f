#include "footprint/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "footprint/event.hpp"
#include "footprint/rng.hpp"
#include "footprint/spatial_weights.hpp"

namespace footprint {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::uint64_t stage_seed(std::uint64_t master, std::uint64_t stage_id) {
  return Rng::stream(master, stage_id).next();
}

// Stage ids for seed derivation; distinct per consumer so streams never
// collide across stages.
constexpr std::uint64_t kSeedKmeans = 300;
constexpr std::uint64_t kSeedMoranBase = 100;   // +source
constexpr std::uint64_t kSeedLisaBase = 200;    // +source

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

const char* pair_name(int pair) {
  switch (pair) {
    case 0:
      return "photo_checkin";
    case 1:
      return "photo_tweet";
    case 2:
      return "checkin_tweet";
  }
  return "?";
}

constexpr std::array<std::pair<Source, Source>, 3> kPairs{
    std::pair{Source::photo, Source::checkin}, std::pair{Source::photo, Source::tweet},
    std::pair{Source::checkin, Source::tweet}};

std::string lisa_property(const LisaZone& z) {
  if (z.quadrant == Quadrant::Isolated) return "isolated";
  if (!z.significant) return "NS";
  return quadrant_name(z.quadrant);
}

void write_stats_block(std::ofstream& out, const std::string& title,
                       const std::array<DescriptiveStats, kNumSources>& stats) {
  out << title << ",photo,checkin,tweet\n";
  auto row = [&](const char* name, auto get) {
    out << name;
    for (const auto& s : stats) out << ',' << get(s);
    out << '\n';
  };
  row("count", [](const DescriptiveStats& s) { return std::to_string(s.count); });
  row("min", [](const DescriptiveStats& s) { return fmt(s.min); });
  row("max", [](const DescriptiveStats& s) { return fmt(s.max); });
  row("sum", [](const DescriptiveStats& s) { return fmt(s.sum); });
  row("mean", [](const DescriptiveStats& s) { return fmt(s.mean); });
  row("sd", [](const DescriptiveStats& s) { return fmt(s.sd); });
  row("cv", [](const DescriptiveStats& s) { return s.cv ? fmt(*s.cv) : std::string("null"); });
}

}  // namespace

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a(ss.str());
}

PipelineResult run_pipeline(const PipelineConfig& config, const std::string& store_dir) {
  PipelineResult r;
  if (!store_dir.empty()) fs::create_directories(store_dir);

  // ingest + split
  std::array<std::vector<EventRecord>, kNumSources> raw;
  IngestReport photo_report, tweet_report;
  if (!config.photo_file.empty()) {
    auto [events, report] = parse_events(config.photo_file, Source::photo, config.crs);
    raw[static_cast<int>(Source::photo)] = std::move(events);
    photo_report = std::move(report);
  }
  if (!config.tweet_file.empty()) {
    auto [events, report] = parse_events(config.tweet_file, Source::tweet, config.crs);
    tweet_report = std::move(report);
    CheckinPredicate pred = config.checkin_regex
                                ? regex_checkin_predicate(*config.checkin_regex)
                                : CheckinPredicate(default_checkin_predicate);
    auto split = split_checkins(events, pred);
    raw[static_cast<int>(Source::checkin)] = std::move(split.checkins);
    raw[static_cast<int>(Source::tweet)] = std::move(split.ordinary);
  }
  r.counts[static_cast<int>(Source::photo)].parsed_accepted = photo_report.accepted;
  r.counts[static_cast<int>(Source::photo)].parsed_rejected = photo_report.rejected;
  r.counts[static_cast<int>(Source::checkin)].parsed_accepted =
      raw[static_cast<int>(Source::checkin)].size();
  r.counts[static_cast<int>(Source::tweet)].parsed_accepted =
      raw[static_cast<int>(Source::tweet)].size();
  r.counts[static_cast<int>(Source::tweet)].parsed_rejected = tweet_report.rejected;

  // classify + zones + spatial join + metrics, per source
  r.zones = load_zones(config.zones_file, config.crs);
  const std::size_t n_zones = r.zones.size();
  r.zone_counts.assign(n_zones, {});
  ZoneIndex index(r.zones);

  std::array<std::vector<EventRecord>, kNumSources> tourist_events;
  for (int s = 0; s < kNumSources; ++s) {
    auto& counts = r.counts[s];
    const char* sname = source_name(static_cast<Source>(s));
    if (raw[s].empty()) {
      r.temporal[s].source = static_cast<Source>(s);
      continue;
    }
    if (!store_dir.empty()) {
      auto out = open_out(store_dir + "/ingest_" + sname + ".ndjson");
      for (const auto& e : raw[s]) out << event_to_ndjson(e) << '\n';
    }
    auto labels = label_users(raw[s], config.threshold_days);
    if (!store_dir.empty()) {
      auto out = open_out(store_dir + "/labels_" + sname + ".csv");
      out << "user_id,source,label,max_span_days\n";
      for (const auto& l : labels)
        out << l.user_id << ',' << source_name(l.source) << ','
            << (l.tourist ? "tourist" : "resident") << ',' << l.max_span_days << '\n';
    }
    tourist_events[s] = filter_tourist_events(raw[s], labels);
    counts.tourist_events = tourist_events[s].size();
    counts.resident_events = raw[s].size() - tourist_events[s].size();
    raw[s].clear();
    raw[s].shrink_to_fit();

    std::vector<PointAssignment> assignments;
    assignments.reserve(tourist_events[s].size());
    for (std::size_t i = 0; i < tourist_events[s].size(); ++i) {
      const auto& e = tourist_events[s][i];
      assignments.push_back({i, index.locate({e.lon, e.lat})});
      assignments.back().zone_index ? ++counts.assigned : ++counts.unassigned;
    }
    if (!store_dir.empty()) {
      auto out = open_out(store_dir + "/assignments_" + sname + ".csv");
      out << "event_index,zone_id\n";
      for (const auto& a : assignments)
        out << a.event_index << ','
            << (a.zone_index ? r.zones[*a.zone_index].id : std::string()) << '\n';
    }
    auto source_counts = unique_tourist_counts(tourist_events[s], assignments, n_zones);
    for (std::size_t z = 0; z < n_zones; ++z) r.zone_counts[z][s] = source_counts[z][s];
    r.temporal[s] = temporal_profile(tourist_events[s], static_cast<Source>(s));
  }

  for (int s = 0; s < kNumSources; ++s) {
    std::vector<long> col(n_zones);
    for (std::size_t z = 0; z < n_zones; ++z) col[z] = r.zone_counts[z][s];
    r.densities[s] = density(col, r.zones);
    r.analysis_values[s] = config.do_rescale ? rescale(r.densities[s]) : r.densities[s];
    r.raw_stats[s] = descriptive_stats(r.densities[s]);
    r.analysis_stats[s] = descriptive_stats(r.analysis_values[s]);
  }

  // OLS between source pairs
  for (int p = 0; p < 3; ++p) {
    auto [xs, ys] = kPairs[p];
    r.regressions.push_back(ols_bivariate(r.analysis_values[static_cast<int>(xs)],
                                          r.analysis_values[static_cast<int>(ys)],
                                          source_name(xs), source_name(ys)));
  }

  // K-means typology over the three analysis variables
  std::vector<std::vector<double>> points(n_zones, std::vector<double>(kNumSources));
  for (std::size_t z = 0; z < n_zones; ++z)
    for (int s = 0; s < kNumSources; ++s) points[z][s] = r.analysis_values[s][z];
  r.clusters = kmeans(points, config.k, stage_seed(config.seed, kSeedKmeans), config.restarts,
                      config.jobs);
  r.profiles = group_profiles(r.clusters, points);

  // spatial autocorrelation
  SpatialWeights W =
      build_weights(r.zones, config.crs, config.threshold_m, config.row_standardize);
  for (int s = 0; s < kNumSources; ++s) {
    r.moran[s] = global_moran(r.analysis_values[s], W, config.permutations,
                              stage_seed(config.seed, kSeedMoranBase + s), config.jobs);
    r.lisa[s] = local_moran(r.analysis_values[s], W, config.permutations, config.alpha,
                            stage_seed(config.seed, kSeedLisaBase + s), config.jobs);
  }

  // typology fusion + gradient
  r.typology = combine_hh(r.lisa[static_cast<int>(Source::photo)],
                          r.lisa[static_cast<int>(Source::checkin)],
                          r.lisa[static_cast<int>(Source::tweet)], r.zones);
  if (config.center) {
    r.gradient_center = *config.center;
  } else {
    Point c{0.0, 0.0};
    for (const auto& z : r.zones) {
      c.x += z.centroid.x;
      c.y += z.centroid.y;
    }
    c.x /= static_cast<double>(n_zones);
    c.y /= static_cast<double>(n_zones);
    r.gradient_center = c;
  }
  r.gradient =
      specialization_gradient(r.typology, r.zones, r.gradient_center, config.ring_m, config.crs);

  // keep tourist events out of the result; the store is written separately
  return r;
}

void write_outputs(const PipelineResult& r, const PipelineConfig& config,
                   const std::string& config_text) {
  fs::create_directories(config.out_dir);
  const std::string& dir = config.out_dir;
  std::vector<std::string> written;

  {
    auto out = open_out(dir + "/metrics.csv");
    out << "zone_id";
    for (int s = 0; s < kNumSources; ++s) {
      const char* n = source_name(static_cast<Source>(s));
      out << ',' << n << "_count," << n << "_density," << n << "_rescaled";
    }
    out << '\n';
    for (std::size_t z = 0; z < r.zones.size(); ++z) {
      out << r.zones[z].id;
      for (int s = 0; s < kNumSources; ++s)
        out << ',' << r.zone_counts[z][s] << ',' << fmt(r.densities[s][z]) << ','
            << fmt(r.analysis_values[s][z]);
      out << '\n';
    }
    written.push_back("metrics.csv");
  }
  {
    auto out = open_out(dir + "/stats.csv");
    write_stats_block(out, "density", r.raw_stats);
    write_stats_block(out, config.do_rescale ? "rescaled" : "density_repeat", r.analysis_stats);
    written.push_back("stats.csv");
  }
  {
    auto out = open_out(dir + "/temporal.csv");
    out << "source";
    for (int h = 0; h < 24; ++h) out << ",h" << h;
    out << '\n';
    for (const auto& t : r.temporal) {
      out << source_name(t.source);
      for (int h = 0; h < 24; ++h) out << ',' << t.hour_counts[h];
      out << '\n';
    }
    written.push_back("temporal.csv");
  }
  {
    auto out = open_out(dir + "/ols.csv");
    out << "x_source,y_source,slope,intercept,r2,adj_r2,slope_p\n";
    for (const auto& reg : r.regressions)
      out << reg.x_name << ',' << reg.y_name << ',' << fmt(reg.slope) << ','
          << fmt(reg.intercept) << ',' << fmt(reg.r2) << ',' << fmt(reg.adj_r2) << ','
          << fmt(reg.slope_p) << '\n';
    written.push_back("ols.csv");
  }
  {
    auto out = open_out(dir + "/residuals.csv");
    out << "zone_id";
    for (int p = 0; p < 3; ++p) out << ",stdres_" << pair_name(p);
    out << '\n';
    for (std::size_t z = 0; z < r.zones.size(); ++z) {
      out << r.zones[z].id;
      for (const auto& reg : r.regressions) out << ',' << fmt(reg.std_residuals[z]);
      out << '\n';
    }
    written.push_back("residuals.csv");
  }
  {
    auto out = open_out(dir + "/clusters.csv");
    out << "zone_id,group\n";
    for (std::size_t z = 0; z < r.zones.size(); ++z)
      out << r.zones[z].id << ',' << r.clusters.assignments[z] << '\n';
    written.push_back("clusters.csv");
  }
  {
    auto out = open_out(dir + "/group_profiles.csv");
    out << "group,count";
    for (int s = 0; s < kNumSources; ++s) {
      const char* n = source_name(static_cast<Source>(s));
      out << ',' << n << "_mean," << n << "_sd";
    }
    out << '\n';
    for (const auto& row : r.profiles) {
      out << (row.group == 0 ? std::string("Total") : std::to_string(row.group)) << ','
          << row.count;
      for (int s = 0; s < kNumSources; ++s)
        out << ',' << fmt(row.mean[s]) << ',' << fmt(row.sd[s]);
      out << '\n';
    }
    written.push_back("group_profiles.csv");
  }
  {
    auto out = open_out(dir + "/moran.csv");
    out << "source,I,expected,z_score,p_value,perm_p,permutations,seed\n";
    for (int s = 0; s < kNumSources; ++s) {
      const auto& m = r.moran[s];
      out << source_name(static_cast<Source>(s)) << ',' << fmt(m.I) << ',' << fmt(m.expected)
          << ',' << fmt(m.z_score) << ',' << fmt(m.p_value) << ',' << fmt(m.perm_p) << ','
          << m.permutations << ',' << m.seed << '\n';
    }
    written.push_back("moran.csv");
  }
  for (int s = 0; s < kNumSources; ++s) {
    std::string name = std::string("lisa_") + source_name(static_cast<Source>(s)) + ".csv";
    auto out = open_out(dir + "/" + name);
    out << "zone_id,local_i,quadrant,pseudo_p,significant\n";
    for (std::size_t z = 0; z < r.zones.size(); ++z) {
      const auto& lz = r.lisa[s].zones[z];
      out << r.zones[z].id << ',' << fmt(lz.local_i) << ',' << quadrant_name(lz.quadrant) << ','
          << fmt(lz.pseudo_p) << ',' << (lz.significant ? "true" : "false") << '\n';
    }
    written.push_back(name);
  }
  {
    auto out = open_out(dir + "/typology.csv");
    out << "zone_id,photo_hh,checkin_hh,tweet_hh,label\n";
    for (const auto& t : r.typology) {
      out << t.zone_id;
      for (int s = 0; s < kNumSources; ++s) out << ',' << (t.membership[s] ? 1 : 0);
      out << ',' << t.label << '\n';
    }
    written.push_back("typology.csv");
  }
  {
    auto out = open_out(dir + "/gradient.csv");
    out << "ring,zone_count,mean_membership,class_shares\n";
    for (const auto& row : r.gradient) {
      out << row.ring << ',' << row.zone_count << ',' << fmt(row.mean_membership) << ',';
      bool first = true;
      for (const auto& [label, share] : row.class_share) {
        out << (first ? "" : ";") << label << ':' << fmt(share);
        first = false;
      }
      out << '\n';
    }
    written.push_back("gradient.csv");
  }
  {
    auto out = open_out(dir + "/zones_out.geojson");
    out << "{\"type\":\"FeatureCollection\",\"features\":[\n";
    for (std::size_t z = 0; z < r.zones.size(); ++z) {
      nlohmann::ordered_json props;
      props["id"] = r.zones[z].id;
      props["area_ha"] = r.zones[z].area_ha;
      for (int s = 0; s < kNumSources; ++s) {
        const char* n = source_name(static_cast<Source>(s));
        props[std::string(n) + "_count"] = r.zone_counts[z][s];
        props[std::string(n) + "_density"] = r.densities[s][z];
        props[std::string(n) + "_rescaled"] = r.analysis_values[s][z];
        props[std::string("lisa_") + n] = lisa_property(r.lisa[s].zones[z]);
      }
      props["cluster_group"] = r.clusters.assignments[z];
      for (int p = 0; p < 3; ++p)
        props[std::string("stdres_") + pair_name(p)] = r.regressions[p].std_residuals[z];
      props["typology"] = r.typology[z].label;

      nlohmann::ordered_json geom;
      const auto& rings = r.zones[z].rings;
      auto ring_json = [](const Ring& ring) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& p : ring) arr.push_back({p.x, p.y});
        return arr;
      };
      if (rings.size() == 1) {
        geom["type"] = "Polygon";
        geom["coordinates"] = nlohmann::ordered_json::array({ring_json(rings[0])});
      } else {
        geom["type"] = "MultiPolygon";
        auto coords = nlohmann::ordered_json::array();
        for (const auto& ring : rings)
          coords.push_back(nlohmann::ordered_json::array({ring_json(ring)}));
        geom["coordinates"] = coords;
      }
      nlohmann::ordered_json feature;
      feature["type"] = "Feature";
      feature["properties"] = std::move(props);
      feature["geometry"] = std::move(geom);
      out << feature.dump() << (z + 1 < r.zones.size() ? ",\n" : "\n");
    }
    out << "]}\n";
    written.push_back("zones_out.geojson");
  }

  // manifest last, hashing everything written above
  nlohmann::ordered_json manifest;
  manifest["tool"] = "footprint";
  manifest["version"] = "0.1.0";
  manifest["seed"] = config.seed;
  manifest["config_hash"] = fnv1a(config_text);
  manifest["complete"] = true;
  nlohmann::ordered_json stages;
  for (int s = 0; s < kNumSources; ++s) {
    const auto& c = r.counts[s];
    nlohmann::ordered_json j;
    j["parsed_accepted"] = c.parsed_accepted;
    j["parsed_rejected"] = c.parsed_rejected;
    j["tourist_events"] = c.tourist_events;
    j["resident_events"] = c.resident_events;
    j["assigned"] = c.assigned;
    j["unassigned"] = c.unassigned;
    stages[source_name(static_cast<Source>(s))] = std::move(j);
  }
  manifest["stages"] = std::move(stages);
  manifest["zones"] = r.zones.size();
  nlohmann::ordered_json outputs;
  std::uint64_t combined = 0xcbf29ce484222325ULL;
  for (const auto& name : written) {
    std::uint64_t h = fnv1a_file(dir + "/" + name);
    outputs[name] = h;
    combined ^= h;
    combined *= 0x100000001b3ULL;
  }
  manifest["outputs"] = std::move(outputs);
  manifest["content_hash"] = combined;
  auto out = open_out(dir + "/manifest.json");
  out << manifest.dump(2) << '\n';
}

std::string render_report(const std::string& out_dir) {
  auto read_file = [&](const std::string& name) -> std::string {
    std::ifstream in(out_dir + "/" + name);
    if (!in) return {};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  std::ostringstream out;
  std::string manifest_text = read_file("manifest.json");
  if (manifest_text.empty()) throw DataError("no manifest.json in " + out_dir);
  auto manifest = nlohmann::json::parse(manifest_text);
  out << "run summary (" << out_dir << ")\n";
  out << "  seed " << manifest.value("seed", 0ULL) << ", zones "
      << manifest.value("zones", 0ULL) << ", complete "
      << (manifest.value("complete", false) ? "yes" : "no") << "\n\n";
  if (manifest.contains("stages")) {
    out << "per-source record counts\n";
    for (const auto& [name, j] : manifest["stages"].items()) {
      out << "  " << name << ": accepted " << j.value("parsed_accepted", 0ULL) << ", rejected "
          << j.value("parsed_rejected", 0ULL) << ", tourist events "
          << j.value("tourist_events", 0ULL) << ", resident events "
          << j.value("resident_events", 0ULL) << "\n";
    }
    out << '\n';
  }
  for (const char* section : {"stats.csv", "ols.csv", "group_profiles.csv", "moran.csv",
                              "gradient.csv"}) {
    std::string text = read_file(section);
    if (text.empty()) continue;
    out << "[" << section << "]\n" << text << '\n';
  }
  return out.str();
}

}  // namespace footprint
