// Command-line driver for the footprint analysis pipeline.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "footprint/classify.hpp"
#include "footprint/config.hpp"
#include "footprint/event.hpp"
#include "footprint/metrics.hpp"
#include "footprint/moran.hpp"
#include "footprint/pipeline.hpp"
#include "footprint/regression.hpp"
#include "footprint/spatial_weights.hpp"
#include "footprint/synth.hpp"
#include "footprint/typology.hpp"
#include "footprint/zones.hpp"

namespace fs = std::filesystem;
using namespace footprint;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

// Store-level view of metrics.csv: zone ids plus the per-source rescaled
// columns the downstream stages consume.
struct MetricsTable {
  std::vector<std::string> zone_ids;
  std::array<std::vector<double>, kNumSources> rescaled;
  std::array<std::vector<double>, kNumSources> density;
};

MetricsTable load_metrics(const std::string& store) {
  auto rows = read_csv(store + "/metrics.csv");
  if (rows.size() < 2) throw DataError("metrics.csv is empty");
  MetricsTable t;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 1 + 3 * kNumSources) throw DataError("metrics.csv: malformed row");
    t.zone_ids.push_back(row[0]);
    for (int s = 0; s < kNumSources; ++s) {
      t.density[s].push_back(std::stod(row[2 + 3 * s]));
      t.rescaled[s].push_back(std::stod(row[3 + 3 * s]));
    }
  }
  return t;
}

std::vector<EventRecord> load_store_events(const std::string& store, Source source) {
  std::string path = std::string(store) + "/ingest_" + source_name(source) + ".ndjson";
  if (!fs::exists(path)) return {};
  auto [events, report] = parse_events(path, source, CrsMode::projected);
  if (report.rejected > 0) throw DataError("corrupt store file: " + path);
  return events;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

void write_labels_csv(const std::string& path, const std::vector<UserLabel>& labels) {
  auto out = open_out(path);
  out << "user_id,source,label,max_span_days\n";
  for (const auto& l : labels)
    out << l.user_id << ',' << source_name(l.source) << ','
        << (l.tourist ? "tourist" : "resident") << ',' << l.max_span_days << '\n';
}

std::vector<UserLabel> load_labels_csv(const std::string& path) {
  std::vector<UserLabel> labels;
  for (auto& row : read_csv(path)) {
    if (row.size() < 4 || row[0] == "user_id") continue;
    UserLabel l;
    l.user_id = row[0];
    auto src = source_from_name(row[1]);
    if (!src) throw DataError("labels.csv: unknown source " + row[1]);
    l.source = *src;
    l.tourist = row[2] == "tourist";
    l.max_span_days = std::stoi(row[3]);
    labels.push_back(std::move(l));
  }
  return labels;
}

CrsMode parse_crs(const std::string& name) {
  auto m = crs_from_name(name);
  if (!m) throw ConfigError("invalid crs: " + name);
  return *m;
}

void write_lisa_csv(const std::string& path, const LisaResult& lisa,
                    const std::vector<Zone>& zones) {
  auto out = open_out(path);
  out << "zone_id,local_i,quadrant,pseudo_p,significant\n";
  for (std::size_t z = 0; z < zones.size(); ++z) {
    const auto& lz = lisa.zones[z];
    out << zones[z].id << ',' << fmt(lz.local_i) << ',' << quadrant_name(lz.quadrant) << ','
        << fmt(lz.pseudo_p) << ',' << (lz.significant ? "true" : "false") << '\n';
  }
}

LisaResult load_lisa_csv(const std::string& path, const std::vector<Zone>& zones, double alpha) {
  auto rows = read_csv(path);
  std::map<std::string, LisaZone> by_id;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() < 5) throw DataError(path + ": malformed row");
    LisaZone lz;
    lz.local_i = std::stod(row[1]);
    if (row[2] == "HH")
      lz.quadrant = Quadrant::HH;
    else if (row[2] == "LL")
      lz.quadrant = Quadrant::LL;
    else if (row[2] == "HL")
      lz.quadrant = Quadrant::HL;
    else if (row[2] == "LH")
      lz.quadrant = Quadrant::LH;
    else
      lz.quadrant = Quadrant::Isolated;
    lz.pseudo_p = std::stod(row[3]);
    lz.significant = row[4] == "true";
    by_id[rows[i][0]] = lz;
  }
  LisaResult result;
  result.alpha = alpha;
  for (const auto& z : zones) {
    auto it = by_id.find(z.id);
    if (it == by_id.end()) throw DataError(path + ": missing zone " + z.id);
    result.zones.push_back(it->second);
  }
  return result;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfigError;
  if (dynamic_cast<const DataError*>(&e)) return kExitDataError;
  if (dynamic_cast<const NumericError*>(&e)) return kExitNumericError;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"footprint: spatial characterization of tourist activity from geolocated "
               "social-media event logs"};
  app.require_subcommand(1);

  // ---- ingest ----
  std::string in_file, out_store, source_str = "photo", crs_str = "projected";
  auto* ingest = app.add_subcommand("ingest", "parse and validate raw event files");
  ingest->add_option("--source", source_str, "photo or tweet")->required();
  ingest->add_option("--crs", crs_str, "geographic or projected");
  ingest->add_option("--in", in_file, "NDJSON event file")->required();
  ingest->add_option("--out", out_store, "store directory")->required();
  ingest->callback([&] {
    auto src = source_from_name(source_str);
    if (!src || *src == Source::checkin)
      throw ConfigError("ingest source must be photo or tweet");
    auto [events, report] = parse_events(in_file, *src, parse_crs(crs_str));
    fs::create_directories(out_store);
    if (*src == Source::tweet) {
      auto split = split_checkins(events);
      auto tweets = open_out(out_store + "/ingest_tweet.ndjson");
      for (const auto& e : split.ordinary) tweets << event_to_ndjson(e) << '\n';
      auto checkins = open_out(out_store + "/ingest_checkin.ndjson");
      for (const auto& e : split.checkins) checkins << event_to_ndjson(e) << '\n';
    } else {
      auto out = open_out(out_store + "/ingest_photo.ndjson");
      for (const auto& e : events) out << event_to_ndjson(e) << '\n';
    }
    nlohmann::ordered_json j;
    j["accepted"] = report.accepted;
    j["rejected"] = report.rejected;
    auto rej = nlohmann::ordered_json::array();
    for (const auto& rr : report.rejections)
      rej.push_back({{"line", rr.line_number}, {"reason", rr.reason}});
    j["rejections"] = rej;
    auto out = open_out(out_store + "/ingest_report_" + source_name(*src) + ".json");
    out << j.dump(2) << '\n';
    std::cout << "accepted " << report.accepted << ", rejected " << report.rejected << '\n';
  });

  // ---- classify ----
  int threshold_days = 7;
  std::string cls_in, cls_out;
  auto* classify = app.add_subcommand("classify", "label users tourist/resident by activity span");
  classify->add_option("--threshold-days", threshold_days);
  classify->add_option("--in", cls_in, "store directory")->required();
  classify->add_option("--out", cls_out, "store directory (default: same as --in)");
  classify->callback([&] {
    if (cls_out.empty()) cls_out = cls_in;
    fs::create_directories(cls_out);
    std::vector<UserLabel> all;
    for (Source s : kAllSources) {
      auto events = load_store_events(cls_in, s);
      if (events.empty()) continue;
      auto labels = label_users(events, threshold_days);
      all.insert(all.end(), labels.begin(), labels.end());
    }
    if (all.empty()) throw DataError("no ingested events in store " + cls_in);
    write_labels_csv(cls_out + "/labels.csv", all);
    std::cout << "labeled " << all.size() << " users\n";
  });

  // ---- aggregate ----
  std::string agg_in, agg_out, agg_zones;
  std::string agg_crs = "projected";
  bool no_rescale = false;
  auto* aggregate =
      app.add_subcommand("aggregate", "spatial join + per-zone unique-tourist metrics");
  aggregate->add_option("--in", agg_in, "store directory")->required();
  aggregate->add_option("--zones", agg_zones, "GeoJSON zones file")->required();
  aggregate->add_option("--crs", agg_crs);
  aggregate->add_option("--out", agg_out, "store directory (default: same as --in)");
  aggregate->add_flag("--no-rescale", no_rescale, "export raw densities only");
  aggregate->callback([&] {
    if (agg_out.empty()) agg_out = agg_in;
    fs::create_directories(agg_out);
    auto zones = load_zones(agg_zones, parse_crs(agg_crs));
    auto labels = load_labels_csv(agg_in + "/labels.csv");
    CountTable table(zones.size(), std::array<long, kNumSources>{});
    std::array<TemporalProfile, kNumSources> temporal;
    for (Source s : kAllSources) {
      auto events = load_store_events(agg_in, s);
      if (events.empty()) continue;
      auto tourists = filter_tourist_events(events, labels);
      auto assignments = assign_points(tourists, zones);
      auto counts = unique_tourist_counts(tourists, assignments, zones.size());
      for (std::size_t z = 0; z < zones.size(); ++z)
        table[z][static_cast<int>(s)] = counts[z][static_cast<int>(s)];
      temporal[static_cast<int>(s)] = temporal_profile(tourists, s);
      auto out = open_out(agg_out + "/assignments_" + source_name(s) + ".csv");
      out << "event_index,zone_id\n";
      for (const auto& a : assignments)
        out << a.event_index << ',' << (a.zone_index ? zones[*a.zone_index].id : std::string())
            << '\n';
    }
    auto out = open_out(agg_out + "/metrics.csv");
    out << "zone_id";
    for (Source s : kAllSources) {
      const char* n = source_name(s);
      out << ',' << n << "_count," << n << "_density," << n << "_rescaled";
    }
    out << '\n';
    std::array<std::vector<double>, kNumSources> dens, resc;
    for (int s = 0; s < kNumSources; ++s) {
      std::vector<long> col(zones.size());
      for (std::size_t z = 0; z < zones.size(); ++z) col[z] = table[z][s];
      dens[s] = density(col, zones);
      resc[s] = no_rescale ? dens[s] : rescale(dens[s]);
    }
    for (std::size_t z = 0; z < zones.size(); ++z) {
      out << zones[z].id;
      for (int s = 0; s < kNumSources; ++s)
        out << ',' << table[z][s] << ',' << fmt(dens[s][z]) << ',' << fmt(resc[s][z]);
      out << '\n';
    }
    auto tout = open_out(agg_out + "/temporal.csv");
    tout << "source";
    for (int h = 0; h < 24; ++h) tout << ",h" << h;
    tout << '\n';
    for (int s = 0; s < kNumSources; ++s) {
      tout << source_name(static_cast<Source>(s));
      for (int h = 0; h < 24; ++h) tout << ',' << temporal[s].hour_counts[h];
      tout << '\n';
    }
    std::cout << "aggregated " << zones.size() << " zones\n";
  });

  // ---- stats ----
  std::string stats_in;
  auto* stats = app.add_subcommand("stats", "descriptive statistics of per-zone densities");
  stats->add_option("--in", stats_in, "store directory")->required();
  stats->callback([&] {
    auto t = load_metrics(stats_in);
    auto out = open_out(stats_in + "/stats.csv");
    auto block = [&](const char* title, const std::array<std::vector<double>, 3>& cols) {
      out << title << ",photo,checkin,tweet\n";
      std::array<DescriptiveStats, 3> st;
      for (int s = 0; s < 3; ++s) st[s] = descriptive_stats(cols[s]);
      out << "count," << st[0].count << ',' << st[1].count << ',' << st[2].count << '\n';
      out << "min," << fmt(st[0].min) << ',' << fmt(st[1].min) << ',' << fmt(st[2].min) << '\n';
      out << "max," << fmt(st[0].max) << ',' << fmt(st[1].max) << ',' << fmt(st[2].max) << '\n';
      out << "sum," << fmt(st[0].sum) << ',' << fmt(st[1].sum) << ',' << fmt(st[2].sum) << '\n';
      out << "mean," << fmt(st[0].mean) << ',' << fmt(st[1].mean) << ',' << fmt(st[2].mean)
          << '\n';
      out << "sd," << fmt(st[0].sd) << ',' << fmt(st[1].sd) << ',' << fmt(st[2].sd) << '\n';
      out << "cv," << (st[0].cv ? fmt(*st[0].cv) : "null") << ','
          << (st[1].cv ? fmt(*st[1].cv) : "null") << ','
          << (st[2].cv ? fmt(*st[2].cv) : "null") << '\n';
    };
    block("density", t.density);
    block("rescaled", t.rescaled);
    std::cout << "wrote " << stats_in << "/stats.csv\n";
  });

  // ---- ols ----
  std::string ols_in;
  auto* ols = app.add_subcommand("ols", "bivariate OLS between source pairs");
  ols->add_option("--in", ols_in, "store directory")->required();
  ols->callback([&] {
    auto t = load_metrics(ols_in);
    auto out = open_out(ols_in + "/ols.csv");
    out << "x_source,y_source,slope,intercept,r2,adj_r2,slope_p\n";
    auto res_out = open_out(ols_in + "/residuals.csv");
    std::vector<RegressionResult> regs;
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [x, y] : pairs) {
      auto reg = ols_bivariate(t.rescaled[x], t.rescaled[y],
                               source_name(static_cast<Source>(x)),
                               source_name(static_cast<Source>(y)));
      out << reg.x_name << ',' << reg.y_name << ',' << fmt(reg.slope) << ','
          << fmt(reg.intercept) << ',' << fmt(reg.r2) << ',' << fmt(reg.adj_r2) << ','
          << fmt(reg.slope_p) << '\n';
      regs.push_back(std::move(reg));
    }
    res_out << "zone_id";
    for (const auto& reg : regs) res_out << ",stdres_" << reg.x_name << '_' << reg.y_name;
    res_out << '\n';
    for (std::size_t z = 0; z < t.zone_ids.size(); ++z) {
      res_out << t.zone_ids[z];
      for (const auto& reg : regs) res_out << ',' << fmt(reg.std_residuals[z]);
      res_out << '\n';
    }
    std::cout << "wrote " << ols_in << "/ols.csv\n";
  });

  // ---- kmeans ----
  std::string km_in;
  int km_k = 6, km_restarts = 50;
  std::uint64_t km_seed = 1;
  auto* km = app.add_subcommand("kmeans", "k-means typology of zones");
  km->add_option("--in", km_in, "store directory")->required();
  km->add_option("--k", km_k);
  km->add_option("--seed", km_seed);
  km->add_option("--restarts", km_restarts);
  km->callback([&] {
    auto t = load_metrics(km_in);
    std::vector<std::vector<double>> points(t.zone_ids.size(), std::vector<double>(3));
    for (std::size_t z = 0; z < points.size(); ++z)
      for (int s = 0; s < 3; ++s) points[z][s] = t.rescaled[s][z];
    auto model = kmeans(points, km_k, km_seed, km_restarts);
    auto out = open_out(km_in + "/clusters.csv");
    out << "zone_id,group\n";
    for (std::size_t z = 0; z < points.size(); ++z)
      out << t.zone_ids[z] << ',' << model.assignments[z] << '\n';
    auto prof = group_profiles(model, points);
    auto pout = open_out(km_in + "/group_profiles.csv");
    pout << "group,count,photo_mean,photo_sd,checkin_mean,checkin_sd,tweet_mean,tweet_sd\n";
    for (const auto& row : prof) {
      pout << (row.group == 0 ? std::string("Total") : std::to_string(row.group)) << ','
           << row.count;
      for (int s = 0; s < 3; ++s) pout << ',' << fmt(row.mean[s]) << ',' << fmt(row.sd[s]);
      pout << '\n';
    }
    std::cout << "k=" << km_k << " inertia " << fmt(model.inertia) << '\n';
  });

  // ---- moran / lisa ----
  std::string sp_in, sp_zones, sp_source = "photo", sp_crs = "projected";
  double sp_threshold = 500.0, sp_alpha = 0.05;
  int sp_perms = 999;
  std::uint64_t sp_seed = 1;
  bool sp_rowstd = false;
  auto add_spatial_opts = [&](CLI::App* cmd) {
    cmd->add_option("--in", sp_in, "store directory")->required();
    cmd->add_option("--zones", sp_zones, "GeoJSON zones file")->required();
    cmd->add_option("--source", sp_source, "photo, checkin or tweet");
    cmd->add_option("--crs", sp_crs);
    cmd->add_option("--threshold-m", sp_threshold);
    cmd->add_option("--permutations", sp_perms);
    cmd->add_option("--alpha", sp_alpha);
    cmd->add_option("--seed", sp_seed);
    cmd->add_flag("--row-standardize", sp_rowstd);
  };
  auto* moran_cmd = app.add_subcommand("moran", "global Moran's I for one source");
  add_spatial_opts(moran_cmd);
  moran_cmd->callback([&] {
    auto src = source_from_name(sp_source);
    if (!src) throw ConfigError("unknown source: " + sp_source);
    auto t = load_metrics(sp_in);
    auto zones = load_zones(sp_zones, parse_crs(sp_crs));
    auto W = build_weights(zones, parse_crs(sp_crs), sp_threshold, sp_rowstd);
    auto m = global_moran(t.rescaled[static_cast<int>(*src)], W, sp_perms, sp_seed);
    auto out = open_out(sp_in + "/moran_" + sp_source + ".csv");
    out << "source,I,expected,z_score,p_value,perm_p,permutations,seed\n";
    out << sp_source << ',' << fmt(m.I) << ',' << fmt(m.expected) << ',' << fmt(m.z_score)
        << ',' << fmt(m.p_value) << ',' << fmt(m.perm_p) << ',' << m.permutations << ','
        << m.seed << '\n';
    std::cout << "I=" << fmt(m.I) << " z=" << fmt(m.z_score) << " perm_p=" << fmt(m.perm_p)
              << '\n';
  });
  auto* lisa_cmd = app.add_subcommand("lisa", "local Moran (LISA) for one source");
  add_spatial_opts(lisa_cmd);
  lisa_cmd->callback([&] {
    auto src = source_from_name(sp_source);
    if (!src) throw ConfigError("unknown source: " + sp_source);
    auto t = load_metrics(sp_in);
    auto zones = load_zones(sp_zones, parse_crs(sp_crs));
    auto W = build_weights(zones, parse_crs(sp_crs), sp_threshold, sp_rowstd);
    auto lisa = local_moran(t.rescaled[static_cast<int>(*src)], W, sp_perms, sp_alpha, sp_seed);
    write_lisa_csv(sp_in + "/lisa_" + sp_source + ".csv", lisa, zones);
    std::size_t hh = 0;
    for (const auto& z : lisa.zones)
      if (z.quadrant == Quadrant::HH && z.significant) ++hh;
    std::cout << "significant HH zones: " << hh << '\n';
  });

  // ---- typology ----
  std::string ty_in, ty_zones, ty_center, ty_crs = "projected";
  double ty_alpha = 0.05, ty_ring = 1000.0;
  auto* ty = app.add_subcommand("typology", "fuse the three LISA HH memberships");
  ty->add_option("--in", ty_in, "store directory")->required();
  ty->add_option("--zones", ty_zones, "GeoJSON zones file")->required();
  ty->add_option("--crs", ty_crs);
  ty->add_option("--alpha", ty_alpha);
  ty->add_option("--center", ty_center, "X,Y of the gradient center")->required();
  ty->add_option("--ring-m", ty_ring);
  ty->callback([&] {
    auto zones = load_zones(ty_zones, parse_crs(ty_crs));
    auto photo = load_lisa_csv(ty_in + "/lisa_photo.csv", zones, ty_alpha);
    auto checkin = load_lisa_csv(ty_in + "/lisa_checkin.csv", zones, ty_alpha);
    auto tweet = load_lisa_csv(ty_in + "/lisa_tweet.csv", zones, ty_alpha);
    auto typology = combine_hh(photo, checkin, tweet, zones);
    Point center;
    if (std::sscanf(ty_center.c_str(), "%lf,%lf", &center.x, &center.y) != 2)
      throw ConfigError("center must be 'X,Y'");
    auto gradient = specialization_gradient(typology, zones, center, ty_ring, parse_crs(ty_crs));
    auto out = open_out(ty_in + "/typology.csv");
    out << "zone_id,photo_hh,checkin_hh,tweet_hh,label\n";
    for (const auto& tc : typology) {
      out << tc.zone_id;
      for (bool b : tc.membership) out << ',' << (b ? 1 : 0);
      out << ',' << tc.label << '\n';
    }
    auto gout = open_out(ty_in + "/gradient.csv");
    gout << "ring,zone_count,mean_membership,class_shares\n";
    for (const auto& row : gradient) {
      gout << row.ring << ',' << row.zone_count << ',' << fmt(row.mean_membership) << ',';
      bool first = true;
      for (const auto& [label, share] : row.class_share) {
        gout << (first ? "" : ";") << label << ':' << fmt(share);
        first = false;
      }
      gout << '\n';
    }
    std::cout << "wrote " << ty_in << "/typology.csv\n";
  });

  // ---- synth ----
  std::string sy_scenario, sy_out;
  auto* sy = app.add_subcommand("synth", "generate a deterministic synthetic city");
  sy->add_option("--scenario", sy_scenario, "scenario config file")->required();
  sy->add_option("--out", sy_out, "output directory")->required();
  sy->callback([&] {
    auto scenario = CityScenario::from_kv(KvConfig::parse_file(sy_scenario));
    auto out = generate(scenario, sy_out);
    std::cout << "zones " << out.zones_file << "\nphoto events " << out.photo_events
              << "\ntweet events " << out.tweet_events << '\n';
  });

  // ---- run ----
  std::string run_config, run_out;
  int run_jobs = 0;
  std::vector<std::string> run_sets;
  auto* run = app.add_subcommand("run", "execute the full pipeline from a config file");
  run->add_option("--config", run_config, "pipeline config file")->required();
  run->add_option("--out", run_out, "override output directory");
  run->add_option("--jobs", run_jobs, "parallel task cap");
  run->add_option("--set", run_sets, "override config keys (key=value, repeatable)");
  run->callback([&] {
    auto kv = KvConfig::parse_file(run_config);
    for (const auto& s : run_sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value: " + s);
      kv.set(s.substr(0, eq), s.substr(eq + 1));
    }
    if (!run_out.empty()) kv.set("out", run_out);
    if (run_jobs > 0) kv.set("jobs", std::to_string(run_jobs));
    auto config = PipelineConfig::from_kv(kv);
    auto result = run_pipeline(config, config.out_dir + "/store");
    std::ifstream cf(run_config);
    std::ostringstream ss;
    ss << cf.rdbuf();
    write_outputs(result, config, ss.str());
    std::cout << "run complete: " << config.out_dir << "/manifest.json\n";
  });

  // ---- report ----
  std::string rep_in;
  auto* rep = app.add_subcommand("report", "plain-text summary of a finished run");
  rep->add_option("--in", rep_in, "run output directory")->required();
  rep->callback([&] { std::cout << render_report(rep_in); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 0;
}
