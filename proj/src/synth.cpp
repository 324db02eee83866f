#include "footprint/synth.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "footprint/event.hpp"
#include "footprint/rng.hpp"

namespace footprint {

namespace {

Timestamp make_timestamp(int year, int day_offset, int hour) {
  using namespace std::chrono;
  sys_days d = sys_days{std::chrono::year{year} / January / 1} + days{day_offset};
  year_month_day ymd{d};
  return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
          static_cast<int>(static_cast<unsigned>(ymd.day())), hour, 0, 0};
}

int draw_hour(Source s, Rng& rng) {
  switch (s) {
    case Source::photo:
      return 8 + static_cast<int>(rng.below(12));
    case Source::checkin:
      return 9 + static_cast<int>(rng.below(14));
    case Source::tweet:
      // evening-heavy, echoing the accommodation-hours pattern
      return rng.below(10) < 6 ? 18 + static_cast<int>(rng.below(4))
                               : static_cast<int>(rng.below(24));
  }
  return 12;
}

struct Emitter {
  std::ofstream photo;
  std::ofstream tweet;
  std::size_t photo_events = 0;
  std::size_t tweet_events = 0;

  void write(const EventRecord& e) {
    // check-ins travel inside the tweet stream; their source is recovered
    // downstream by the split predicate
    if (e.source == Source::photo) {
      photo << event_photo_line(e) << '\n';
      ++photo_events;
    } else {
      tweet << event_tweet_line(e) << '\n';
      ++tweet_events;
    }
  }

  static std::string event_photo_line(const EventRecord& e) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), R"({"user":"%s","ts":"%s","lat":%.3f,"lon":%.3f})",
                  e.user_id.c_str(), e.ts.to_iso().c_str(), e.lat, e.lon);
    return buf;
  }

  static std::string event_tweet_line(const EventRecord& e) {
    char buf[384];
    std::snprintf(buf, sizeof(buf),
                  R"({"user":"%s","ts":"%s","lat":%.3f,"lon":%.3f,"text":"%s"})",
                  e.user_id.c_str(), e.ts.to_iso().c_str(), e.lat, e.lon, e.text.c_str());
    return buf;
  }
};

}  // namespace

std::string synth_zone_id(int x, int y) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "z%03d_%03d", y, x);
  return buf;
}

CityScenario CityScenario::from_kv(const KvConfig& kv) {
  CityScenario s;
  s.nx = static_cast<int>(kv.get_int("grid_nx", s.nx));
  s.ny = static_cast<int>(kv.get_int("grid_ny", s.ny));
  s.cell_m = kv.get_double("cell_m", s.cell_m);
  s.seed = kv.get_seed("seed", s.seed);
  s.year = static_cast<int>(kv.get_int("year", s.year));
  s.base_tourists[0] = static_cast<int>(kv.get_int("base.photo", s.base_tourists[0]));
  s.base_tourists[1] = static_cast<int>(kv.get_int("base.checkin", s.base_tourists[1]));
  s.base_tourists[2] = static_cast<int>(kv.get_int("base.tweet", s.base_tourists[2]));
  s.max_events_per_tourist =
      static_cast<int>(kv.get_int("max_events_per_tourist", s.max_events_per_tourist));
  s.residents = static_cast<int>(kv.get_int("residents", s.residents));
  s.events_per_resident =
      static_cast<int>(kv.get_int("events_per_resident", s.events_per_resident));
  for (const auto& spec : kv.all("hotspot")) {
    char name[32];
    HotspotSpec h;
    if (std::sscanf(spec.c_str(), "%31[^,],%d,%d,%d,%d,%d", name, &h.x0, &h.y0, &h.x1, &h.y1,
                    &h.tourists_per_zone) != 6)
      throw ConfigError("hotspot must be 'SOURCE,x0,y0,x1,y1,tourists': " + spec);
    auto src = source_from_name(name);
    if (!src) throw ConfigError("hotspot: unknown source '" + std::string(name) + "'");
    h.source = *src;
    s.hotspots.push_back(h);
  }
  return s;
}

SynthOutput generate(const CityScenario& sc, const std::string& out_dir) {
  if (sc.nx < 2 || sc.ny < 2) throw ConfigError("synth: grid must be at least 2x2");
  if (sc.cell_m <= 0.0) throw ConfigError("synth: cell_m must be > 0");
  for (int b : sc.base_tourists)
    if (b < 0) throw ConfigError("synth: base tourist intensity must be >= 0");
  for (const auto& h : sc.hotspots) {
    if (h.tourists_per_zone < 0) throw ConfigError("synth: hotspot intensity must be >= 0");
    if (h.x0 > h.x1 || h.y0 > h.y1 || h.x0 < 0 || h.y0 < 0 || h.x1 >= sc.nx || h.y1 >= sc.ny)
      throw ConfigError("synth: hotspot rectangle outside grid");
  }
  if (sc.max_events_per_tourist < 1)
    throw ConfigError("synth: max_events_per_tourist must be >= 1");

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  SynthOutput out;
  out.zones_file = out_dir + "/zones.geojson";
  out.photo_file = out_dir + "/events_photo.ndjson";
  out.tweet_file = out_dir + "/events_tweet.ndjson";
  out.truth_labels_file = out_dir + "/truth_labels.csv";
  out.truth_hotspots_file = out_dir + "/truth_hotspots.csv";
  out.pipeline_config_file = out_dir + "/pipeline.conf";

  // zones
  {
    std::ofstream z(out.zones_file);
    if (!z) throw DataError("cannot write " + out.zones_file);
    z << "{\"type\":\"FeatureCollection\",\"features\":[\n";
    bool first = true;
    for (int y = 0; y < sc.ny; ++y) {
      for (int x = 0; x < sc.nx; ++x) {
        double x0 = x * sc.cell_m, y0 = y * sc.cell_m;
        double x1 = x0 + sc.cell_m, y1 = y0 + sc.cell_m;
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "%s{\"type\":\"Feature\",\"properties\":{\"id\":\"%s\"},"
                      "\"geometry\":{\"type\":\"Polygon\",\"coordinates\":"
                      "[[[%.1f,%.1f],[%.1f,%.1f],[%.1f,%.1f],[%.1f,%.1f],[%.1f,%.1f]]]}}",
                      first ? "" : ",\n", synth_zone_id(x, y).c_str(), x0, y0, x1, y0, x1, y1,
                      x0, y1, x0, y0);
        z << buf;
        first = false;
      }
    }
    z << "\n]}\n";
  }

  Emitter emit;
  emit.photo.open(out.photo_file);
  emit.tweet.open(out.tweet_file);
  std::ofstream labels(out.truth_labels_file);
  if (!emit.photo || !emit.tweet || !labels) throw DataError("cannot write synth outputs");
  labels << "user_id,source,label\n";

  std::array<long, kNumSources> user_counter{};
  Rng rng = Rng::stream(sc.seed, 0);

  auto tourist_in_zone = [&](Source src, int x, int y) {
    char name[48];
    std::snprintf(name, sizeof(name), "t_%s_%06ld", source_name(src),
                  user_counter[static_cast<int>(src)]++);
    labels << name << ',' << source_name(src) << ",tourist\n";
    int n_events = 1 + static_cast<int>(rng.below(sc.max_events_per_tourist));
    int start_day = static_cast<int>(rng.below(358));
    for (int e = 0; e < n_events; ++e) {
      EventRecord ev;
      ev.source = src;
      ev.user_id = name;
      ev.ts = make_timestamp(sc.year, start_day + static_cast<int>(rng.below(7)),
                             draw_hour(src, rng));
      ev.lon = (x + rng.uniform()) * sc.cell_m;
      ev.lat = (y + rng.uniform()) * sc.cell_m;
      if (src == Source::checkin) {
        char t[64];
        std::snprintf(t, sizeof(t), "at venue https://4sq.com/v%08lx",
                      static_cast<unsigned long>(rng.next() & 0xffffffff));
        ev.text = t;
      } else if (src == Source::tweet) {
        ev.text = "out and about";
      }
      emit.write(ev);
    }
  };

  // background traffic, row-major for reproducibility; per-zone counts vary
  // uniformly in [0, 2*base] so densities are not degenerate
  for (int y = 0; y < sc.ny; ++y) {
    for (int x = 0; x < sc.nx; ++x) {
      for (int s = 0; s < kNumSources; ++s) {
        int base = sc.base_tourists[s];
        int n = base > 0 ? static_cast<int>(rng.below(2 * base + 1)) : 0;
        for (int u = 0; u < n; ++u) tourist_in_zone(static_cast<Source>(s), x, y);
      }
    }
  }

  // planted hotspots
  {
    std::ofstream hs(out.truth_hotspots_file);
    if (!hs) throw DataError("cannot write " + out.truth_hotspots_file);
    hs << "source,zone_id\n";
    for (const auto& h : sc.hotspots) {
      for (int y = h.y0; y <= h.y1; ++y) {
        for (int x = h.x0; x <= h.x1; ++x) {
          hs << source_name(h.source) << ',' << synth_zone_id(x, y) << '\n';
          for (int u = 0; u < h.tourists_per_zone; ++u) tourist_in_zone(h.source, x, y);
        }
      }
    }
  }

  // residents: multi-month spans, activity scattered over the whole city
  for (int r = 0; r < sc.residents; ++r) {
    auto src = static_cast<Source>(r % kNumSources);
    char name[48];
    std::snprintf(name, sizeof(name), "r_%s_%06d", source_name(src), r);
    labels << name << ',' << source_name(src) << ",resident\n";
    int first_day = static_cast<int>(rng.below(60));
    for (int e = 0; e < sc.events_per_resident; ++e) {
      EventRecord ev;
      ev.source = src;
      ev.user_id = name;
      int day = e == 0 ? first_day : first_day + 8 + static_cast<int>(rng.below(280));
      ev.ts = make_timestamp(sc.year, day, draw_hour(src, rng));
      ev.lon = (static_cast<double>(rng.below(sc.nx)) + rng.uniform()) * sc.cell_m;
      ev.lat = (static_cast<double>(rng.below(sc.ny)) + rng.uniform()) * sc.cell_m;
      if (src == Source::checkin) {
        ev.text = "at venue https://4sq.com/home";
      } else if (src == Source::tweet) {
        ev.text = "daily life";
      }
      emit.write(ev);
    }
  }

  out.photo_events = emit.photo_events;
  out.tweet_events = emit.tweet_events;

  {
    std::ofstream conf(out.pipeline_config_file);
    if (!conf) throw DataError("cannot write " + out.pipeline_config_file);
    conf << "zones=" << out.zones_file << "\n"
         << "source.photo=" << out.photo_file << "\n"
         << "source.tweet=" << out.tweet_file << "\n"
         << "crs=projected\n"
         << "seed=" << sc.seed << "\n"
         << "center=" << sc.nx * sc.cell_m / 2.0 << ',' << sc.ny * sc.cell_m / 2.0 << "\n"
         << "out=" << out_dir << "/run\n";
  }
  return out;
}

}  // namespace footprint
