// Acceptance gate: one self-contained check per release criterion, each
// printed as a single pass/fail line. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "footprint/classify.hpp"
#include "footprint/kmeans.hpp"
#include "footprint/metrics.hpp"
#include "footprint/moran.hpp"
#include "footprint/pipeline.hpp"
#include "footprint/regression.hpp"
#include "footprint/rng.hpp"
#include "footprint/spatial_weights.hpp"
#include "footprint/synth.hpp"
#include "footprint/zones.hpp"

using namespace footprint;
namespace fs = std::filesystem;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int num, const char* name, bool pass, double secs, const std::string& detail) {
  std::printf("criterion %2d %s %-28s (%6.1fs) %s\n", num, pass ? "PASS" : "FAIL", name, secs,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// dense O(n^2) reference for the sparse spatial statistics
struct DenseReference {
  std::size_t n;
  std::vector<std::vector<double>> w;
  double s0 = 0.0;

  DenseReference(const std::vector<Point>& pts, double threshold, bool row_std) : n(pts.size()) {
    w.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
        double d = std::sqrt(dx * dx + dy * dy);
        if (d > threshold) continue;
        if (d == 0.0) d = 1.0;
        w[i][j] = 1.0 / d;
      }
    if (row_std) {
      for (auto& row : w) {
        double rs = std::accumulate(row.begin(), row.end(), 0.0);
        if (rs > 0.0)
          for (double& x : row) x /= rs;
      }
    }
    for (const auto& row : w) s0 += std::accumulate(row.begin(), row.end(), 0.0);
  }

  double global_i(const std::vector<double>& v) const {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      den += (v[i] - mean) * (v[i] - mean);
      for (std::size_t j = 0; j < n; ++j) num += w[i][j] * (v[i] - mean) * (v[j] - mean);
    }
    return static_cast<double>(n) / s0 * num / den;
  }

  std::vector<double> local_i(const std::vector<double>& v) const {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    double m2 = 0.0;
    for (double x : v) m2 += (x - mean) * (x - mean);
    m2 /= static_cast<double>(n);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double lag = 0.0;
      for (std::size_t j = 0; j < n; ++j) lag += w[i][j] * (v[j] - mean);
      out[i] = (v[i] - mean) / m2 * lag;
    }
    return out;
  }
};

double ari(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, long> joint;
  std::map<int, long> ca, cb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++joint[{a[i], b[i]}];
    ++ca[a[i]];
    ++cb[b[i]];
  }
  auto choose2 = [](long m) { return m * (m - 1) / 2.0; };
  double idx = 0, sum_a = 0, sum_b = 0;
  for (const auto& [k, v] : joint) idx += choose2(v);
  for (const auto& [k, v] : ca) sum_a += choose2(v);
  for (const auto& [k, v] : cb) sum_b += choose2(v);
  double total = choose2(static_cast<long>(a.size()));
  double expected = sum_a * sum_b / total;
  double max_idx = (sum_a + sum_b) / 2.0;
  return (idx - expected) / (max_idx - expected);
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("footprint_accept_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::vector<Point> grid_points(int nx, int ny, double step = 200.0) {
  std::vector<Point> pts;
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) pts.push_back({x * step, y * step});
  return pts;
}

// 1. sparse global and local statistics match the dense reference
void criterion_dense_equivalence() {
  Timer timer;
  Rng rng(1001);
  double worst = 0.0;
  bool pass = true;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 3 + rng.below(48);
    std::vector<Point> pts;
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back({rng.uniform() * 1500.0, rng.uniform() * 1500.0});
      v.push_back(rng.normal() * 8.0 + 2.0);
    }
    bool row_std = (t % 2) == 1;
    auto W = build_weights(pts, CrsMode::projected, 700.0, row_std);
    if (W.s0 == 0.0) continue;
    DenseReference ref(pts, 700.0, row_std);
    auto g = global_moran(v, W, 9, 1);
    worst = std::max(worst, std::abs(g.I - ref.global_i(v)));
    auto l = local_moran(v, W, 9, 0.05, 1);
    auto expect = ref.local_i(v);
    for (std::size_t i = 0; i < n; ++i)
      if (!W.isolated(i)) worst = std::max(worst, std::abs(l.zones[i].local_i - expect[i]));
  }
  double secs = timer.seconds();
  pass = worst <= 1e-10 && secs < 10.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "200 instances, max |delta| = %.2e", worst);
  report(1, "dense equivalence", pass, secs, buf);
}

// 2. permutation mean of the global statistic tracks -1/(n-1)
void criterion_null_expectation() {
  Timer timer;
  auto pts = grid_points(5, 5);
  Rng rng(1002);
  std::vector<double> v;
  for (std::size_t i = 0; i < pts.size(); ++i)
    v.push_back(((i + i / 5) % 2 == 0 ? 1.0 : -1.0) + rng.normal() * 0.3);
  auto W = build_weights(pts, CrsMode::projected, 500.0);
  auto r = global_moran(v, W, 10000, 2024, 4);
  double se = r.perm_sd / std::sqrt(10000.0);
  double gap = std::abs(r.perm_mean - (-1.0 / 24.0));
  double secs = timer.seconds();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "perm mean %.5f vs -1/24, gap = %.2f se", r.perm_mean,
                gap / se);
  report(2, "null expectation", gap <= 3.0 * se && secs < 30.0, secs, buf);
}

// 3. local statistics sum to s0 times the global one
void criterion_sum_identity() {
  Timer timer;
  Rng rng(1003);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 8 + rng.below(40);
    std::vector<Point> pts;
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back({rng.uniform() * 1200.0, rng.uniform() * 1200.0});
      v.push_back(rng.normal() * 5.0);
    }
    for (bool row_std : {false, true}) {
      auto W = build_weights(pts, CrsMode::projected, 700.0, row_std);
      if (W.s0 == 0.0) continue;
      auto g = global_moran(v, W, 9, 1);
      auto l = local_moran(v, W, 9, 0.05, 1);
      double sum = 0.0;
      for (const auto& z : l.zones) sum += z.local_i;
      worst = std::max(worst, std::abs(sum - W.s0 * g.I));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "50 instances incl. row-standardized, max gap = %.2e", worst);
  report(3, "local sum identity", worst <= 1e-9, timer.seconds(), buf);
}

// 4. a planted high block is recovered as significant HH, the far field stays quiet
void criterion_hotspot_recovery() {
  Timer timer;
  TempDir dir("hotspot");
  CityScenario sc;
  sc.nx = 15;
  sc.ny = 15;
  sc.seed = 404;
  sc.residents = 40;
  // quiet photo background: the block is the only photo signal, the other
  // sources keep the city non-degenerate
  sc.base_tourists = {0, 2, 3};
  sc.hotspots.push_back({Source::photo, 5, 5, 9, 9, 30});
  auto city = generate(sc, dir.str());

  auto zones = load_zones(city.zones_file, CrsMode::projected);
  auto [photos, rep] = parse_events(city.photo_file, Source::photo, CrsMode::projected);
  auto labels = label_users(photos);
  auto tourists = filter_tourist_events(photos, labels);
  auto asg = assign_points(tourists, zones);
  auto counts = unique_tourist_counts(tourists, asg, zones.size());
  std::vector<long> photo_counts;
  for (const auto& row : counts) photo_counts.push_back(row[static_cast<int>(Source::photo)]);
  auto dens = density(photo_counts, zones);

  auto W = build_weights(zones, CrsMode::projected, 500.0);
  auto lisa = local_moran(dens, W, 999, 0.05, 404, 4);

  auto cell = [&](const std::string& id) {
    // ids sort row-major, so the index in the sorted zone vector is direct
    for (std::size_t i = 0; i < zones.size(); ++i)
      if (zones[i].id == id) return i;
    return zones.size();
  };
  bool interior_ok = true;
  for (int y = 6; y <= 8; ++y)
    for (int x = 6; x <= 8; ++x) {
      const auto& z = lisa.zones[cell(synth_zone_id(x, y))];
      if (!(z.quadrant == Quadrant::HH && z.significant)) interior_ok = false;
    }

  // far field: at least 3 cells away from the block, beyond the 500 m band
  std::size_t far = 0, quiet = 0;
  for (int y = 0; y < 15; ++y)
    for (int x = 0; x < 15; ++x) {
      int dx = std::max({5 - x, 0, x - 9});
      int dy = std::max({5 - y, 0, y - 9});
      if (std::max(dx, dy) < 3) continue;
      ++far;
      if (!lisa.zones[cell(synth_zone_id(x, y))].significant) ++quiet;
    }
  double quiet_share = static_cast<double>(quiet) / static_cast<double>(far);
  double secs = timer.seconds();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "block interior all HH+sig: %s, far field quiet %.1f%%",
                interior_ok ? "yes" : "no", 100.0 * quiet_share);
  report(4, "hotspot recovery", interior_ok && quiet_share >= 0.95 && secs < 60.0, secs, buf);
}

// 5. the rescaled variable carries identical spatial structure
void criterion_affine_invariance() {
  Timer timer;
  Rng rng(1005);
  bool pass = true;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 10 + rng.below(40);
    std::vector<Point> pts;
    std::vector<double> raw;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back({rng.uniform() * 1000.0, rng.uniform() * 1000.0});
      raw.push_back(rng.uniform() * 50.0);
    }
    auto scaled = rescale(raw);
    auto W = build_weights(pts, CrsMode::projected, 600.0);
    if (W.s0 == 0.0) continue;
    auto g1 = global_moran(raw, W, 99, 5);
    auto g2 = global_moran(scaled, W, 99, 5);
    worst = std::max(worst, std::abs(g1.I - g2.I));
    auto l1 = local_moran(raw, W, 99, 0.05, 5);
    auto l2 = local_moran(scaled, W, 99, 0.05, 5);
    for (std::size_t i = 0; i < n; ++i) {
      if (l1.zones[i].quadrant != l2.zones[i].quadrant) pass = false;
      worst = std::max(worst, std::abs(l1.zones[i].local_i - l2.zones[i].local_i));
    }
  }
  pass = pass && worst <= 1e-9;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "50 instances, max statistic gap = %.2e", worst);
  report(5, "affine invariance", pass, timer.seconds(), buf);
}

// 6. the published density summary is internally consistent with the rescale rule
void criterion_rescale_consistency() {
  Timer timer;
  double implied_max = 1000.0 * 312.95 / 81625.85;
  bool pass = std::abs(implied_max - 3.83) <= 0.01;

  Rng rng(1006);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> v{0.0};  // pin the minimum at zero
    for (int i = 0; i < 150; ++i) v.push_back(rng.uniform() * 4.0);
    auto r = rescale(v);
    double sum_raw = std::accumulate(v.begin(), v.end(), 0.0);
    double sum_res = std::accumulate(r.begin(), r.end(), 0.0);
    double max_raw = *std::max_element(v.begin(), v.end());
    worst = std::max(worst, std::abs(sum_res * max_raw - 1000.0 * sum_raw) /
                                (1000.0 * sum_raw));
  }
  pass = pass && worst <= 1e-9;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "implied max %.4f vs 3.83, sum relation gap = %.2e",
                implied_max, worst);
  report(6, "rescale consistency", pass, timer.seconds(), buf);
}

// 7. regression agrees with the closed-form solution
void criterion_ols() {
  Timer timer;
  bool pass = true;

  std::vector<double> xe{1, 2, 3, 4, 5}, ye{3, 5, 7, 9, 11};
  auto exact = ols_bivariate(xe, ye);
  if (std::abs(exact.adj_r2 - 1.0) > 1e-12) pass = false;
  for (double e : exact.residuals)
    if (std::abs(e) > 1e-12) pass = false;

  Rng rng(1007);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 3 + rng.below(300);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(rng.normal() * 12.0 + 40.0);
      y.push_back(0.7 * x.back() + rng.normal() * 6.0);
    }
    auto got = ols_bivariate(x, y);
    auto swapped = ols_bivariate(y, x);
    if (std::abs(got.adj_r2 - swapped.adj_r2) > 1e-12) pass = false;

    // independent long double normal equations
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sx += x[i];
      sy += y[i];
      sxx += static_cast<long double>(x[i]) * x[i];
      sxy += static_cast<long double>(x[i]) * y[i];
    }
    long double nn = static_cast<long double>(n);
    long double b = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    long double a = (sy - b * sx) / nn;
    worst = std::max(worst, std::abs(got.slope - static_cast<double>(b)));
    worst = std::max(worst, std::abs(got.intercept - static_cast<double>(a)));
  }
  pass = pass && worst <= 1e-9;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "100 instances, max coefficient gap = %.2e", worst);
  report(7, "regression oracle", pass, timer.seconds(), buf);
}

// 8. clustering recovers planted blobs and is reproducible
void criterion_kmeans() {
  Timer timer;
  bool pass = true;
  double worst_ari = 1.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed * 4096);
    std::vector<std::vector<double>> pts;
    std::vector<int> truth;
    for (int b = 0; b < 6; ++b) {
      double cx = (b % 3) * 120.0, cy = (b / 3) * 120.0, cz = b * 19.0;
      for (int i = 0; i < 40; ++i) {
        pts.push_back({cx + rng.normal() * 2.5, cy + rng.normal() * 2.5,
                       cz + rng.normal() * 2.5});
        truth.push_back(b);
      }
    }
    auto m = kmeans(pts, 6, seed, 20);
    worst_ari = std::min(worst_ari, ari(truth, m.assignments));
    for (std::size_t i = 1; i < m.inertia_trace.size(); ++i)
      if (m.inertia_trace[i] > m.inertia_trace[i - 1] * (1.0 + 1e-12)) pass = false;
    auto again = kmeans(pts, 6, seed, 20);
    if (again.assignments != m.assignments || again.inertia != m.inertia ||
        again.centers != m.centers)
      pass = false;
  }
  pass = pass && worst_ari >= 0.99;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "20 seeds, worst ARI = %.4f", worst_ari);
  report(8, "kmeans recovery", pass, timer.seconds(), buf);
}

// 9. the activity-span rule on hand-built user histories
void criterion_classification() {
  Timer timer;
  struct Golden {
    const char* user;
    std::vector<std::array<int, 3>> dates;  // year, month, day
    bool tourist;
  };
  std::vector<Golden> suite{
      {"single_event", {{2013, 6, 1}}, true},
      {"same_day_twice", {{2013, 6, 1}, {2013, 6, 1}}, true},
      {"six_day_trip", {{2013, 6, 1}, {2013, 6, 7}}, true},
      {"exactly_seven", {{2013, 6, 1}, {2013, 6, 8}}, true},
      {"eight_days", {{2013, 6, 1}, {2013, 6, 9}}, false},
      {"two_short_years", {{2012, 5, 1}, {2012, 5, 7}, {2013, 9, 1}, {2013, 9, 7}}, true},
      {"short_then_long", {{2012, 5, 1}, {2012, 5, 4}, {2013, 9, 1}, {2013, 9, 11}}, false},
      {"ten_months", {{2013, 1, 15}, {2013, 11, 15}}, false},
      {"hours_apart", {{2013, 6, 1}, {2013, 6, 1}}, true},
      {"new_year_straddle", {{2012, 12, 30}, {2013, 1, 2}}, true},
      {"seven_then_eight", {{2012, 3, 1}, {2012, 3, 8}, {2013, 3, 1}, {2013, 3, 9}}, false},
      {"dense_five_days", {{2013, 7, 1}, {2013, 7, 2}, {2013, 7, 3}, {2013, 7, 5}}, true},
  };
  std::vector<EventRecord> events;
  for (const auto& g : suite)
    for (const auto& d : g.dates) {
      EventRecord e;
      e.user_id = g.user;
      e.source = Source::photo;
      e.ts = {d[0], d[1], d[2], 12, 0, 0};
      events.push_back(e);
    }
  auto labels = label_users(events, 7);
  int agree = 0;
  for (const auto& g : suite)
    for (const auto& l : labels)
      if (l.user_id == g.user && l.tourist == g.tourist) ++agree;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%d / 12 histories agree", agree);
  report(9, "classification rule", agree == 12, timer.seconds(), buf);
}

// 10. the indexed spatial join equals the exhaustive one
void criterion_spatial_join() {
  Timer timer;
  std::vector<Zone> zones;
  {
    nlohmann::json features = nlohmann::json::array();
    for (int i = 0; i < 100; ++i) {
      double x0 = (i % 10) * 100.0, y0 = (i / 10) * 100.0;
      char id[16];
      std::snprintf(id, sizeof(id), "z%03d", i);
      features.push_back(
          {{"type", "Feature"},
           {"properties", {{"id", id}}},
           {"geometry",
            {{"type", "Polygon"},
             {"coordinates",
              {{{x0, y0}, {x0 + 100, y0}, {x0 + 100, y0 + 100}, {x0, y0 + 100}, {x0, y0}}}}}}});
    }
    zones = zones_from_geojson({{"type", "FeatureCollection"}, {"features", features}},
                               CrsMode::projected);
  }
  Rng rng(1010);
  std::vector<EventRecord> events;
  auto push = [&](double x, double y) {
    EventRecord e;
    e.user_id = "u";
    e.ts = {2013, 1, 1, 0, 0, 0};
    e.lon = x;
    e.lat = y;
    events.push_back(e);
  };
  for (int i = 0; i < 800; ++i) push(rng.uniform() * 1200 - 100, rng.uniform() * 1200 - 100);
  for (int i = 0; i < 100; ++i)
    push(static_cast<double>(rng.below(11)) * 100.0, static_cast<double>(rng.below(11)) * 100.0);
  for (int i = 0; i < 100; ++i)
    push(static_cast<double>(rng.below(11)) * 100.0, rng.uniform() * 1000);

  auto fast = assign_points(events, zones);
  auto naive = assign_points_naive(events, zones);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < fast.size(); ++i)
    if (fast[i].zone_index != naive[i].zone_index) ++mismatches;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "1000 points x 100 zones, %zu mismatches", mismatches);
  report(10, "spatial join oracle", mismatches == 0, timer.seconds(), buf);
}

// 11. a million-event city runs end to end within the time budget
void criterion_performance() {
  TempDir dir("perf");
  CityScenario sc;
  sc.nx = 50;
  sc.ny = 50;
  sc.seed = 2025;
  sc.base_tourists = {62, 52, 62};
  sc.residents = 10000;
  sc.events_per_resident = 12;
  sc.hotspots.push_back({Source::photo, 10, 10, 18, 18, 80});
  sc.hotspots.push_back({Source::checkin, 30, 30, 38, 38, 70});
  sc.hotspots.push_back({Source::tweet, 20, 20, 28, 28, 80});
  auto city = generate(sc, dir.str());
  std::size_t total_events = city.photo_events + city.tweet_events;

  KvConfig kv = KvConfig::parse_file(city.pipeline_config_file);
  kv.set("permutations", "999");
  kv.set("jobs", "4");
  auto config = PipelineConfig::from_kv(kv);

  Timer timer;  // the generator is setup, only the run itself is on the clock
  auto result = run_pipeline(config, config.out_dir + "/store");
  write_outputs(result, config, "acceptance performance run");
  double secs = timer.seconds();

  bool pass = total_events >= 1000000 && result.zones.size() == 2500 && secs < 300.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%zu events, %zu zones, 999 permutations, run took %.1fs",
                total_events, result.zones.size(), secs);
  report(11, "performance", pass, secs, buf);
}

// 12. multifunctional core, specialized periphery, outward-decaying membership
void criterion_typology() {
  Timer timer;
  TempDir dir("typology");
  CityScenario sc;
  sc.nx = 15;
  sc.ny = 15;
  sc.seed = 1212;
  sc.residents = 40;
  sc.base_tourists = {2, 1, 3};
  sc.hotspots.push_back({Source::photo, 6, 6, 8, 8, 40});
  sc.hotspots.push_back({Source::checkin, 6, 6, 8, 8, 35});
  sc.hotspots.push_back({Source::tweet, 6, 6, 8, 8, 45});
  // peripheral hotspots sit in the second 600 m ring (centroid distance
  // 800-1131 m from the city center) so ring 3 stays unlabeled
  sc.hotspots.push_back({Source::photo, 2, 6, 3, 8, 40});      // west: photo only
  sc.hotspots.push_back({Source::checkin, 6, 2, 8, 3, 35});    // south: check-ins only
  sc.hotspots.push_back({Source::tweet, 10, 10, 11, 11, 45});  // northeast: tweets only
  auto city = generate(sc, dir.str());

  KvConfig kv = KvConfig::parse_file(city.pipeline_config_file);
  kv.set("permutations", "999");
  kv.set("ring_m", "600");
  kv.set("jobs", "4");
  auto config = PipelineConfig::from_kv(kv);
  auto result = run_pipeline(config);

  auto label_of = [&](int x, int y) -> std::string {
    auto id = synth_zone_id(x, y);
    for (const auto& t : result.typology)
      if (t.zone_id == id) return t.label;
    return "?";
  };
  bool core_ok = label_of(7, 7) == "PFT";
  bool west_ok = label_of(3, 7) == "P";
  bool south_ok = label_of(7, 3) == "F";
  bool northeast_ok = label_of(10, 10) == "T";

  bool decreasing = result.gradient.size() >= 3 &&
                    result.gradient[0].mean_membership > result.gradient[1].mean_membership &&
                    result.gradient[1].mean_membership > result.gradient[2].mean_membership;

  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "core %s, west %s, south %s, northeast %s, ring means %.3f > %.3f > %.3f",
                label_of(7, 7).c_str(), label_of(3, 7).c_str(), label_of(7, 3).c_str(),
                label_of(10, 10).c_str(),
                result.gradient.size() > 0 ? result.gradient[0].mean_membership : -1.0,
                result.gradient.size() > 1 ? result.gradient[1].mean_membership : -1.0,
                result.gradient.size() > 2 ? result.gradient[2].mean_membership : -1.0);
  report(12, "end-to-end typology",
         core_ok && west_ok && south_ok && northeast_ok && decreasing, timer.seconds(), buf);
}

}  // namespace

int main() {
  criterion_dense_equivalence();
  criterion_null_expectation();
  criterion_sum_identity();
  criterion_hotspot_recovery();
  criterion_affine_invariance();
  criterion_rescale_consistency();
  criterion_ols();
  criterion_kmeans();
  criterion_classification();
  criterion_spatial_join();
  criterion_performance();
  criterion_typology();
  std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures;
}
