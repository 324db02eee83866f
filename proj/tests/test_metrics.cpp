#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "footprint/metrics.hpp"
#include "footprint/rng.hpp"

using namespace footprint;

namespace {

EventRecord ev(const std::string& user, Source src, int hour = 12) {
  EventRecord e;
  e.user_id = user;
  e.source = src;
  e.ts = {2013, 5, 1, hour, 0, 0};
  return e;
}

PointAssignment in_zone(std::size_t event_index, std::size_t zone) {
  return {event_index, zone};
}

Zone zone_with_area(const std::string& id, double area_ha) {
  Zone z;
  z.id = id;
  z.area_ha = area_ha;
  return z;
}

}  // namespace

TEST_CASE("repeat visits by one user count once per zone") {
  std::vector<EventRecord> events{ev("u", Source::photo), ev("u", Source::photo),
                                  ev("u", Source::photo)};
  auto counts = unique_tourist_counts(events, {in_zone(0, 0), in_zone(1, 0), in_zone(2, 0)}, 1);
  CHECK(counts[0][static_cast<int>(Source::photo)] == 1);
}

TEST_CASE("a user active in two zones counts in both") {
  std::vector<EventRecord> events{ev("u", Source::photo), ev("u", Source::photo)};
  auto counts = unique_tourist_counts(events, {in_zone(0, 0), in_zone(1, 1)}, 2);
  CHECK(counts[0][0] == 1);
  CHECK(counts[1][0] == 1);
}

TEST_CASE("sources are counted independently; unassigned events are skipped") {
  std::vector<EventRecord> events{ev("u", Source::photo), ev("u", Source::tweet),
                                  ev("v", Source::tweet)};
  std::vector<PointAssignment> asg{in_zone(0, 0), in_zone(1, 0), {2, std::nullopt}};
  auto counts = unique_tourist_counts(events, asg, 2);
  CHECK(counts[0][static_cast<int>(Source::photo)] == 1);
  CHECK(counts[0][static_cast<int>(Source::tweet)] == 1);
  CHECK(counts[1][static_cast<int>(Source::tweet)] == 0);
}

TEST_CASE("duplicating every event leaves the counts unchanged") {
  Rng rng(3);
  std::vector<EventRecord> events;
  std::vector<PointAssignment> asg;
  for (int i = 0; i < 2000; ++i) {
    events.push_back(ev("u" + std::to_string(rng.below(80)),
                        static_cast<Source>(rng.below(kNumSources))));
    asg.push_back(in_zone(events.size() - 1, rng.below(10)));
  }
  auto base = unique_tourist_counts(events, asg, 10);
  auto doubled_events = events;
  auto doubled_asg = asg;
  for (std::size_t i = 0; i < events.size(); ++i) {
    doubled_events.push_back(events[i]);
    doubled_asg.push_back(in_zone(events.size() + i, *asg[i].zone_index));
  }
  CHECK(unique_tourist_counts(doubled_events, doubled_asg, 10) == base);
}

TEST_CASE("density divides count by hectares") {
  std::vector<Zone> zones{zone_with_area("a", 5.0), zone_with_area("b", 2.0)};
  std::vector<long> counts{10, 0};
  auto d = density(counts, zones);
  CHECK(d[0] == doctest::Approx(2.0));
  CHECK(d[1] == doctest::Approx(0.0));
}

TEST_CASE("density refuses a non-positive area") {
  std::vector<Zone> zones{zone_with_area("a", 0.0)};
  std::vector<long> counts{1};
  CHECK_THROWS_AS(density(counts, zones), DataError);
}

TEST_CASE("rescale maps min to 0 and max to 1000 linearly") {
  auto r = rescale(std::vector<double>{0.0, 2.0, 4.0});
  CHECK(r == std::vector<double>{0.0, 500.0, 1000.0});
}

TEST_CASE("rescale of a constant vector is degenerate") {
  CHECK_THROWS_AS(rescale(std::vector<double>{3.0, 3.0, 3.0}), NumericError);
}

TEST_CASE("rescale preserves order and hits both endpoints") {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> v;
    for (int i = 0; i < 200; ++i) v.push_back(rng.normal() * 37.0 + 5.0);
    auto r = rescale(v);
    CHECK(*std::min_element(r.begin(), r.end()) == doctest::Approx(0.0));
    CHECK(*std::max_element(r.begin(), r.end()) == doctest::Approx(1000.0));
    for (std::size_t i = 1; i < v.size(); ++i)
      CHECK(((v[i] < v[i - 1]) == (r[i] < r[i - 1])));
  }
}

TEST_CASE("rescaled sums relate to raw sums through the raw range") {
  // with min = 0: sum(rescaled) * max(raw) == 1000 * sum(raw)
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> v{0.0};
    for (int i = 0; i < 99; ++i) v.push_back(rng.uniform() * 800.0);
    auto r = rescale(v);
    double sum_raw = std::accumulate(v.begin(), v.end(), 0.0);
    double sum_res = std::accumulate(r.begin(), r.end(), 0.0);
    double max_raw = *std::max_element(v.begin(), v.end());
    CHECK(sum_res * max_raw == doctest::Approx(1000.0 * sum_raw).epsilon(1e-9));
  }
}

TEST_CASE("descriptive stats on a small vector") {
  auto s = descriptive_stats(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(s.count == 3);
  CHECK(s.min == 1.0);
  CHECK(s.max == 3.0);
  CHECK(s.sum == 6.0);
  CHECK(s.mean == doctest::Approx(2.0));
  CHECK(s.sd == doctest::Approx(1.0));
  REQUIRE(s.cv.has_value());
  CHECK(*s.cv == doctest::Approx(50.0));
}

TEST_CASE("cv is absent at zero mean; singleton sd is zero; empty input throws") {
  auto z = descriptive_stats(std::vector<double>{-1.0, 1.0});
  CHECK_FALSE(z.cv.has_value());
  auto one = descriptive_stats(std::vector<double>{4.0});
  CHECK(one.sd == 0.0);
  CHECK_THROWS_AS(descriptive_stats(std::vector<double>{}), NumericError);
}

TEST_CASE("cv is invariant under positive scaling") {
  Rng rng(29);
  std::vector<double> v;
  for (int i = 0; i < 100; ++i) v.push_back(1.0 + rng.uniform() * 10.0);
  auto scaled = v;
  for (auto& x : scaled) x *= 137.0;
  auto a = descriptive_stats(v);
  auto b = descriptive_stats(scaled);
  REQUIRE((a.cv && b.cv));
  CHECK(*a.cv == doctest::Approx(*b.cv).epsilon(1e-12));
}

TEST_CASE("temporal profile counts per hour and shares sum to one") {
  std::vector<EventRecord> events{ev("a", Source::tweet, 9), ev("b", Source::tweet, 9),
                                  ev("c", Source::tweet, 18), ev("d", Source::photo, 9)};
  auto p = temporal_profile(events, Source::tweet);
  CHECK(p.hour_counts[9] == 2);
  CHECK(p.hour_counts[18] == 1);
  CHECK(p.hour_shares[9] == doctest::Approx(2.0 / 3.0));
  double total = std::accumulate(p.hour_shares.begin(), p.hour_shares.end(), 0.0);
  CHECK(total == doctest::Approx(1.0));
  long n = std::accumulate(p.hour_counts.begin(), p.hour_counts.end(), 0L);
  CHECK(n == 3);
}

TEST_CASE("temporal profile with no matching events is all zero") {
  auto p = temporal_profile({ev("a", Source::photo, 9)}, Source::tweet);
  for (int h = 0; h < 24; ++h) {
    CHECK(p.hour_counts[h] == 0);
    CHECK(p.hour_shares[h] == 0.0);
  }
}
