#include <doctest.h>

#include <map>
#include <set>

#include "footprint/classify.hpp"
#include "footprint/rng.hpp"

using namespace footprint;

namespace {

EventRecord ev(const std::string& user, int year, int month, int day,
               Source src = Source::photo) {
  EventRecord e;
  e.source = src;
  e.user_id = user;
  e.ts = {year, month, day, 12, 0, 0};
  e.lat = 40.0;
  e.lon = -3.0;
  return e;
}

const UserLabel* find(const std::vector<UserLabel>& labels, const std::string& user, Source src) {
  for (const auto& l : labels)
    if (l.user_id == user && l.source == src) return &l;
  return nullptr;
}

}  // namespace

TEST_CASE("four-day trip stays tourist") {
  auto labels = label_users({ev("u", 2013, 5, 2), ev("u", 2013, 5, 4), ev("u", 2013, 5, 6)});
  REQUIRE(labels.size() == 1);
  CHECK(labels[0].tourist);
  CHECK(labels[0].max_span_days == 4);
}

TEST_CASE("months-long activity is resident") {
  auto labels = label_users({ev("u", 2013, 1, 10), ev("u", 2013, 6, 20)});
  REQUIRE(labels.size() == 1);
  CHECK_FALSE(labels[0].tourist);
  CHECK(labels[0].max_span_days == 161);
}

TEST_CASE("any year over threshold makes a resident") {
  auto labels = label_users({ev("u", 2012, 3, 1), ev("u", 2012, 3, 4),      // span 3
                             ev("u", 2013, 8, 1), ev("u", 2013, 8, 11)});   // span 10
  REQUIRE(labels.size() == 1);
  CHECK_FALSE(labels[0].tourist);
  REQUIRE(labels[0].yearly_spans.size() == 2);
  CHECK(labels[0].yearly_spans[0].year == 2012);
  CHECK(labels[0].yearly_spans[0].span_days == 3);
  CHECK(labels[0].yearly_spans[1].span_days == 10);
  CHECK(labels[0].max_span_days == 10);
}

TEST_CASE("span exactly at the threshold is still tourist, one past is not") {
  auto at = label_users({ev("a", 2013, 5, 1), ev("a", 2013, 5, 8)});    // 7 days
  auto past = label_users({ev("b", 2013, 5, 1), ev("b", 2013, 5, 9)});  // 8 days
  CHECK(at[0].tourist);
  CHECK(at[0].max_span_days == 7);
  CHECK_FALSE(past[0].tourist);
  CHECK(past[0].max_span_days == 8);
}

TEST_CASE("a single event is a zero-span tourist") {
  auto labels = label_users({ev("u", 2013, 7, 14)});
  REQUIRE(labels.size() == 1);
  CHECK(labels[0].tourist);
  CHECK(labels[0].max_span_days == 0);
}

TEST_CASE("labels are per (user, source) and sorted") {
  std::vector<EventRecord> events{ev("zed", 2013, 1, 1, Source::photo),
                                  ev("ann", 2013, 1, 1, Source::photo),
                                  ev("ann", 2013, 1, 1, Source::tweet),
                                  ev("ann", 2013, 9, 1, Source::tweet)};
  auto labels = label_users(events);
  REQUIRE(labels.size() == 3);
  CHECK(labels[0].user_id == "ann");
  CHECK(labels[0].source == Source::photo);
  CHECK(labels[0].tourist);
  CHECK(labels[1].user_id == "zed");
  CHECK(labels[2].source == Source::tweet);
  CHECK_FALSE(labels[2].tourist);  // months apart within 2013
}

TEST_CASE("every user is labeled exactly once per source") {
  Rng rng(5);
  std::vector<EventRecord> events;
  for (int i = 0; i < 3000; ++i) {
    auto e = ev("u" + std::to_string(rng.below(200)), 2013, 1 + static_cast<int>(rng.below(12)),
                1 + static_cast<int>(rng.below(28)),
                static_cast<Source>(rng.below(kNumSources)));
    events.push_back(e);
  }
  auto labels = label_users(events);
  std::set<std::pair<int, std::string>> seen_in_events, seen_in_labels;
  for (const auto& e : events) seen_in_events.insert({static_cast<int>(e.source), e.user_id});
  for (const auto& l : labels) {
    auto [it, fresh] = seen_in_labels.insert({static_cast<int>(l.source), l.user_id});
    CHECK(fresh);  // no duplicate label
  }
  CHECK(seen_in_events == seen_in_labels);
}

TEST_CASE("raising the threshold never turns a tourist into a resident") {
  Rng rng(9);
  std::vector<EventRecord> events;
  for (int i = 0; i < 2000; ++i)
    events.push_back(ev("u" + std::to_string(rng.below(150)), 2013,
                        1 + static_cast<int>(rng.below(12)),
                        1 + static_cast<int>(rng.below(28))));
  auto tight = label_users(events, 7);
  auto loose = label_users(events, 10);
  REQUIRE(tight.size() == loose.size());
  for (std::size_t i = 0; i < tight.size(); ++i) {
    CHECK(tight[i].user_id == loose[i].user_id);
    if (tight[i].tourist) CHECK(loose[i].tourist);
    CHECK(tight[i].max_span_days == loose[i].max_span_days);
  }
}

TEST_CASE("filter keeps exactly the tourist events, order preserved") {
  std::vector<EventRecord> events{ev("t1", 2013, 5, 1), ev("r1", 2013, 1, 1),
                                  ev("t1", 2013, 5, 3), ev("r1", 2013, 11, 1),
                                  ev("t2", 2013, 6, 10)};
  auto labels = label_users(events);
  auto kept = filter_tourist_events(events, labels);
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].user_id == "t1");
  CHECK(kept[1].user_id == "t1");
  CHECK(kept[2].user_id == "t2");
}

TEST_CASE("filter matches a per-user reference filter on random data") {
  Rng rng(13);
  std::vector<EventRecord> events;
  for (int i = 0; i < 4000; ++i)
    events.push_back(ev("u" + std::to_string(rng.below(120)), 2013,
                        1 + static_cast<int>(rng.below(12)), 1 + static_cast<int>(rng.below(28)),
                        static_cast<Source>(rng.below(kNumSources))));
  auto labels = label_users(events);

  // reference: recompute tourist status independently with a flat map
  std::map<std::pair<int, std::string>, std::pair<std::int64_t, std::int64_t>> span;
  for (const auto& e : events) {
    auto key = std::make_pair(static_cast<int>(e.source), e.user_id + "@" +
                                                              std::to_string(e.ts.year));
    auto d = e.ts.day_number();
    auto it = span.find(key);
    if (it == span.end())
      span[key] = {d, d};
    else {
      it->second.first = std::min(it->second.first, d);
      it->second.second = std::max(it->second.second, d);
    }
  }
  std::set<std::pair<int, std::string>> residents;
  for (const auto& [key, mm] : span)
    if (mm.second - mm.first > 7)
      residents.insert({key.first, key.second.substr(0, key.second.find('@'))});

  auto kept = filter_tourist_events(events, labels);
  std::size_t expected = 0;
  for (const auto& e : events)
    if (!residents.count({static_cast<int>(e.source), e.user_id})) ++expected;
  CHECK(kept.size() == expected);
  for (const auto& e : kept)
    CHECK_FALSE(residents.count({static_cast<int>(e.source), e.user_id}));
}

TEST_CASE("an event whose user has no label is a consistency error") {
  std::vector<EventRecord> events{ev("u", 2013, 5, 1)};
  std::vector<UserLabel> labels;  // empty
  CHECK_THROWS_AS(filter_tourist_events(events, labels), DataError);
}

TEST_CASE("all-resident input filters to nothing") {
  std::vector<EventRecord> events{ev("r", 2013, 1, 1), ev("r", 2013, 12, 1)};
  auto kept = filter_tourist_events(events, label_users(events));
  CHECK(kept.empty());
}
