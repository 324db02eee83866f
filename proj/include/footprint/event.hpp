#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "footprint/common.hpp"

namespace footprint {

// Calendar timestamp in the study city's local time. Hour resolution is what
// the analyses need; minutes/seconds are kept for round-tripping.
struct Timestamp {
  int year = 0;
  int month = 0;
  int day = 0;
  int hour = 0;
  int minute = 0;
  int second = 0;

  bool valid() const;
  // Days since 1970-01-01 (proleptic Gregorian), ignoring time of day.
  std::int64_t day_number() const;
  std::string to_iso() const;
  auto operator<=>(const Timestamp&) const = default;
};

// Parses "YYYY-MM-DDTHH:MM:SS" ("T" or space separator; seconds optional).
bool parse_iso_timestamp(const std::string& text, Timestamp& out);

// One geolocated, user-stamped footprint (photo upload, check-in or tweet).
struct EventRecord {
  Source source = Source::photo;
  std::string user_id;
  Timestamp ts;
  double lon = 0.0;  // projected mode: x in meters
  double lat = 0.0;  // projected mode: y in meters
  std::string text;  // tweets only; empty otherwise
};

struct Rejection {
  std::size_t line_number;  // 1-based, counting every physical line
  std::string reason;
};

struct IngestReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::vector<Rejection> rejections;
};

// Parses newline-delimited JSON events. Fields: user, ts, lat, lon,
// optional text, optional src override. Blank lines are skipped silently;
// malformed lines are rejected with a reason, never fatal. An unreadable
// file throws DataError.
std::pair<std::vector<EventRecord>, IngestReport> parse_events(const std::string& path,
                                                               Source source, CrsMode crs_mode);
std::pair<std::vector<EventRecord>, IngestReport> parse_events(std::istream& in, Source source,
                                                               CrsMode crs_mode);

std::string event_to_ndjson(const EventRecord& e);

using CheckinPredicate = std::function<bool(const EventRecord&)>;

// Default rule: text contains "4sq.com" or "swarmapp.com", case-insensitive.
bool default_checkin_predicate(const EventRecord& e);

// Returns a predicate matching the given (case-sensitive) ECMAScript regex.
CheckinPredicate regex_checkin_predicate(const std::string& pattern);

struct CheckinSplit {
  std::vector<EventRecord> checkins;  // source rewritten to checkin
  std::vector<EventRecord> ordinary;
};

// Partitions a tweet stream; every input ends up in exactly one output,
// input order preserved within each part.
CheckinSplit split_checkins(const std::vector<EventRecord>& tweets,
                            const CheckinPredicate& predicate = default_checkin_predicate);

}  // namespace footprint
