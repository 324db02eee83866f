#include "footprint/event.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace footprint {

namespace {

bool all_finite(double a, double b) { return std::isfinite(a) && std::isfinite(b); }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

bool Timestamp::valid() const {
  if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 60)
    return false;
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                                  std::chrono::day{unsigned(day)}};
  return ymd.ok();
}

std::int64_t Timestamp::day_number() const {
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                                  std::chrono::day{unsigned(day)}};
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

std::string Timestamp::to_iso() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", year, month, day, hour, minute,
                second);
  return buf;
}

bool parse_iso_timestamp(const std::string& text, Timestamp& out) {
  Timestamp ts;
  char sep = 0;
  int n = std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &ts.year, &ts.month, &ts.day, &sep,
                      &ts.hour, &ts.minute, &ts.second);
  if (n < 6 || (sep != 'T' && sep != ' ' && sep != 't')) return false;
  if (n == 6) ts.second = 0;
  if (!ts.valid()) return false;
  out = ts;
  return true;
}

namespace {

// Returns empty string on success, rejection reason otherwise.
std::string parse_line(const std::string& line, Source source, CrsMode crs_mode,
                       EventRecord& out) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return "invalid json";

  EventRecord e;
  e.source = source;
  if (auto it = j.find("src"); it != j.end() && it->is_string()) {
    auto s = source_from_name(it->get<std::string>());
    if (!s) return "unknown src";
    e.source = *s;
  }
  auto user = j.find("user");
  if (user == j.end() || !user->is_string()) return "missing user";
  e.user_id = user->get<std::string>();
  if (e.user_id.empty()) return "empty user";

  auto ts = j.find("ts");
  if (ts == j.end() || !ts->is_string()) return "missing ts";
  if (!parse_iso_timestamp(ts->get<std::string>(), e.ts)) return "bad timestamp";

  auto lat = j.find("lat");
  auto lon = j.find("lon");
  if (lat == j.end() || lon == j.end() || !lat->is_number() || !lon->is_number())
    return "missing coordinates";
  e.lat = lat->get<double>();
  e.lon = lon->get<double>();
  if (!all_finite(e.lat, e.lon)) return "non-finite coordinate";
  if (crs_mode == CrsMode::geographic &&
      (e.lat < -90.0 || e.lat > 90.0 || e.lon < -180.0 || e.lon > 180.0))
    return "coordinate out of range";

  if (auto it = j.find("text"); it != j.end() && it->is_string())
    e.text = it->get<std::string>();

  out = std::move(e);
  return {};
}

}  // namespace

std::pair<std::vector<EventRecord>, IngestReport> parse_events(std::istream& in, Source source,
                                                               CrsMode crs_mode) {
  std::vector<EventRecord> events;
  IngestReport report;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    EventRecord e;
    std::string reason = parse_line(line, source, crs_mode, e);
    if (reason.empty()) {
      events.push_back(std::move(e));
      ++report.accepted;
    } else {
      ++report.rejected;
      report.rejections.push_back({line_number, std::move(reason)});
    }
  }
  return {std::move(events), std::move(report)};
}

std::pair<std::vector<EventRecord>, IngestReport> parse_events(const std::string& path,
                                                               Source source, CrsMode crs_mode) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open event file: " + path);
  return parse_events(in, source, crs_mode);
}

std::string event_to_ndjson(const EventRecord& e) {
  nlohmann::ordered_json j;
  j["user"] = e.user_id;
  j["ts"] = e.ts.to_iso();
  j["lat"] = e.lat;
  j["lon"] = e.lon;
  if (!e.text.empty()) j["text"] = e.text;
  j["src"] = source_name(e.source);
  return j.dump();
}

bool default_checkin_predicate(const EventRecord& e) {
  std::string t = lower(e.text);
  return t.find("4sq.com") != std::string::npos || t.find("swarmapp.com") != std::string::npos;
}

CheckinPredicate regex_checkin_predicate(const std::string& pattern) {
  auto re = std::make_shared<std::regex>(pattern);
  return [re](const EventRecord& e) { return std::regex_search(e.text, *re); };
}

CheckinSplit split_checkins(const std::vector<EventRecord>& tweets,
                            const CheckinPredicate& predicate) {
  CheckinSplit out;
  for (const auto& e : tweets) {
    if (predicate(e)) {
      EventRecord c = e;
      c.source = Source::checkin;
      out.checkins.push_back(std::move(c));
    } else {
      out.ordinary.push_back(e);
    }
  }
  return out;
}

}  // namespace footprint
