#include "footprint/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace footprint {

std::vector<UserLabel> label_users(const std::vector<EventRecord>& events, int threshold_days) {
  if (threshold_days < 1) throw ConfigError("threshold_days must be >= 1");

  // (source, user) -> year -> (min day, max day)
  std::map<std::pair<int, std::string>, std::map<int, std::pair<std::int64_t, std::int64_t>>>
      spans;
  for (const auto& e : events) {
    auto key = std::make_pair(static_cast<int>(e.source), e.user_id);
    std::int64_t d = e.ts.day_number();
    auto [it, inserted] = spans[key].try_emplace(e.ts.year, std::make_pair(d, d));
    if (!inserted) {
      it->second.first = std::min(it->second.first, d);
      it->second.second = std::max(it->second.second, d);
    }
  }

  std::vector<UserLabel> labels;
  labels.reserve(spans.size());
  for (const auto& [key, years] : spans) {
    UserLabel label;
    label.source = static_cast<Source>(key.first);
    label.user_id = key.second;
    label.tourist = true;
    for (const auto& [year, minmax] : years) {
      int span = static_cast<int>(minmax.second - minmax.first);
      label.yearly_spans.push_back({year, span});
      label.max_span_days = std::max(label.max_span_days, span);
      if (span > threshold_days) label.tourist = false;
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<EventRecord> filter_tourist_events(const std::vector<EventRecord>& events,
                                               const std::vector<UserLabel>& labels) {
  std::set<std::pair<int, std::string>> tourists;
  std::set<std::pair<int, std::string>> known;
  for (const auto& l : labels) {
    auto key = std::make_pair(static_cast<int>(l.source), l.user_id);
    known.insert(key);
    if (l.tourist) tourists.insert(key);
  }
  std::vector<EventRecord> out;
  for (const auto& e : events) {
    auto key = std::make_pair(static_cast<int>(e.source), e.user_id);
    if (!known.count(key))
      throw DataError("no label for user '" + e.user_id + "' (source " +
                      source_name(e.source) + ")");
    if (tourists.count(key)) out.push_back(e);
  }
  return out;
}

}  // namespace footprint
