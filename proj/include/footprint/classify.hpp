#pragma once

#include <vector>

#include "footprint/event.hpp"

namespace footprint {

struct YearSpan {
  int year;
  int span_days;  // whole days between first and last event date in the year
};

struct UserLabel {
  std::string user_id;
  Source source;
  bool tourist;
  std::vector<YearSpan> yearly_spans;
  int max_span_days = 0;
};

// Tourist/resident rule: a user is a resident if ANY calendar year of their
// activity spans more than threshold_days whole days (first to last event
// date); otherwise a tourist. Exactly threshold_days still counts as tourist.
// Labels are per (user, source); output sorted by (source, user_id).
std::vector<UserLabel> label_users(const std::vector<EventRecord>& events,
                                   int threshold_days = 7);

// Keeps exactly the events whose (user, source) is labeled tourist, order
// preserved. A user present in events but missing from labels is a fatal
// consistency error (DataError).
std::vector<EventRecord> filter_tourist_events(const std::vector<EventRecord>& events,
                                               const std::vector<UserLabel>& labels);

}  // namespace footprint
