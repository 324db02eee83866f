#include "footprint/common.hpp"

namespace footprint {

const char* source_name(Source s) {
  switch (s) {
    case Source::photo:
      return "photo";
    case Source::checkin:
      return "checkin";
    case Source::tweet:
      return "tweet";
  }
  return "?";
}

std::optional<Source> source_from_name(std::string_view name) {
  if (name == "photo") return Source::photo;
  if (name == "checkin") return Source::checkin;
  if (name == "tweet") return Source::tweet;
  return std::nullopt;
}

const char* crs_name(CrsMode m) {
  return m == CrsMode::geographic ? "geographic" : "projected";
}

std::optional<CrsMode> crs_from_name(std::string_view name) {
  if (name == "geographic") return CrsMode::geographic;
  if (name == "projected") return CrsMode::projected;
  return std::nullopt;
}

}  // namespace footprint
