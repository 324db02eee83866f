#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "footprint/common.hpp"
#include "footprint/geometry.hpp"

namespace footprint {

// Line-oriented key=value config. '#' starts a comment; blank lines are
// skipped; repeated keys accumulate (last one wins for scalar lookups).
class KvConfig {
 public:
  static KvConfig parse_file(const std::string& path);
  static KvConfig parse(std::istream& in, const std::string& origin = "<config>");

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  const std::vector<std::string>& all(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key, long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;

 private:
  std::map<std::string, std::vector<std::string>> values_;
  static const std::vector<std::string> kEmpty;
};

struct PipelineConfig {
  std::string photo_file;   // source.photo
  std::string tweet_file;   // source.tweet (check-ins are split out of it)
  std::string zones_file;
  CrsMode crs = CrsMode::projected;
  int threshold_days = 7;
  std::optional<std::string> checkin_regex;
  bool do_rescale = true;
  int k = 6;
  int restarts = 50;
  double threshold_m = 500.0;
  bool row_standardize = false;
  int permutations = 999;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::optional<Point> center;  // gradient center; defaults to centroid mean
  double ring_m = 1000.0;
  std::string out_dir = "out";
  int jobs = 1;

  // Parses and validates; referenced files must exist. ConfigError on any
  // violation.
  static PipelineConfig from_kv(const KvConfig& kv);
};

}  // namespace footprint
