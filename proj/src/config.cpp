#include "footprint/config.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace footprint {

const std::vector<std::string> KvConfig::kEmpty;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KvConfig KvConfig::parse(std::istream& in, const std::string& origin) {
  KvConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    cfg.values_[key].push_back(value);
  }
  return cfg;
}

KvConfig KvConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in, path);
}

void KvConfig::set(const std::string& key, const std::string& value) {
  values_[key].push_back(value);
}

bool KvConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> KvConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return std::nullopt;
  return it->second.back();
}

const std::vector<std::string>& KvConfig::all(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? kEmpty : it->second;
}

std::string KvConfig::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

long KvConfig::get_int(const std::string& key, long fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  long out;
  auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || p != v->data() + v->size())
    throw ConfigError("config key '" + key + "': not an integer: " + *v);
  return out;
}

double KvConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    double out = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: " + *v);
  }
}

bool KvConfig::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  throw ConfigError("config key '" + key + "': not a boolean: " + *v);
}

std::uint64_t KvConfig::get_seed(const std::string& key, std::uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::uint64_t out;
  auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || p != v->data() + v->size())
    throw ConfigError("config key '" + key + "': not a seed: " + *v);
  return out;
}

PipelineConfig PipelineConfig::from_kv(const KvConfig& kv) {
  PipelineConfig c;
  c.photo_file = kv.get_string("source.photo", "");
  c.tweet_file = kv.get_string("source.tweet", "");
  c.zones_file = kv.get_string("zones", "");
  if (c.zones_file.empty()) throw ConfigError("missing required key 'zones'");
  if (c.photo_file.empty() && c.tweet_file.empty())
    throw ConfigError("need at least one of 'source.photo' / 'source.tweet'");
  for (const std::string& f : {c.photo_file, c.tweet_file, c.zones_file}) {
    if (!f.empty() && !std::filesystem::exists(f))
      throw ConfigError("referenced file does not exist: " + f);
  }
  if (auto v = kv.get("crs")) {
    auto m = crs_from_name(*v);
    if (!m) throw ConfigError("invalid crs: " + *v);
    c.crs = *m;
  }
  c.threshold_days = static_cast<int>(kv.get_int("threshold_days", 7));
  if (c.threshold_days < 1) throw ConfigError("threshold_days must be >= 1");
  if (auto v = kv.get("checkin_regex")) c.checkin_regex = *v;
  c.do_rescale = kv.get_bool("rescale", true);
  c.k = static_cast<int>(kv.get_int("k", 6));
  if (c.k < 1) throw ConfigError("k must be >= 1");
  c.restarts = static_cast<int>(kv.get_int("restarts", 50));
  if (c.restarts < 1) throw ConfigError("restarts must be >= 1");
  c.threshold_m = kv.get_double("weights.threshold_m", 500.0);
  if (c.threshold_m <= 0.0) throw ConfigError("weights.threshold_m must be > 0");
  c.row_standardize = kv.get_bool("weights.row_standardize", false);
  c.permutations = static_cast<int>(kv.get_int("permutations", 999));
  if (c.permutations < 0) throw ConfigError("permutations must be >= 0");
  c.alpha = kv.get_double("alpha", 0.05);
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
  c.seed = kv.get_seed("seed", 1);
  if (auto v = kv.get("center")) {
    double x, y;
    if (std::sscanf(v->c_str(), "%lf,%lf", &x, &y) != 2)
      throw ConfigError("center must be 'X,Y': " + *v);
    c.center = Point{x, y};
  }
  c.ring_m = kv.get_double("ring_m", 1000.0);
  if (c.ring_m <= 0.0) throw ConfigError("ring_m must be > 0");
  c.out_dir = kv.get_string("out", "out");
  c.jobs = static_cast<int>(kv.get_int("jobs", 1));
  if (c.jobs < 1) throw ConfigError("jobs must be >= 1");
  return c;
}

}  // namespace footprint
