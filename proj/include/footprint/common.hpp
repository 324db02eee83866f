#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace footprint {

enum class Source : int { photo = 0, checkin = 1, tweet = 2 };
inline constexpr std::array<Source, 3> kAllSources{Source::photo, Source::checkin, Source::tweet};
inline constexpr int kNumSources = 3;

const char* source_name(Source s);
std::optional<Source> source_from_name(std::string_view name);

enum class CrsMode { geographic, projected };

const char* crs_name(CrsMode m);
std::optional<CrsMode> crs_from_name(std::string_view name);

// Error categories map to process exit codes: config 2, data 3, numeric 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitNumericError = 4;

}  // namespace footprint
