#pragma once

#include "uavinspect/mission.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavinspect {

/// Everything a run needs, as loaded from a JSON scenario file.
struct ScenarioConfig {
  MissionConfig mission;
  std::string output_dir{"out"};

  void validate() const { mission.validate(); }
  /// Seeds both IMU streams and the classifier.
  void set_seed(std::uint64_t seed);
};

/// The built-in default scenario: 20 x 10 x 9 m building north of home, no decals, no obstacles.
ScenarioConfig default_scenario();

/// Parses a scenario document. Missing keys keep their defaults; unknown keys
/// and out-of-range values raise ConfigError.
ScenarioConfig scenario_from_json(std::string_view text);

/// Canonical, fully populated JSON form (round-trips through scenario_from_json).
std::string scenario_to_json(const ScenarioConfig& cfg);

/// Applies `key=value` overrides (dotted keys, numeric segments index arrays).
/// Values are read as JSON when they parse, otherwise as plain strings.
std::string apply_overrides(std::string_view json_text, const std::vector<std::string>& assignments);

/// Reads a scenario file, applies overrides, validates. Throws IoError or ConfigError.
ScenarioConfig load_scenario(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace uavinspect
