#pragma once

#include <stdexcept>
#include <string>

namespace uavinspect {

/// Invalid scenario, scene or filter configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A waypoint was not reached within the watchdog window.
class WatchdogAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavinspect
