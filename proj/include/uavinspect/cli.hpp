#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uavinspect {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitWatchdog = 3, kExitIo = 4 };

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::vector<std::string> overrides;  ///< key=value
};

/// Writes plan.csv only.
int cmd_plan(const RunOptions& opts, std::ostream& out, std::ostream& err);
/// Inspection phase only: plan.csv, trajectory.csv, captures.csv.
int cmd_inspect(const RunOptions& opts, std::ostream& out, std::ostream& err);
/// Both phases: the inspect outputs plus report.json.
int cmd_mission(const RunOptions& opts, std::ostream& out, std::ostream& err);
/// Zero-command hover with the scenario's sensors and filters: scenario.json, trajectory.csv.
int cmd_hover(const RunOptions& opts, double duration, std::ostream& out, std::ostream& err);
/// Error statistics and fault summary for a finished run directory.
int cmd_report(const std::string& run_dir, std::ostream& out, std::ostream& err);

}  // namespace uavinspect
