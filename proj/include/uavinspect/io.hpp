#pragma once

#include "uavinspect/mission.hpp"

#include <string>
#include <vector>

namespace uavinspect {

/// Fixed 9-significant-digit decimal used in every CSV.
std::string fmt9(double v);

inline constexpr const char* kPlanHeader = "layer,x_m,y_m,z_m,yaw_rad";
inline constexpr const char* kTrajectoryHeader = "t_s,true_x,true_y,true_z,est_x,est_y,est_z,dr_x,dr_y,dr_z,phase";
inline constexpr const char* kCaptureHeader = "image_id,t_s,x_m,y_m,z_m,qw,qx,qy,qz,label";

std::string plan_csv(const WaypointPath& plan);
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);
std::string captures_csv(const std::vector<CaptureRecord>& records);
std::string report_json(const MissionReport& report);

/// Writes `content` to `path`, replacing any previous file. Throws IoError.
void write_text(const std::string& path, const std::string& content);
/// Throws IoError when the file cannot be opened.
std::string read_text(const std::string& path);

/// Trajectory row as read back from disk (phase kept as text).
struct TrajectorySample {
  double time{0.0};
  Vec3 truth{Vec3::Zero()};
  Vec3 estimate{Vec3::Zero()};
  Vec3 dead_reckoning{Vec3::Zero()};
  std::string phase;
};

std::vector<TrajectorySample> parse_trajectory_csv(const std::string& text);

/// Data rows in a CSV body (header excluded).
std::size_t count_csv_rows(const std::string& text);

}  // namespace uavinspect
