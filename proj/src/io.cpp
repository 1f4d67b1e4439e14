#include "uavinspect/io.hpp"

#include "uavinspect/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uavinspect {

using nlohmann::ordered_json;

std::string fmt9(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in output
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

void put(std::string& s, double v) {
  s += ',';
  s += fmt9(v);
}

void put(std::string& s, const Vec3& v) {
  put(s, v.x());
  put(s, v.y());
  put(s, v.z());
}

ordered_json vec(const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

double parse_double(const std::string& field, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw IoError("trajectory line " + std::to_string(line) + ": bad number '" + field + "'");
  }
}

}  // namespace

std::string plan_csv(const WaypointPath& plan) {
  std::string s = kPlanHeader;
  s += '\n';
  for (const auto& w : plan.waypoints) {
    s += std::to_string(w.layer);
    put(s, w.position);
    put(s, w.yaw);
    s += '\n';
  }
  return s;
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string s = kTrajectoryHeader;
  s += '\n';
  for (const auto& r : rows) {
    s += fmt9(r.time);
    put(s, r.truth);
    put(s, r.estimate);
    put(s, r.dead_reckoning);
    s += ',';
    s += phase_name(r.phase);
    s += '\n';
  }
  return s;
}

std::string captures_csv(const std::vector<CaptureRecord>& records) {
  std::string s = kCaptureHeader;
  s += '\n';
  for (const auto& r : records) {
    s += r.image_id;
    put(s, r.time);
    put(s, r.est_position);
    put(s, r.est_quat.w());
    put(s, r.est_quat.x());
    put(s, r.est_quat.y());
    put(s, r.est_quat.z());
    s += ',';
    s += to_string(r.label);
    s += '\n';
  }
  return s;
}

std::string report_json(const MissionReport& r) {
  ordered_json faults = ordered_json::array();
  for (const auto& f : r.faults) {
    faults.push_back({{"id", f.id}, {"image_id", f.image_id}, {"capture_time_s", f.capture_time},
                      {"position_m", vec(f.position)}, {"yaw_rad", f.yaw}});
  }
  ordered_json legs = ordered_json::array();
  for (const auto& l : r.legs) {
    legs.push_back({{"fault", l.fault_index}, {"start_s", l.start}, {"end_s", l.end},
                    {"true_position_m", vec(l.truth_position)}, {"true_yaw_rad", l.truth_yaw}});
  }
  ordered_json doc;
  doc["completed"] = r.completed;
  doc["diagnostic"] = r.diagnostic;
  doc["faults"] = faults;
  doc["inspection_duration_s"] = r.inspection_duration;
  doc["detection_durations_s"] = r.detection_durations;
  doc["detection_legs"] = legs;
  doc["total_time_s"] = r.total_time;
  doc["capture_count"] = r.capture_count;
  doc["avoidance_steps"] = r.avoidance_steps;
  doc["min_obstacle_clearance_m"] = finite_or_null(r.min_obstacle_clearance);
  doc["min_building_clearance_m"] = finite_or_null(r.min_building_clearance);
  doc["max_kalman_error_m"] = r.max_kalman_error;
  doc["max_dead_reckoning_error_m"] = r.max_dead_reckoning_error;
  return doc.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<TrajectorySample> parse_trajectory_csv(const std::string& text) {
  std::vector<TrajectorySample> out;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader) throw IoError("trajectory CSV has an unexpected header");
  for (std::size_t ln = 2; std::getline(in, line); ++ln) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 11) throw IoError("trajectory line " + std::to_string(ln) + ": expected 11 fields");
    TrajectorySample s;
    s.time = parse_double(f[0], ln);
    for (int i = 0; i < 3; ++i) {
      s.truth[i] = parse_double(f[1 + i], ln);
      s.estimate[i] = parse_double(f[4 + i], ln);
      s.dead_reckoning[i] = parse_double(f[7 + i], ln);
    }
    s.phase = f[10];
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t count_csv_rows(const std::string& text) {
  std::size_t rows = 0;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (!line.empty()) ++rows;
  }
  return rows;
}

}  // namespace uavinspect
