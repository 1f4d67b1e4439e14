#include "uavinspect/control.hpp"

#include "uavinspect/errors.hpp"

#include <algorithm>

namespace uavinspect {

void PidGains::validate() const {
  if (!(kp >= 0.0) || !(ki >= 0.0) || !(kd >= 0.0)) throw ConfigError("pid gains must be >= 0");
  if (!(i_max >= 0.0)) throw ConfigError("pid.i_max must be >= 0");
}

PidOutput pid_step(const PidGains& g, const PidState& s, double error, double dt) {
  PidOutput out;
  out.state = s;
  if (!s.initialized) {
    out.state.prev_error = error;
    out.state.initialized = true;
  }
  out.state.integral = std::clamp(out.state.integral + error * dt, -g.i_max, g.i_max);
  const double derivative = (error - out.state.prev_error) / dt;
  out.output = g.kp * error + g.ki * out.state.integral + g.kd * derivative;
  out.state.prev_error = error;
  return out;
}

VelocityCommand track_waypoint(const EstimatedState& est, const Waypoint& wp, const PidGains& gains,
                               PidState& state, double dt, const TrackingParams& params) {
  VelocityCommand cmd;
  const Vec3 delta = wp.position - est.position;
  const double dist = delta.norm();
  const auto pid = pid_step(gains, state, dist, dt);
  state = pid.state;
  if (dist > 1e-9) {
    const double speed = std::clamp(pid.output, -params.v_max, params.v_max);
    const Vec3 dir_body = yaw_quat(est.yaw()).conjugate() * (delta / dist);
    cmd.v_body = dir_body * speed;
  }
  const double yaw_err = wrap_angle(wp.yaw - est.yaw());
  cmd.yaw_rate = std::clamp(params.yaw_gain * yaw_err, -params.yaw_rate_max, params.yaw_rate_max);
  return cmd;
}

ObstacleSectors classify_sectors(const LaserScan& scan, const Rect& mask, const Vec3& position, double yaw,
                                 const AvoidanceParams& params) {
  ObstacleSectors s;
  const Vec2 origin = position.head<2>();
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const double r = scan.ranges[i];
    if (!(r < params.d_engage)) continue;
    const double a = scan.angle(i);
    if (a < scan.angle_min - 1e-12 || a > scan.angle_max + 1e-12) continue;
    const Vec2 hit = origin + r * heading(yaw + a);
    if (mask.contains(hit)) continue;
    auto mark = [r](bool& flag, double& min) {
      min = flag ? std::min(min, r) : r;
      flag = true;
    };
    if (std::abs(a) <= params.front_half_angle) {
      mark(s.front, s.front_min);
    } else if (a > 0.0) {
      mark(s.left, s.left_min);
    } else {
      mark(s.right, s.right_min);
    }
  }
  return s;
}

double min_unmasked_range(const LaserScan& scan, const Rect& mask, const Vec3& position, double yaw) {
  double best = scan.range_max;
  const Vec2 origin = position.head<2>();
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const double r = scan.ranges[i];
    if (r >= best) continue;
    if (mask.contains(origin + r * heading(yaw + scan.angle(i)))) continue;
    best = r;
  }
  return best;
}

std::optional<VelocityCommand> avoidance_command(const ObstacleSectors& sectors, const PidGains& gains,
                                                 AvoidanceState& state, double dt,
                                                 const AvoidanceParams& params) {
  auto drive = [&](bool active, double min_dist, PidState& pid) {
    if (!active) {
      pid = {};
      return 0.0;
    }
    const auto out = pid_step(gains, pid, 1.0 / min_dist, dt);
    pid = out.state;
    return std::max(out.output, 0.0);
  };

  if (!sectors.any()) {
    state = {};
    return std::nullopt;
  }

  VelocityCommand cmd;
  if (sectors.all()) {
    const double closest = std::min({sectors.left_min, sectors.right_min, sectors.front_min});
    state.left = state.right = state.front = {};
    cmd.v_body.x() = -drive(true, closest, state.back);
  } else {
    state.back = {};
    const double from_right = drive(sectors.right, sectors.right_min, state.right);
    const double from_left = drive(sectors.left, sectors.left_min, state.left);
    const double from_front = drive(sectors.front, sectors.front_min, state.front);
    cmd.v_body.y() = from_right - from_left + from_front;
  }
  const double speed = cmd.v_body.norm();
  if (speed > params.v_max) cmd.v_body *= params.v_max / speed;
  return cmd;
}

}  // namespace uavinspect
