#include "uavinspect/vehicle.hpp"

#include "uavinspect/errors.hpp"

#include <algorithm>

namespace uavinspect {

void VehicleParams::validate() const {
  if (!(tau > 0.0)) throw ConfigError("vehicle.tau must be > 0");
  if (!(v_max > 0.0)) throw ConfigError("vehicle.v_max must be > 0");
  if (!(yaw_rate_max > 0.0)) throw ConfigError("vehicle.yaw_rate_max must be > 0");
  if (!(tilt_tau >= 0.0)) throw ConfigError("vehicle.tilt_tau must be >= 0");
  if (!(max_tilt > 0.0 && max_tilt < kPi / 2)) throw ConfigError("vehicle.max_tilt must be in (0, pi/2)");
}

VelocityCommand saturate(const VelocityCommand& cmd, const VehicleParams& params) {
  VelocityCommand out = cmd;
  const double speed = out.v_body.norm();
  if (speed > params.v_max) out.v_body *= params.v_max / speed;
  out.yaw_rate = std::clamp(out.yaw_rate, -params.yaw_rate_max, params.yaw_rate_max);
  return out;
}

Euler tilt_for_acceleration(const Vec3& accel_world, double yaw, double max_tilt) {
  // Specific force in the heading frame; body z must point along it.
  const Vec3 f = yaw_quat(yaw).conjugate() * (accel_world - gravity_world());
  Euler e;
  e.yaw = yaw;
  e.pitch = std::clamp(std::atan2(f.x(), f.z()), -max_tilt, max_tilt);
  e.roll = std::clamp(std::atan2(-f.y(), std::hypot(f.x(), f.z())), -max_tilt, max_tilt);
  return e;
}

TrueState step_dynamics(const TrueState& state, const VelocityCommand& cmd_in, double dt,
                        const VehicleParams& params) {
  const VelocityCommand cmd = saturate(cmd_in, params);
  const Euler prev = euler_from_quat(state.attitude);

  const Vec3 v_target = yaw_quat(prev.yaw) * cmd.v_body;
  const double k = std::min(dt / params.tau, 1.0);
  Vec3 accel = (v_target - state.velocity) * (k / dt);

  TrueState next = state;
  next.velocity = state.velocity + accel * dt;
  next.position = state.position + 0.5 * (state.velocity + next.velocity) * dt;
  if (next.position.z() < 0.0) {
    // Ground contact: the vehicle rests on z = 0.
    next.position.z() = 0.0;
    next.velocity.z() = std::max(next.velocity.z(), 0.0);
    accel.z() = (next.velocity.z() - state.velocity.z()) / dt;
  }
  next.acceleration = accel;

  const double yaw = wrap_angle(prev.yaw + cmd.yaw_rate * dt);
  const Euler target = tilt_for_acceleration(accel, yaw, params.max_tilt);
  const double a = params.tilt_tau > 0.0 ? std::min(dt / params.tilt_tau, 1.0) : 1.0;
  Euler e;
  e.yaw = yaw;
  e.roll = prev.roll + a * (target.roll - prev.roll);
  e.pitch = prev.pitch + a * (target.pitch - prev.pitch);
  next.attitude = quat_from_euler(e);

  // Constant body rate that carries the previous attitude onto the new one.
  Quat dq = state.attitude.conjugate() * next.attitude;
  if (dq.w() < 0.0) dq.coeffs() *= -1.0;
  const Eigen::AngleAxisd aa(dq.normalized());
  next.angular_rate = aa.axis() * (aa.angle() / dt);
  next.time = state.time + dt;
  return next;
}

}  // namespace uavinspect
