#pragma once

#include "uavinspect/geometry.hpp"

namespace uavinspect {

/// Ground-truth state of the simulated airframe.
struct TrueState {
  Vec3 position{Vec3::Zero()};      ///< m, world frame
  Vec3 velocity{Vec3::Zero()};      ///< m/s, world frame
  Vec3 acceleration{Vec3::Zero()};  ///< m/s^2, world frame, over the last step
  Quat attitude{Quat::Identity()};  ///< body -> world
  Vec3 angular_rate{Vec3::Zero()};  ///< rad/s, body frame
  double time{0.0};                 ///< s

  [[nodiscard]] double yaw() const { return yaw_of(attitude); }
};

/// Body-frame velocity request: +x front, +y left, +z up.
struct VelocityCommand {
  Vec3 v_body{Vec3::Zero()};
  double yaw_rate{0.0};

  friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

struct VehicleParams {
  double tau{0.3};            ///< s, velocity tracking time constant
  double v_max{3.0};          ///< m/s
  double yaw_rate_max{1.0};   ///< rad/s
  double tilt_tau{0.1};       ///< s, roll/pitch follow the acceleration-implied tilt with this lag
  double max_tilt{deg2rad(35.0)};

  void validate() const;
};

/// Clamps a command to the vehicle's speed and yaw-rate envelope.
VelocityCommand saturate(const VelocityCommand& cmd, const VehicleParams& params);

/// Roll/pitch that align body z with the specific force implied by a world acceleration at the given yaw.
Euler tilt_for_acceleration(const Vec3& accel_world, double yaw, double max_tilt);

/// Advances the first-order velocity-tracking plant by one step.
///
/// World velocity relaxes toward the yaw-rotated command with time constant tau,
/// position integrates with constant acceleration across the step, and yaw
/// integrates the commanded rate. Roll and pitch track the tilt that a
/// multirotor would need for the step's acceleration, so the IMU sees the
/// matching gravity components. Body rates are recovered from the attitude
/// increment so gyro integration reproduces the attitude trajectory.
TrueState step_dynamics(const TrueState& state, const VelocityCommand& cmd, double dt,
                        const VehicleParams& params = {});

}  // namespace uavinspect
