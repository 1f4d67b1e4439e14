#pragma once

#include "uavinspect/estimation.hpp"
#include "uavinspect/planner.hpp"
#include "uavinspect/vehicle.hpp"
#include "uavinspect/world.hpp"

#include <optional>

namespace uavinspect {

struct PidGains {
  double kp{1.00};
  double ki{0.0001};
  double kd{0.5};
  double i_max{100.0};

  void validate() const;
};

struct PidState {
  double integral{0.0};
  double prev_error{0.0};
  bool initialized{false};
};

struct PidOutput {
  double output{0.0};
  PidState state;
};

/// kp*e + ki*integral + kd*de/dt with a clamped integral; the first call has no derivative kick.
PidOutput pid_step(const PidGains& gains, const PidState& state, double error, double dt);

struct TrackingParams {
  double v_max{3.0};      ///< m/s
  double yaw_gain{1.0};   ///< 1/s
  double yaw_rate_max{1.0};
};

/// Scalar PID on the distance to the waypoint, applied along the bearing to it
/// (expressed in the body frame), plus proportional yaw alignment.
VelocityCommand track_waypoint(const EstimatedState& est, const Waypoint& wp, const PidGains& gains,
                               PidState& state, double dt, const TrackingParams& params = {});

struct AvoidanceParams {
  double d_engage{3.0};                 ///< m
  double front_half_angle{kPi / 4.0};   ///< |bearing| <= this is "front"
  double v_max{3.0};
};

struct ObstacleSectors {
  bool left{false};
  bool right{false};
  bool front{false};
  double left_min{0.0};
  double right_min{0.0};
  double front_min{0.0};

  [[nodiscard]] bool any() const { return left || right || front; }
  [[nodiscard]] bool all() const { return left && right && front; }
};

/// Buckets close laser returns into front/left/right, ignoring hits that land
/// inside the building mask (evaluated with the estimated pose).
ObstacleSectors classify_sectors(const LaserScan& scan, const Rect& mask, const Vec3& position, double yaw,
                                 const AvoidanceParams& params = {});

/// Shortest scan return whose hit point lies outside the mask (range_max if none).
double min_unmasked_range(const LaserScan& scan, const Rect& mask, const Vec3& position, double yaw);

/// One PID per sector, reset whenever its sector clears.
struct AvoidanceState {
  PidState left;
  PidState right;
  PidState front;
  PidState back;
};

/// Repulsive command driven by error = 1 / distance: obstacles on the right push
/// left (+y), on the left push right (-y), in front drift left, and on all three
/// sides back off along -x. Empty when no sector is active.
std::optional<VelocityCommand> avoidance_command(const ObstacleSectors& sectors, const PidGains& gains,
                                                 AvoidanceState& state, double dt,
                                                 const AvoidanceParams& params = {});

}  // namespace uavinspect
