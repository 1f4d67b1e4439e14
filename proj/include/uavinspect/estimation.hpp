#pragma once

#include "uavinspect/attitude.hpp"
#include "uavinspect/geometry.hpp"
#include "uavinspect/sensors.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace uavinspect {

using Mat3 = Eigen::Matrix3d;
using Mat2 = Eigen::Matrix2d;

/// One world axis: state [position, velocity, acceleration] and its covariance.
struct KalmanAxis {
  Vec3 x{Vec3::Zero()};
  Mat3 P{Mat3::Identity()};
};

struct KalmanState {
  std::array<KalmanAxis, 3> axes{};
  double time{0.0};

  [[nodiscard]] Vec3 position() const { return {axes[0].x[0], axes[1].x[0], axes[2].x[0]}; }
  [[nodiscard]] Vec3 velocity() const { return {axes[0].x[1], axes[1].x[1], axes[2].x[1]}; }
  [[nodiscard]] Vec3 acceleration() const { return {axes[0].x[2], axes[1].x[2], axes[2].x[2]}; }
};

struct KalmanConfig {
  Mat3 Q{Vec3(1e-6, 1e-4, 1e-2).asDiagonal()};
  Mat2 R{Eigen::Vector2d(0.05 * 0.05, 0.05 * 0.05).asDiagonal()};
  Mat3 P0{Vec3(1e-4, 1e-4, 1e-2).asDiagonal()};

  /// Measurement noise sized to the two accelerometers' white-noise levels.
  static KalmanConfig for_sensors(double accel_std_1, double accel_std_2);
  void validate() const;
};

/// Both IMUs observe the acceleration component.
Eigen::Matrix<double, 2, 3> measurement_matrix();

/// Constant-acceleration transition for one axis.
Mat3 transition(double dt);

KalmanState make_kalman_state(const Vec3& position, const Vec3& velocity, const KalmanConfig& cfg,
                              double time = 0.0);

/// Specific force rotated into the world frame with gravity removed.
Vec3 world_accel(const ImuSample& imu, const AttitudeEstimate& att);

KalmanAxis kalman_predict(const KalmanAxis& axis, const KalmanConfig& cfg, double dt);
KalmanState kalman_predict(const KalmanState& state, const KalmanConfig& cfg, double dt);

/// Innovation update with the stacked pair of accelerometer readings for this axis.
/// Throws ConfigError if the innovation covariance is singular.
KalmanAxis kalman_update(const KalmanAxis& axis, const Eigen::Vector2d& z, const KalmanConfig& cfg);
KalmanState kalman_update(const KalmanState& state, const Vec3& accel_1, const Vec3& accel_2,
                          const KalmanConfig& cfg);

/// Double integration of a world-acceleration stream starting at rest at the origin.
/// Each sample is held over its step; position follows the trapezoid of velocity.
std::vector<Vec3> dead_reckon(std::span<const Vec3> accel, double dt);

/// Incremental form of dead_reckon, used alongside the live filter.
class DeadReckoner {
 public:
  DeadReckoner() = default;
  DeadReckoner(const Vec3& position, const Vec3& velocity) : p_(position), v_(velocity) {}

  void push(const Vec3& accel, double dt);
  [[nodiscard]] const Vec3& position() const { return p_; }
  [[nodiscard]] const Vec3& velocity() const { return v_; }

 private:
  Vec3 p_{Vec3::Zero()};
  Vec3 v_{Vec3::Zero()};
};

/// Navigation state the controller closes on.
struct EstimatedState {
  Vec3 position{Vec3::Zero()};
  Vec3 velocity{Vec3::Zero()};
  Quat attitude{Quat::Identity()};
  double time{0.0};

  [[nodiscard]] double yaw() const { return yaw_of(attitude); }
};

/// Default disagreement (rad) between the accelerometer vertical and the
/// gyro-propagated vertical beyond which the accelerometer is not trusted.
inline constexpr double kDefaultTiltGate = 0.035;

/// Full inertial pipeline: complementary attitude from IMU 1, per-axis Kalman
/// filter on both IMUs, and an uncorrected gyro-only dead-reckoning baseline.
///
/// Each IMU sample describes the step that just ended, so the filter first
/// absorbs it and then propagates across that step. While the airframe
/// accelerates the specific force no longer points along gravity; the tilt gate
/// then leaves the attitude on the gyro alone.
class PoseEstimator {
 public:
  PoseEstimator(const Vec3& position, const Quat& attitude, const ComplementaryGain& gain,
                const KalmanConfig& cfg, double time = 0.0, double tilt_gate = kDefaultTiltGate);

  void step(const ImuSample& imu1, const ImuSample& imu2, double dt);

  [[nodiscard]] EstimatedState estimate() const;
  [[nodiscard]] const AttitudeEstimate& attitude() const { return attitude_; }
  [[nodiscard]] const KalmanState& kalman() const { return kf_; }
  [[nodiscard]] const Vec3& dead_reckoning_position() const { return dr_.position(); }

 private:
  ComplementaryGain gain_;
  KalmanConfig cfg_;
  double tilt_gate_;
  AttitudeEstimate attitude_;
  AttitudeEstimate dr_attitude_;
  KalmanState kf_;
  DeadReckoner dr_;
};

}  // namespace uavinspect
