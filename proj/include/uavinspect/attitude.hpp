#pragma once

#include "uavinspect/geometry.hpp"
#include "uavinspect/sensors.hpp"

#include <limits>
#include <optional>

namespace uavinspect {

struct AttitudeEstimate {
  double roll{0.0};
  double pitch{0.0};
  double yaw{0.0};
  Quat quat{Quat::Identity()};
  double time{0.0};

  [[nodiscard]] Euler euler() const { return {roll, pitch, yaw}; }
  static AttitudeEstimate from_euler(const Euler& e, double time = 0.0);
  static AttitudeEstimate from_quat(const Quat& q, double time = 0.0);
};

/// Blend weight given to the gyro-propagated angles.
class ComplementaryGain {
 public:
  ComplementaryGain() = default;
  explicit ComplementaryGain(double alpha);
  [[nodiscard]] double alpha() const { return alpha_; }

 private:
  double alpha_{0.98};
};

struct RollPitch {
  double roll{0.0};
  double pitch{0.0};
};

/// Roll/pitch from the specific-force direction. Empty when gravity is unobservable
/// (|accel| <= 0.1 g).
std::optional<RollPitch> accel_roll_pitch(const Vec3& accel);

/// Tilt-compensated magnetic heading. Empty when the levelled horizontal field vanishes.
std::optional<double> mag_yaw(const Vec3& mag, double roll, double pitch);

/// Z-Y-X Euler angle rates for a body angular rate.
Vec3 euler_rates(const Vec3& gyro, const Euler& e);

/// One complementary-filter step: integrate the gyro, then pull toward the
/// accelerometer/magnetometer attitude with weight (1 - alpha). Angles whose
/// reference is unavailable this step are taken from the gyro alone.
///
/// `tilt_gate` (rad) rejects the accelerometer reference when the measured
/// specific force points further than this from the gyro-propagated vertical,
/// which is what happens while the airframe accelerates. The default never rejects.
AttitudeEstimate complementary_step(const AttitudeEstimate& prev, const ImuSample& imu,
                                    const ComplementaryGain& gain, double dt,
                                    double tilt_gate = std::numeric_limits<double>::infinity());

}  // namespace uavinspect
