#include "uavinspect/attitude.hpp"

#include "uavinspect/errors.hpp"

namespace uavinspect {

namespace {

// The endpoints return one input untouched so alpha = 0 and alpha = 1 are exact.
double blend_angle(double gyro, double meas, double alpha) {
  if (alpha == 1.0) return gyro;
  if (alpha == 0.0) return wrap_angle(meas);
  return wrap_angle(gyro + (1.0 - alpha) * wrap_angle(meas - gyro));
}

double blend_linear(double gyro, double meas, double alpha) {
  if (alpha == 1.0) return gyro;
  if (alpha == 0.0) return meas;
  return gyro + (1.0 - alpha) * (meas - gyro);
}

}  // namespace

AttitudeEstimate AttitudeEstimate::from_euler(const Euler& e, double time) {
  AttitudeEstimate a;
  a.roll = wrap_angle(e.roll);
  a.pitch = std::clamp(e.pitch, -kPi / 2, kPi / 2);
  a.yaw = wrap_angle(e.yaw);
  a.quat = quat_from_euler({a.roll, a.pitch, a.yaw});
  a.time = time;
  return a;
}

AttitudeEstimate AttitudeEstimate::from_quat(const Quat& q, double time) {
  return from_euler(euler_from_quat(q), time);
}

ComplementaryGain::ComplementaryGain(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("complementary alpha must be in [0, 1]");
}

std::optional<RollPitch> accel_roll_pitch(const Vec3& a) {
  if (a.norm() <= 0.1 * kGravity) return std::nullopt;
  return RollPitch{std::atan2(a.y(), a.z()), std::atan2(-a.x(), std::hypot(a.y(), a.z()))};
}

std::optional<double> mag_yaw(const Vec3& mag, double roll, double pitch) {
  // Rotate the body-frame field into the heading frame: m_h = Ry(pitch) Rx(roll) m_b.
  const Quat level = Eigen::AngleAxisd(pitch, Vec3::UnitY()) * Eigen::AngleAxisd(roll, Vec3::UnitX());
  const Vec3 m = level * mag;
  if (std::hypot(m.x(), m.y()) < 1e-6) return std::nullopt;
  return std::atan2(-m.y(), m.x());
}

Vec3 euler_rates(const Vec3& w, const Euler& e) {
  const double sr = std::sin(e.roll), cr = std::cos(e.roll);
  const double cp = std::cos(e.pitch), tp = std::tan(e.pitch);
  return {w.x() + sr * tp * w.y() + cr * tp * w.z(),
          cr * w.y() - sr * w.z(),
          (sr * w.y() + cr * w.z()) / cp};
}

AttitudeEstimate complementary_step(const AttitudeEstimate& prev, const ImuSample& imu,
                                    const ComplementaryGain& gain, double dt, double tilt_gate) {
  // Exact attitude increment for a body rate held over the step; to first
  // order this is prev Euler + euler_rates * dt.
  const Vec3 dtheta = imu.gyro * dt;
  const double angle = dtheta.norm();
  Quat dq = Quat::Identity();
  if (angle > 0.0) dq = Quat(Eigen::AngleAxisd(angle, dtheta / angle));
  Euler g = euler_from_quat((prev.quat * dq).normalized());

  const double alpha = gain.alpha();
  Euler out = g;
  auto rp = accel_roll_pitch(imu.accel);
  if (rp && std::isfinite(tilt_gate)) {
    const Vec3 up_body = quat_from_euler(g).conjugate() * Vec3::UnitZ();
    const double c = std::clamp(up_body.dot(imu.accel.normalized()), -1.0, 1.0);
    if (std::acos(c) > tilt_gate) rp.reset();
  }
  if (rp) {
    out.roll = blend_angle(g.roll, rp->roll, alpha);
    out.pitch = blend_linear(g.pitch, rp->pitch, alpha);
    // Tilt-compensate with the measured tilt so alpha = 0 reproduces the reference exactly.
    if (const auto yaw = mag_yaw(imu.mag, rp->roll, rp->pitch)) {
      out.yaw = blend_angle(g.yaw, *yaw, alpha);
    }
  } else if (const auto yaw = mag_yaw(imu.mag, g.roll, g.pitch)) {
    out.yaw = blend_angle(g.yaw, *yaw, alpha);
  }
  return AttitudeEstimate::from_euler(out, prev.time + dt);
}

}  // namespace uavinspect
