#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavinspect {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

inline constexpr double kGravity = 9.81;
inline constexpr double kPi = std::numbers::pi;

/// Gravity vector in the world frame (z up).
inline Vec3 gravity_world() { return {0.0, 0.0, -kGravity}; }

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

/// Roll, pitch, yaw under the intrinsic Z-Y-X convention.
struct Euler {
  double roll{0.0};
  double pitch{0.0};
  double yaw{0.0};
};

/// q = Rz(yaw) * Ry(pitch) * Rx(roll); maps body vectors into the world frame.
inline Quat quat_from_euler(const Euler& e) {
  const Quat q = Eigen::AngleAxisd(e.yaw, Vec3::UnitZ()) *
                 Eigen::AngleAxisd(e.pitch, Vec3::UnitY()) *
                 Eigen::AngleAxisd(e.roll, Vec3::UnitX());
  return q.normalized();
}

inline Euler euler_from_quat(const Quat& q_in) {
  const Quat q = q_in.normalized();
  const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
  Euler e;
  e.roll = std::atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y));
  const double s = std::clamp(2.0 * (w * y - z * x), -1.0, 1.0);
  e.pitch = std::asin(s);
  e.yaw = std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
  return e;
}

inline double yaw_of(const Quat& q) { return euler_from_quat(q).yaw; }

inline Quat yaw_quat(double yaw) { return Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ())); }

/// Heading-frame unit vector for a yaw angle.
inline Vec2 heading(double yaw) { return {std::cos(yaw), std::sin(yaw)}; }

/// Axis-aligned rectangle in the horizontal plane.
struct Rect {
  double xmin{0.0};
  double xmax{0.0};
  double ymin{0.0};
  double ymax{0.0};

  [[nodiscard]] bool contains(const Vec2& p) const {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
  [[nodiscard]] bool strictly_contains(const Vec2& p) const {
    return p.x() > xmin && p.x() < xmax && p.y() > ymin && p.y() < ymax;
  }
  [[nodiscard]] Rect inflated(double d) const { return {xmin - d, xmax + d, ymin - d, ymax + d}; }
  [[nodiscard]] double distance_to(const Vec2& p) const {
    const double dx = std::max({xmin - p.x(), 0.0, p.x() - xmax});
    const double dy = std::max({ymin - p.y(), 0.0, p.y() - ymax});
    return std::hypot(dx, dy);
  }
  [[nodiscard]] Vec2 clamp(const Vec2& p) const {
    return {std::clamp(p.x(), xmin, xmax), std::clamp(p.y(), ymin, ymax)};
  }
};

/// True when the open interior of `r` meets the segment a-b (Liang-Barsky clip).
bool segment_crosses_interior(const Rect& r, const Vec2& a, const Vec2& b);

}  // namespace uavinspect
