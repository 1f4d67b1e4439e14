#pragma once

#include "uavinspect/geometry.hpp"
#include "uavinspect/vehicle.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavinspect {

struct BuildingSpec {
  double length{20.0};  ///< m, along x
  double width{10.0};   ///< m, along y
  double height{9.0};   ///< m, along z
  Vec2 center{Vec2::Zero()};

  void validate() const;
  [[nodiscard]] Rect footprint() const {
    return {center.x() - length / 2, center.x() + length / 2, center.y() - width / 2,
            center.y() + width / 2};
  }
};

enum class Face { north, south, east, west };

std::string_view to_string(Face f);
Face face_from_string(std::string_view s);

/// Rectangular crack marker on a facade.
///
/// `center_uv.x()` runs horizontally along the facade from its west end
/// (north/south faces) or its south end (east/west faces); `center_uv.y()` is
/// height above ground. `extent_uv` holds half-widths.
struct FaultDecal {
  int id{0};
  Face face{Face::south};
  Vec2 center_uv{Vec2::Zero()};
  Vec2 extent_uv{0.25, 0.25};
};

/// Vertical cylinder standing on the ground.
struct Obstacle {
  int id{0};
  Vec2 center{Vec2::Zero()};
  double radius{0.5};
  double height{10.0};
};

struct LaserScanConfig {
  int n_bins{271};
  double range_max{20.0};
};

struct LaserScan {
  double angle_min{-3.0 * kPi / 4.0};
  double angle_max{3.0 * kPi / 4.0};
  double range_max{20.0};
  std::vector<double> ranges;

  [[nodiscard]] std::size_t size() const { return ranges.size(); }
  /// Body-frame bearing of bin i; 0 is the drone front, positive to the left.
  [[nodiscard]] double angle(std::size_t i) const {
    if (ranges.size() < 2) return 0.0;
    return angle_min + (angle_max - angle_min) * static_cast<double>(i) /
                           static_cast<double>(ranges.size() - 1);
  }
};

/// Gimbal-levelled pinhole camera looking along the body heading.
struct CameraModel {
  double hfov{deg2rad(90.0)};
  double vfov{deg2rad(60.0)};
  double range{15.0};
  double max_incidence{deg2rad(60.0)};  ///< off-normal viewing limit; flat cracks vanish at grazing angles

  void validate() const;
};

struct RayHit {
  double distance{0.0};
  Vec3 point{Vec3::Zero()};
};

/// Static scene: one axis-aligned building, its fault decals and free-standing obstacles.
class Scene {
 public:
  Scene() = default;
  Scene(BuildingSpec building, std::vector<FaultDecal> decals, std::vector<Obstacle> obstacles);

  [[nodiscard]] const BuildingSpec& building() const { return building_; }
  [[nodiscard]] const std::vector<FaultDecal>& decals() const { return decals_; }
  [[nodiscard]] const std::vector<Obstacle>& obstacles() const { return obstacles_; }

  /// Nearest surface hit along a unit direction, building and obstacles alike.
  [[nodiscard]] std::optional<RayHit> cast_ray(const Vec3& origin, const Vec3& dir,
                                               double max_range) const;

  [[nodiscard]] Vec3 decal_center(const FaultDecal& d) const;
  [[nodiscard]] static Vec3 face_normal(Face f);
  /// Horizontal length of a facade.
  [[nodiscard]] double face_length(Face f) const;
  /// World point on a facade from (u, v) facade coordinates.
  [[nodiscard]] Vec3 facade_point(Face f, const Vec2& uv) const;

  /// Shortest horizontal distance from a point to any obstacle surface (infinity if none).
  [[nodiscard]] double obstacle_clearance(const Vec3& p) const;

 private:
  BuildingSpec building_;
  std::vector<FaultDecal> decals_;
  std::vector<Obstacle> obstacles_;
};

/// Planar laser scan at the drone's altitude over [-135 deg, +135 deg] in body frame.
LaserScan simulate_scan(const Scene& scene, const TrueState& pose, const LaserScanConfig& cfg = {});

/// True when a facade point with the given outward normal is inside the frustum,
/// front-facing and unoccluded.
bool point_visible(const Scene& scene, const Vec3& camera_pos, double yaw, const CameraModel& cam,
                   const Vec3& point, const Vec3& normal);

/// Ids of decals whose centers the camera sees from this pose.
std::vector<int> visible_decals(const Scene& scene, const TrueState& pose, const CameraModel& cam);

}  // namespace uavinspect
