#pragma once

#include "uavinspect/geometry.hpp"
#include "uavinspect/world.hpp"

#include <vector>

namespace uavinspect {

/// Layer index used for waypoints that are not part of a perimeter ring.
inline constexpr int kTransitLayer = -1;

struct Waypoint {
  Vec3 position{Vec3::Zero()};
  double yaw{0.0};
  int layer{kTransitLayer};
};

struct WaypointPath {
  std::vector<Waypoint> waypoints;

  [[nodiscard]] bool empty() const { return waypoints.empty(); }
  [[nodiscard]] std::size_t size() const { return waypoints.size(); }
  /// Euclidean length from `start` through every waypoint.
  [[nodiscard]] double length_from(const Vec3& start) const;
};

struct PlanParams {
  double standoff{3.0};
  double buffer{1.0};
  double layer_height{3.0};
  double first_layer_alt{1.5};
  double waypoint_spacing{2.0};

  void validate() const;
};

/// Horizontal flight ring: the footprint offset outward by the standoff.
Rect flight_ring(const BuildingSpec& b, const PlanParams& p);

/// Footprint inflated by the buffer; laser returns inside it are the building itself.
Rect avoidance_polygon(const BuildingSpec& b, const PlanParams& p);

/// Layer altitudes first_layer_alt + k * layer_height below the roof.
std::vector<double> layer_altitudes(const BuildingSpec& b, const PlanParams& p);

/// Yaw that points a camera at `position` onto the building.
double facing_yaw(const BuildingSpec& b, const Vec2& position);

/// Layered, counter-clockwise, wall-facing perimeter path starting at the ring
/// point nearest `home`, ending with a return to `home`.
WaypointPath generate_perimeter_path(const BuildingSpec& b, const PlanParams& p, const Vec3& home);

/// Climb to the target altitude, then fly straight to the target.
WaypointPath plan_return_path(const Vec3& from, const Vec3& target, double target_yaw);

/// As above, but detours over flight-ring corners whenever the straight leg
/// would cut through the avoidance polygon.
WaypointPath plan_return_path(const Vec3& from, const Vec3& target, double target_yaw,
                              const BuildingSpec& b, const PlanParams& p);

/// Fly at the current altitude to above `home` (detouring around the building
/// if needed), then descend. Each leg faces its direction of travel.
WaypointPath plan_home_path(const Vec3& from, const Vec3& home, const BuildingSpec& b, const PlanParams& p);

}  // namespace uavinspect
