#include "uavinspect/world.hpp"

#include "uavinspect/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace uavinspect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinRange = 1e-3;

// Slab test against [lo, hi]; returns entry distance (0 if the origin is inside).
std::optional<double> ray_box(const Vec3& o, const Vec3& d, const Vec3& lo, const Vec3& hi) {
  double t0 = 0.0;
  double t1 = kInf;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-15) {
      if (o[i] < lo[i] || o[i] > hi[i]) return std::nullopt;
      continue;
    }
    double ta = (lo[i] - o[i]) / d[i];
    double tb = (hi[i] - o[i]) / d[i];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  return t0;
}

std::optional<double> ray_cylinder(const Vec3& o, const Vec3& d, const Obstacle& c) {
  double best = kInf;
  const double ox = o.x() - c.center.x();
  const double oy = o.y() - c.center.y();
  const double a = d.x() * d.x() + d.y() * d.y();
  const double r2 = c.radius * c.radius;
  const bool inside_disk = ox * ox + oy * oy <= r2;
  if (inside_disk && o.z() >= 0.0 && o.z() <= c.height) return 0.0;

  if (a > 1e-15) {
    const double b = 2.0 * (ox * d.x() + oy * d.y());
    const double cc = ox * ox + oy * oy - r2;
    const double disc = b * b - 4.0 * a * cc;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
        if (t < 0.0) continue;
        const double z = o.z() + t * d.z();
        if (z >= 0.0 && z <= c.height) {
          best = std::min(best, t);
          break;
        }
      }
    }
  }
  // Top cap.
  if (std::abs(d.z()) > 1e-15) {
    const double t = (c.height - o.z()) / d.z();
    if (t >= 0.0) {
      const double px = ox + t * d.x();
      const double py = oy + t * d.y();
      if (px * px + py * py <= r2) best = std::min(best, t);
    }
  }
  if (best == kInf) return std::nullopt;
  return best;
}

}  // namespace

bool segment_crosses_interior(const Rect& r, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-d.x(), d.x(), -d.y(), d.y()};
  const double q[4] = {a.x() - r.xmin, r.xmax - a.x(), a.y() - r.ymin, r.ymax - a.y()};
  for (int i = 0; i < 4; ++i) {
    if (std::abs(p[i]) < 1e-15) {
      if (q[i] <= 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 >= t1) return false;
  }
  // A strictly positive-length overlap means the open interior is crossed,
  // unless the clipped piece runs along the boundary.
  const Vec2 mid = a + 0.5 * (t0 + t1) * d;
  return t1 - t0 > 1e-12 && r.strictly_contains(mid);
}

void BuildingSpec::validate() const {
  if (!(length > 0.0) || !(width > 0.0) || !(height > 0.0)) {
    throw ConfigError("building dimensions must be positive");
  }
}

std::string_view to_string(Face f) {
  switch (f) {
    case Face::north: return "north";
    case Face::south: return "south";
    case Face::east: return "east";
    case Face::west: return "west";
  }
  return "south";
}

Face face_from_string(std::string_view s) {
  if (s == "north") return Face::north;
  if (s == "south") return Face::south;
  if (s == "east") return Face::east;
  if (s == "west") return Face::west;
  throw ConfigError("unknown facade '" + std::string(s) + "'");
}

void CameraModel::validate() const {
  if (!(hfov > 0.0 && hfov < kPi) || !(vfov > 0.0 && vfov < kPi)) {
    throw ConfigError("camera fov must be in (0, pi)");
  }
  if (!(range > 0.0)) throw ConfigError("camera range must be > 0");
  if (!(max_incidence > 0.0 && max_incidence <= kPi / 2)) throw ConfigError("camera max_incidence must be in (0, pi/2]");
}

Scene::Scene(BuildingSpec building, std::vector<FaultDecal> decals, std::vector<Obstacle> obstacles)
    : building_(building), decals_(std::move(decals)), obstacles_(std::move(obstacles)) {
  building_.validate();
  std::set<int> ids;
  for (const auto& d : decals_) {
    if (!ids.insert(d.id).second) throw ConfigError("duplicate decal id " + std::to_string(d.id));
    const double len = face_length(d.face);
    if (!(d.extent_uv.x() > 0.0) || !(d.extent_uv.y() > 0.0) ||
        d.center_uv.x() - d.extent_uv.x() < 0.0 || d.center_uv.x() + d.extent_uv.x() > len ||
        d.center_uv.y() - d.extent_uv.y() < 0.0 ||
        d.center_uv.y() + d.extent_uv.y() > building_.height) {
      throw ConfigError("decal " + std::to_string(d.id) + " does not lie within its facade");
    }
  }
  ids.clear();
  const Rect fp = building_.footprint();
  for (const auto& o : obstacles_) {
    if (!ids.insert(o.id).second) throw ConfigError("duplicate obstacle id " + std::to_string(o.id));
    if (!(o.radius > 0.0) || !(o.height > 0.0)) {
      throw ConfigError("obstacle " + std::to_string(o.id) + " needs positive radius and height");
    }
    if (fp.distance_to(o.center) <= o.radius) {
      throw ConfigError("obstacle " + std::to_string(o.id) + " intersects the building");
    }
  }
}

std::optional<RayHit> Scene::cast_ray(const Vec3& origin, const Vec3& dir, double max_range) const {
  const Rect fp = building_.footprint();
  double best = kInf;
  if (auto t = ray_box(origin, dir, {fp.xmin, fp.ymin, 0.0}, {fp.xmax, fp.ymax, building_.height})) {
    best = *t;
  }
  for (const auto& o : obstacles_) {
    if (auto t = ray_cylinder(origin, dir, o)) best = std::min(best, *t);
  }
  if (best > max_range) return std::nullopt;
  return RayHit{best, origin + best * dir};
}

Vec3 Scene::face_normal(Face f) {
  switch (f) {
    case Face::north: return Vec3::UnitY();
    case Face::south: return -Vec3::UnitY();
    case Face::east: return Vec3::UnitX();
    case Face::west: return -Vec3::UnitX();
  }
  return Vec3::Zero();
}

double Scene::face_length(Face f) const {
  return (f == Face::north || f == Face::south) ? building_.length : building_.width;
}

Vec3 Scene::facade_point(Face f, const Vec2& uv) const {
  const Rect fp = building_.footprint();
  switch (f) {
    case Face::south: return {fp.xmin + uv.x(), fp.ymin, uv.y()};
    case Face::north: return {fp.xmin + uv.x(), fp.ymax, uv.y()};
    case Face::west: return {fp.xmin, fp.ymin + uv.x(), uv.y()};
    case Face::east: return {fp.xmax, fp.ymin + uv.x(), uv.y()};
  }
  return Vec3::Zero();
}

Vec3 Scene::decal_center(const FaultDecal& d) const { return facade_point(d.face, d.center_uv); }

double Scene::obstacle_clearance(const Vec3& p) const {
  double best = kInf;
  for (const auto& o : obstacles_) {
    best = std::min(best, (p.head<2>() - o.center).norm() - o.radius);
  }
  return best;
}

LaserScan simulate_scan(const Scene& scene, const TrueState& pose, const LaserScanConfig& cfg) {
  LaserScan scan;
  scan.range_max = cfg.range_max;
  scan.ranges.assign(static_cast<std::size_t>(std::max(cfg.n_bins, 1)), cfg.range_max);
  const double yaw = pose.yaw();
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const double a = yaw + scan.angle(i);
    const Vec3 dir{std::cos(a), std::sin(a), 0.0};
    if (auto hit = scene.cast_ray(pose.position, dir, cfg.range_max)) {
      scan.ranges[i] = std::clamp(hit->distance, kMinRange, cfg.range_max);
    }
  }
  return scan;
}

bool point_visible(const Scene& scene, const Vec3& camera_pos, double yaw, const CameraModel& cam,
                   const Vec3& point, const Vec3& normal) {
  const Vec3 d = point - camera_pos;
  const double dist = d.norm();
  if (dist <= 1e-9 || dist > cam.range) return false;
  if (normal.dot(d) >= 0.0) return false;
  if (-normal.dot(d) / dist < std::cos(cam.max_incidence) - 1e-12) return false;
  const Vec3 fwd{std::cos(yaw), std::sin(yaw), 0.0};
  const Vec3 left{-std::sin(yaw), std::cos(yaw), 0.0};
  const double xf = d.dot(fwd);
  if (xf <= 0.0) return false;
  if (std::abs(std::atan2(d.dot(left), xf)) > cam.hfov / 2) return false;
  if (std::abs(std::atan2(d.z(), xf)) > cam.vfov / 2) return false;
  const auto hit = scene.cast_ray(camera_pos, d / dist, dist);
  return !hit || hit->distance >= dist - 1e-6;
}

std::vector<int> visible_decals(const Scene& scene, const TrueState& pose, const CameraModel& cam) {
  std::vector<int> ids;
  const double yaw = pose.yaw();
  for (const auto& d : scene.decals()) {
    if (point_visible(scene, pose.position, yaw, cam, scene.decal_center(d), Scene::face_normal(d.face))) {
      ids.push_back(d.id);
    }
  }
  return ids;
}

}  // namespace uavinspect
