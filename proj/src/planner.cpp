#include "uavinspect/planner.hpp"

#include "uavinspect/errors.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace uavinspect {

namespace {

constexpr double kCoincident = 1e-9;

struct RingPoint {
  Vec2 xy;
  double s;  // arc-length position along the ring, counter-clockwise from the SW corner
};

std::array<Vec2, 4> ring_corners(const Rect& r) {
  return {Vec2{r.xmin, r.ymin}, Vec2{r.xmax, r.ymin}, Vec2{r.xmax, r.ymax}, Vec2{r.xmin, r.ymax}};
}

// Shortest route between two points that keeps out of the open interior of
// `block`, using the ring corners as the only via points.
std::vector<Vec2> route_around(const Vec2& a, const Vec2& b, const Rect& block, const Rect& ring) {
  if (!segment_crosses_interior(block, a, b)) return {};
  std::vector<Vec2> nodes{a, b};
  for (const auto& c : ring_corners(ring)) nodes.push_back(c);
  const std::size_t n = nodes.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<int> prev(n, -1);
  std::vector<bool> done(n, false);
  dist[0] = 0.0;
  for (std::size_t iter = 0; iter < n; ++iter) {
    int u = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (u < 0 || dist[i] < dist[static_cast<std::size_t>(u)])) u = static_cast<int>(i);
    }
    if (u < 0 || dist[static_cast<std::size_t>(u)] == inf) break;
    done[static_cast<std::size_t>(u)] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || segment_crosses_interior(block, nodes[static_cast<std::size_t>(u)], nodes[v])) continue;
      const double d = dist[static_cast<std::size_t>(u)] + (nodes[v] - nodes[static_cast<std::size_t>(u)]).norm();
      if (d < dist[v]) {
        dist[v] = d;
        prev[v] = u;
      }
    }
  }
  std::vector<Vec2> via;
  for (int v = prev[1]; v > 0; v = prev[static_cast<std::size_t>(v)]) via.push_back(nodes[static_cast<std::size_t>(v)]);
  std::reverse(via.begin(), via.end());
  return via;
}

}  // namespace

double WaypointPath::length_from(const Vec3& start) const {
  double len = 0.0;
  Vec3 prev = start;
  for (const auto& w : waypoints) {
    len += (w.position - prev).norm();
    prev = w.position;
  }
  return len;
}

void PlanParams::validate() const {
  if (!(standoff > 0.0)) throw ConfigError("plan.standoff must be > 0");
  if (!(buffer >= 0.0)) throw ConfigError("plan.buffer must be >= 0");
  // The ring has to clear the mask, or the building would register as an obstacle.
  if (!(standoff > buffer)) throw ConfigError("plan.standoff must exceed plan.buffer");
  if (!(layer_height > 0.0)) throw ConfigError("plan.layer_height must be > 0");
  if (!(first_layer_alt > 0.0)) throw ConfigError("plan.first_layer_alt must be > 0");
  if (!(waypoint_spacing > 0.0)) throw ConfigError("plan.waypoint_spacing must be > 0");
}

Rect flight_ring(const BuildingSpec& b, const PlanParams& p) { return b.footprint().inflated(p.standoff); }

Rect avoidance_polygon(const BuildingSpec& b, const PlanParams& p) { return b.footprint().inflated(p.buffer); }

std::vector<double> layer_altitudes(const BuildingSpec& b, const PlanParams& p) {
  std::vector<double> z;
  for (int k = 0;; ++k) {
    const double zk = p.first_layer_alt + k * p.layer_height;
    if (!(zk < b.height)) break;
    z.push_back(zk);
  }
  return z;
}

double facing_yaw(const BuildingSpec& b, const Vec2& position) {
  const double margin = std::min({0.5, b.length / 4.0, b.width / 4.0});
  const Vec2 target = b.footprint().inflated(-margin).clamp(position);
  const Vec2 d = target - position;
  return std::atan2(d.y(), d.x());
}

WaypointPath generate_perimeter_path(const BuildingSpec& b, const PlanParams& p, const Vec3& home) {
  b.validate();
  p.validate();
  const Rect ring = flight_ring(b, p);
  const auto corners = ring_corners(ring);

  // Discretize each edge, corners included.
  std::vector<RingPoint> pts;
  double s = 0.0;
  for (std::size_t e = 0; e < 4; ++e) {
    const Vec2 a = corners[e];
    const Vec2 c = corners[(e + 1) % 4];
    const double len = (c - a).norm();
    const int n = std::max(1, static_cast<int>(std::ceil(len / p.waypoint_spacing - 1e-9)));
    for (int k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / n;
      pts.push_back({a + t * (c - a), s + t * len});
    }
    s += len;
  }

  // Ring point nearest home; ties resolve to the earliest counter-clockwise position.
  const Vec2 h = home.head<2>();
  RingPoint start{corners[0], 0.0};
  double best = std::numeric_limits<double>::infinity();
  double s_edge = 0.0;
  for (std::size_t e = 0; e < 4; ++e) {
    const Vec2 a = corners[e];
    const Vec2 c = corners[(e + 1) % 4];
    const double len = (c - a).norm();
    const double t = std::clamp((h - a).dot(c - a) / (len * len), 0.0, 1.0);
    const Vec2 q = a + t * (c - a);
    const double d = (q - h).norm();
    if (d < best - 1e-12) {
      best = d;
      start = {q, s_edge + t * len};
    }
    s_edge += len;
  }
  const double perimeter = s;
  if (start.s >= perimeter - kCoincident) start.s = 0.0;

  auto it = std::find_if(pts.begin(), pts.end(), [&](const RingPoint& r) {
    return (r.xy - start.xy).norm() < kCoincident;
  });
  if (it == pts.end()) {
    it = std::upper_bound(pts.begin(), pts.end(), start.s,
                          [](double v, const RingPoint& r) { return v < r.s; });
    it = pts.insert(it, start);
  }
  std::rotate(pts.begin(), it, pts.end());
  pts.push_back(pts.front());

  WaypointPath path;
  const auto layers = layer_altitudes(b, p);
  for (std::size_t k = 0; k < layers.size(); ++k) {
    for (const auto& rp : pts) {
      path.waypoints.push_back({Vec3{rp.xy.x(), rp.xy.y(), layers[k]}, facing_yaw(b, rp.xy),
                                static_cast<int>(k)});
    }
  }

  const Vec2 last = path.empty() ? h : path.waypoints.back().position.head<2>();
  const Vec2 to_home = h - last;
  const double home_yaw = to_home.norm() > 1e-9 ? std::atan2(to_home.y(), to_home.x())
                          : path.empty()        ? 0.0
                                                : path.waypoints.back().yaw;
  path.waypoints.push_back({home, home_yaw, kTransitLayer});
  return path;
}

WaypointPath plan_return_path(const Vec3& from, const Vec3& target, double target_yaw) {
  WaypointPath path;
  const Vec3 climb{from.x(), from.y(), target.z()};
  if ((climb - from).norm() > kCoincident && (target - climb).norm() > kCoincident) {
    path.waypoints.push_back({climb, target_yaw, kTransitLayer});
  }
  path.waypoints.push_back({target, target_yaw, kTransitLayer});
  return path;
}

WaypointPath plan_return_path(const Vec3& from, const Vec3& target, double target_yaw,
                              const BuildingSpec& b, const PlanParams& p) {
  const auto via = route_around(from.head<2>(), target.head<2>(), avoidance_polygon(b, p), flight_ring(b, p));
  if (via.empty()) return plan_return_path(from, target, target_yaw);

  WaypointPath path;
  const Vec3 climb{from.x(), from.y(), target.z()};
  if ((climb - from).norm() > kCoincident) path.waypoints.push_back({climb, target_yaw, kTransitLayer});
  for (const auto& v : via) path.waypoints.push_back({Vec3{v.x(), v.y(), target.z()}, target_yaw, kTransitLayer});
  path.waypoints.push_back({target, target_yaw, kTransitLayer});
  return path;
}

WaypointPath plan_home_path(const Vec3& from, const Vec3& home, const BuildingSpec& b, const PlanParams& p) {
  std::vector<Vec3> pts;
  for (const auto& v : route_around(from.head<2>(), home.head<2>(), avoidance_polygon(b, p), flight_ring(b, p))) {
    pts.push_back({v.x(), v.y(), from.z()});
  }
  const Vec3 above{home.x(), home.y(), from.z()};
  if ((above - from).norm() > kCoincident && (above - home).norm() > kCoincident) pts.push_back(above);
  pts.push_back(home);

  WaypointPath path;
  Vec3 prev = from;
  double yaw = facing_yaw(b, from.head<2>());
  for (const auto& q : pts) {
    const Vec2 d = (q - prev).head<2>();
    if (d.norm() > 1e-6) yaw = std::atan2(d.y(), d.x());
    path.waypoints.push_back({q, yaw, kTransitLayer});
    prev = q;
  }
  return path;
}

}  // namespace uavinspect
