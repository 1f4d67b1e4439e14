#include "uavinspect/mission.hpp"

#include "uavinspect/errors.hpp"

#include <cstdio>
#include <limits>

namespace uavinspect {

std::string phase_name(const MissionPhase& p) {
  switch (p.kind) {
    case PhaseKind::idle: return "idle";
    case PhaseKind::inspecting: return "inspecting";
    case PhaseKind::returning_home: return "returning_home";
    case PhaseKind::detecting: return "detecting:" + std::to_string(p.target);
    case PhaseKind::holding: return "holding:" + std::to_string(p.target);
    case PhaseKind::done: return "done";
  }
  return "unknown";
}

bool legal_transition(const MissionPhase& from, const MissionPhase& to) {
  using K = PhaseKind;
  switch (from.kind) {
    case K::idle: return to.kind == K::inspecting;
    case K::inspecting: return to.kind == K::returning_home;
    case K::returning_home:
      return (to.kind == K::detecting && to.target == 0) || to.kind == K::done;
    case K::detecting:
      return (to.kind == K::holding && to.target == from.target) || to.kind == K::done;
    case K::holding: return to.kind == K::detecting && to.target == from.target + 1;
    case K::done: return false;
  }
  return false;
}

void PhaseRecorder::enter(const MissionPhase& next, double time) {
  if (!legal_transition(current_, next)) {
    throw std::logic_error("illegal phase transition " + phase_name(current_) + " -> " + phase_name(next));
  }
  log_.push_back({time, current_, next});
  current_ = next;
}

void MissionParams::validate() const {
  if (!(dt > 0.0)) throw ConfigError("mission.dt must be > 0");
  if (!(arrival_tol > 0.0)) throw ConfigError("mission.arrival_tol must be > 0");
  if (!(hold_time >= 0.0)) throw ConfigError("mission.hold_time must be >= 0");
  if (!(watchdog > 0.0)) throw ConfigError("mission.watchdog must be > 0");
  if (!(capture_interval > 0.0)) throw ConfigError("mission.capture_interval must be > 0");
  if (!(merge_radius >= 0.0)) throw ConfigError("mission.merge_radius must be >= 0");
  if (trajectory_stride < 1) throw ConfigError("mission.trajectory_stride must be >= 1");
}

KalmanConfig MissionConfig::effective_kalman() const {
  if (!kalman_r_from_noise) return kalman;
  // A perfect accelerometer would make the innovation covariance singular.
  constexpr double floor = 1e-3;
  KalmanConfig k = KalmanConfig::for_sensors(std::max(imu1.accel_noise_std, floor),
                                             std::max(imu2.accel_noise_std, floor));
  k.Q = kalman.Q;
  k.P0 = kalman.P0;
  return k;
}

void MissionConfig::validate() const {
  scene.building().validate();
  plan.validate();
  vehicle.validate();
  pid.validate();
  avoidance_pid.validate();
  if (!(tracking.yaw_gain >= 0.0)) throw ConfigError("tracking.yaw_gain must be >= 0");
  if (!(avoidance.d_engage > 0.0)) throw ConfigError("avoidance.d_engage must be > 0");
  imu1.validate();
  imu2.validate();
  (void)ComplementaryGain(complementary_alpha);
  if (!(tilt_gate >= 0.0)) throw ConfigError("tilt_gate must be >= 0");
  effective_kalman().validate();
  classifier.validate();
  camera.validate();
  if (laser.n_bins < 2 || !(laser.range_max > 0.0)) throw ConfigError("laser needs >= 2 bins and range_max > 0");
  mission.validate();
  if (scene.building().footprint().inflated(plan.buffer).contains(home.head<2>())) {
    throw ConfigError("home must lie outside the building buffer");
  }
}

namespace {

std::vector<Waypoint> waypoints_of(const WaypointPath& p) { return p.waypoints; }

std::vector<Fault> faults_from(std::span<const CaptureRecord> captures, double merge_radius) {
  std::vector<Fault> out;
  int id = 0;
  for (const auto& f : filter_fault_coordinates(captures, merge_radius)) {
    out.push_back({id++, f.image_id, f.time, f.position, f.yaw});
  }
  return out;
}

}  // namespace

MissionResult run_mission(const MissionConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  const Scene& scene = cfg.scene;
  const BuildingSpec& b = scene.building();
  const MissionParams& mp = cfg.mission;
  const double dt = mp.dt;
  const double eps = 1e-9;

  MissionResult out;
  out.plan = generate_perimeter_path(b, cfg.plan, cfg.home);
  const Rect mask = avoidance_polygon(b, cfg.plan);
  const Rect footprint = b.footprint();

  TrackingParams tracking = cfg.tracking;
  tracking.v_max = cfg.vehicle.v_max;
  tracking.yaw_rate_max = cfg.vehicle.yaw_rate_max;
  AvoidanceParams avoid_params = cfg.avoidance;
  avoid_params.v_max = cfg.vehicle.v_max;

  TrueState truth;
  truth.position = cfg.home;
  truth.attitude = yaw_quat(cfg.home_yaw);
  PoseEstimator estimator(cfg.home, truth.attitude, ComplementaryGain(cfg.complementary_alpha),
                          cfg.effective_kalman(), 0.0, cfg.tilt_gate);
  ImuSensor imu1(ImuId::first, cfg.imu1);
  ImuSensor imu2(ImuId::second, cfg.imu2);
  Classifier classifier(cfg.classifier);

  PhaseRecorder phases;
  std::vector<Waypoint> route(out.plan.waypoints.begin(), out.plan.waypoints.end() - 1);
  const Waypoint home_wp = out.plan.waypoints.back();
  std::size_t wp_idx = 0;
  double wp_start = 0.0;
  double leg_start = 0.0;
  double hold_start = 0.0;
  std::optional<double> last_capture;
  PidState track_pid;
  AvoidanceState avoid_state;
  std::vector<Fault>& faults = out.report.faults;
  MissionReport& rep = out.report;
  rep.min_obstacle_clearance = std::numeric_limits<double>::infinity();
  rep.min_building_clearance = std::numeric_limits<double>::infinity();
  int n_faults = 0;

  phases.enter({PhaseKind::inspecting, -1}, 0.0);

  auto begin_route = [&](std::vector<Waypoint> r, double t) {
    route = std::move(r);
    wp_idx = 0;
    wp_start = t;
    track_pid = {};
  };

  for (long long n = 0;; ++n) {
    const double t = static_cast<double>(n) * dt;
    truth.time = t;
    if (n > 0) estimator.step(imu1.sample(truth), imu2.sample(truth), dt);
    const EstimatedState est = estimator.estimate();

    rep.min_obstacle_clearance = std::min(rep.min_obstacle_clearance, scene.obstacle_clearance(truth.position));
    rep.min_building_clearance = std::min(rep.min_building_clearance, footprint.distance_to(truth.position.head<2>()));
    rep.max_kalman_error = std::max(rep.max_kalman_error, (est.position - truth.position).norm());
    rep.max_dead_reckoning_error =
        std::max(rep.max_dead_reckoning_error, (estimator.dead_reckoning_position() - truth.position).norm());

    MissionPhase phase = phases.current();
    if (phase.kind == PhaseKind::inspecting || phase.kind == PhaseKind::returning_home) {
      if (!last_capture || capture_tick(t, *last_capture, mp.capture_interval)) {
        CaptureRecord rec;
        rec.image_id = image_id_for(static_cast<int>(out.captures.size()));
        rec.time = t;
        rec.est_position = est.position;
        rec.est_quat = est.attitude;
        rec.visible_decals = visible_decals(scene, truth, cfg.camera);
        rec.label = classifier.classify(rec.visible_decals);
        out.captures.push_back(std::move(rec));
        last_capture = t;
      }
    }

    // Waypoint sequencing; a finished route hands over to the next phase in the same step.
    bool finished = false;
    for (int guard = 0; guard < 4 && !finished; ++guard) {
      phase = phases.current();
      if (phase.kind == PhaseKind::holding) {
        if (t - hold_start < mp.hold_time - eps) break;
        rep.legs.push_back({phase.target, leg_start, t, truth.position, truth.yaw()});
        rep.detection_durations.push_back(t - leg_start);
        const int next = phase.target + 1;
        phases.enter({PhaseKind::detecting, next}, t);
        leg_start = t;
        if (next < n_faults) {
          const Fault& f = faults[static_cast<std::size_t>(next)];
          begin_route(waypoints_of(plan_return_path(est.position, f.position, f.yaw, b, cfg.plan)), t);
        } else {
          begin_route(waypoints_of(plan_home_path(est.position, cfg.home, b, cfg.plan)), t);
        }
        continue;
      }
      if (wp_idx < route.size() && (route[wp_idx].position - est.position).norm() < mp.arrival_tol) {
        ++wp_idx;
        wp_start = t;
        track_pid = {};
      }
      if (wp_idx < route.size()) break;

      switch (phase.kind) {
        case PhaseKind::inspecting:
          phases.enter({PhaseKind::returning_home, -1}, t);
          begin_route({home_wp}, t);
          break;
        case PhaseKind::returning_home:
          rep.inspection_duration = t;
          faults = faults_from(out.captures, mp.merge_radius);
          n_faults = static_cast<int>(faults.size());
          if (mp.inspect_only || n_faults == 0) {
            phases.enter({PhaseKind::done, -1}, t);
            finished = true;
          } else {
            phases.enter({PhaseKind::detecting, 0}, t);
            leg_start = t;
            const Fault& f = faults.front();
            begin_route(waypoints_of(plan_return_path(est.position, f.position, f.yaw, b, cfg.plan)), t);
          }
          break;
        case PhaseKind::detecting:
          if (phase.target < n_faults) {
            phases.enter({PhaseKind::holding, phase.target}, t);
            hold_start = t;
            // keep station on the fault pose for the hold
            route = {route.back()};
            wp_idx = 0;
            if (mp.hold_time <= 0.0) continue;
          } else {
            phases.enter({PhaseKind::done, -1}, t);
            finished = true;
          }
          break;
        default:
          finished = true;
          break;
      }
      if (phases.current().kind == PhaseKind::holding) break;
    }

    const bool done = phases.current().kind == PhaseKind::done;
    if (!done && phases.current().kind != PhaseKind::holding && t - wp_start > mp.watchdog) {
      char buf[256];
      const auto& w = route[wp_idx];
      std::snprintf(buf, sizeof buf,
                    "watchdog: waypoint %zu (%.3f, %.3f, %.3f) of phase %s not reached within %.1f s (t=%.2f s)",
                    wp_idx, w.position.x(), w.position.y(), w.position.z(),
                    phase_name(phases.current()).c_str(), mp.watchdog, t);
      rep.diagnostic = buf;
    }

    if (done || !rep.diagnostic.empty() || n % mp.trajectory_stride == 0) {
      out.trajectory.push_back({t, truth.position, est.position, estimator.dead_reckoning_position(),
                                phases.current()});
    }
    if (done || !rep.diagnostic.empty()) {
      rep.total_time = t;
      if (done && mp.inspect_only) rep.inspection_duration = t;
      break;
    }

    const Waypoint& target = route[std::min(wp_idx, route.size() - 1)];
    const VelocityCommand track = track_waypoint(est, target, cfg.pid, track_pid, dt, tracking);
    const LaserScan scan = simulate_scan(scene, truth, cfg.laser);
    const ObstacleSectors sectors = classify_sectors(scan, mask, est.position, est.yaw(), avoid_params);
    const auto avoid = avoidance_command(sectors, cfg.avoidance_pid, avoid_state, dt, avoid_params);
    const VelocityCommand cmd = avoid ? *avoid : track;
    if (avoid) ++rep.avoidance_steps;

    if (observer) {
      StepTrace tr;
      tr.time = t;
      tr.truth = truth;
      tr.estimate = est;
      tr.phase = phases.current();
      tr.sectors = sectors;
      tr.avoiding = avoid.has_value();
      tr.min_masked_range = min_unmasked_range(scan, mask, est.position, est.yaw());
      tr.command = cmd;
      observer(tr);
    }

    truth = step_dynamics(truth, cmd, dt, cfg.vehicle);
  }

  rep.capture_count = static_cast<int>(out.captures.size());
  rep.completed = rep.diagnostic.empty();
  out.transitions = phases.transitions();
  return out;
}

HoverResult run_hover(double duration, const ImuNoiseSpec& s1, const ImuNoiseSpec& s2, const KalmanConfig& kalman,
                      double alpha, double dt, const Vec3& position, double tilt_gate, int trajectory_stride) {
  if (!(duration > 0.0) || !(dt > 0.0) || trajectory_stride < 1) {
    throw ConfigError("hover needs duration > 0, dt > 0 and a trajectory stride >= 1");
  }
  TrueState truth;
  truth.position = position;
  PoseEstimator est(position, truth.attitude, ComplementaryGain(alpha), kalman, 0.0, tilt_gate);
  ImuSensor imu1(ImuId::first, s1);
  ImuSensor imu2(ImuId::second, s2);
  HoverResult r;
  auto log = [&](const Vec3& p_true) {
    r.trajectory.push_back({truth.time, p_true, est.estimate().position, est.dead_reckoning_position(), {}});
  };
  log(truth.position);
  const auto steps = static_cast<long long>(std::llround(duration / dt));
  for (long long n = 1; n <= steps; ++n) {
    truth = step_dynamics(truth, {}, dt);
    truth.time = static_cast<double>(n) * dt;
    est.step(imu1.sample(truth), imu2.sample(truth), dt);
    const double ek = (est.estimate().position - truth.position).norm();
    const double ed = (est.dead_reckoning_position() - truth.position).norm();
    r.time.push_back(truth.time);
    r.kalman_error.push_back(ek);
    r.dead_reckoning_error.push_back(ed);
    r.max_kalman_error = std::max(r.max_kalman_error, ek);
    r.max_dead_reckoning_error = std::max(r.max_dead_reckoning_error, ed);
    if (n % trajectory_stride == 0 || n == steps) log(truth.position);
  }
  return r;
}

}  // namespace uavinspect
