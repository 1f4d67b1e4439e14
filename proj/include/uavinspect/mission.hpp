#pragma once

#include "uavinspect/control.hpp"
#include "uavinspect/estimation.hpp"
#include "uavinspect/perception.hpp"
#include "uavinspect/planner.hpp"
#include "uavinspect/sensors.hpp"
#include "uavinspect/vehicle.hpp"
#include "uavinspect/world.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace uavinspect {

enum class PhaseKind { idle, inspecting, returning_home, detecting, holding, done };

struct MissionPhase {
  PhaseKind kind{PhaseKind::idle};
  int target{-1};  ///< fault index while detecting/holding; equals the fault count on the final leg home

  friend bool operator==(const MissionPhase&, const MissionPhase&) = default;
};

std::string phase_name(const MissionPhase& p);
bool legal_transition(const MissionPhase& from, const MissionPhase& to);

struct PhaseTransition {
  double time{0.0};
  MissionPhase from;
  MissionPhase to;
};

/// Appends transitions and rejects any the state machine does not allow.
class PhaseRecorder {
 public:
  void enter(const MissionPhase& next, double time);
  [[nodiscard]] const MissionPhase& current() const { return current_; }
  [[nodiscard]] const std::vector<PhaseTransition>& transitions() const { return log_; }

 private:
  MissionPhase current_{};
  std::vector<PhaseTransition> log_;
};

struct MissionParams {
  double dt{0.01};
  double arrival_tol{0.3};
  double hold_time{5.0};
  double watchdog{120.0};
  double capture_interval{10.0};
  double merge_radius{2.0};
  int trajectory_stride{10};  ///< trajectory rows are logged every this many steps
  bool inspect_only{false};

  void validate() const;
};

struct MissionConfig {
  Scene scene;
  Vec3 home{Vec3::Zero()};
  double home_yaw{0.0};
  PlanParams plan;
  VehicleParams vehicle;
  PidGains pid;
  PidGains avoidance_pid;
  TrackingParams tracking;
  AvoidanceParams avoidance;
  ImuNoiseSpec imu1{ImuNoiseSpec::defaults(ImuId::first)};
  ImuNoiseSpec imu2{ImuNoiseSpec::defaults(ImuId::second)};
  double complementary_alpha{0.98};
  double tilt_gate{kDefaultTiltGate};
  KalmanConfig kalman;
  bool kalman_r_from_noise{true};  ///< derive R from the accelerometer noise levels
  ClassifierSpec classifier;
  CameraModel camera;
  LaserScanConfig laser;
  MissionParams mission;

  void validate() const;
  /// Kalman configuration actually used by the run.
  [[nodiscard]] KalmanConfig effective_kalman() const;
};

struct TrajectoryRow {
  double time{0.0};
  Vec3 truth{Vec3::Zero()};
  Vec3 estimate{Vec3::Zero()};
  Vec3 dead_reckoning{Vec3::Zero()};
  MissionPhase phase;
};

struct DetectionLeg {
  int fault_index{0};
  double start{0.0};
  double end{0.0};
  Vec3 truth_position{Vec3::Zero()};  ///< at the end of the hold
  double truth_yaw{0.0};
};

struct Fault {
  int id{0};
  std::string image_id;
  double capture_time{0.0};
  Vec3 position{Vec3::Zero()};
  double yaw{0.0};
};

struct MissionReport {
  std::vector<Fault> faults;
  double inspection_duration{0.0};
  std::vector<double> detection_durations;
  std::vector<DetectionLeg> legs;
  double min_obstacle_clearance{0.0};
  double min_building_clearance{0.0};
  double total_time{0.0};
  int capture_count{0};
  int avoidance_steps{0};
  double max_kalman_error{0.0};
  double max_dead_reckoning_error{0.0};
  bool completed{false};
  std::string diagnostic;
};

/// Per-step snapshot handed to an optional observer.
struct StepTrace {
  double time{0.0};
  TrueState truth;
  EstimatedState estimate;
  MissionPhase phase;
  ObstacleSectors sectors;
  bool avoiding{false};
  double min_masked_range{0.0};
  VelocityCommand command;
};

using StepObserver = std::function<void(const StepTrace&)>;

struct MissionResult {
  MissionReport report;
  WaypointPath plan;
  std::vector<CaptureRecord> captures;
  std::vector<TrajectoryRow> trajectory;
  std::vector<PhaseTransition> transitions;
};

/// Runs inspection (and, unless `inspect_only`, detection) to completion or to
/// a watchdog abort. An abort is reported through `report.completed` and
/// `report.diagnostic`; logs up to that point are kept.
MissionResult run_mission(const MissionConfig& cfg, const StepObserver& observer = {});

struct HoverResult {
  std::vector<double> time;
  std::vector<double> kalman_error;
  std::vector<double> dead_reckoning_error;
  double max_kalman_error{0.0};
  double max_dead_reckoning_error{0.0};
  std::vector<TrajectoryRow> trajectory;  ///< every `trajectory_stride` steps, phase idle
};

/// Zero-command hover with the full estimator running, for drift comparisons.
HoverResult run_hover(double duration, const ImuNoiseSpec& imu1, const ImuNoiseSpec& imu2,
                      const KalmanConfig& kalman, double alpha = 0.98, double dt = 0.01,
                      const Vec3& position = {0.0, 0.0, 5.0}, double tilt_gate = kDefaultTiltGate,
                      int trajectory_stride = 10);

}  // namespace uavinspect
