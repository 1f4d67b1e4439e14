#include "uavinspect/mission.hpp"

#include "uavinspect/errors.hpp"
#include "uavinspect/io.hpp"
#include "uavinspect/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace uavinspect;

namespace {

std::string scenario_path(const char* name) { return std::string(UAVINSPECT_SCENARIO_DIR) + "/" + name; }

struct Observed {
  MissionResult result;
  bool entered_building{false};
  bool avoid_matches_sectors{true};
  bool avoid_matches_range{true};
  double min_obstacle_clearance{1e9};
};

Observed fly(const ScenarioConfig& sc) {
  Observed o;
  const Rect fp = sc.mission.scene.building().footprint();
  o.result = run_mission(sc.mission, [&](const StepTrace& t) {
    o.entered_building = o.entered_building || fp.strictly_contains(t.truth.position.head<2>());
    o.avoid_matches_sectors = o.avoid_matches_sectors && (t.avoiding == t.sectors.any());
    o.avoid_matches_range = o.avoid_matches_range && (t.avoiding == (t.min_masked_range < 3.0));
    o.min_obstacle_clearance = std::min(o.min_obstacle_clearance, sc.mission.scene.obstacle_clearance(t.truth.position));
  });
  return o;
}

const Observed& cached(const std::string& key, const ScenarioConfig& sc) {
  static std::map<std::string, Observed> runs;
  auto it = runs.find(key);
  if (it == runs.end()) it = runs.emplace(key, fly(sc)).first;
  return it->second;
}

ScenarioConfig with_decals(std::vector<FaultDecal> decals) {
  ScenarioConfig sc = load_scenario(scenario_path("default.json"));
  const Scene& s = sc.mission.scene;
  sc.mission.scene = Scene(s.building(), std::move(decals), s.obstacles());
  return sc;
}

std::vector<PhaseKind> kinds(const MissionResult& r) {
  std::vector<PhaseKind> k;
  for (const auto& t : r.transitions) k.push_back(t.to.kind);
  return k;
}

}  // namespace

TEST_CASE("phase transition table") {
  using K = PhaseKind;
  CHECK(legal_transition({K::idle, -1}, {K::inspecting, -1}));
  CHECK(legal_transition({K::inspecting, -1}, {K::returning_home, -1}));
  CHECK(legal_transition({K::returning_home, -1}, {K::done, -1}));
  CHECK(legal_transition({K::returning_home, -1}, {K::detecting, 0}));
  CHECK(legal_transition({K::detecting, 0}, {K::holding, 0}));
  CHECK(legal_transition({K::holding, 0}, {K::detecting, 1}));
  CHECK(legal_transition({K::detecting, 2}, {K::done, -1}));
  CHECK_FALSE(legal_transition({K::idle, -1}, {K::done, -1}));
  CHECK_FALSE(legal_transition({K::inspecting, -1}, {K::detecting, 0}));
  CHECK_FALSE(legal_transition({K::holding, 0}, {K::detecting, 2}));
  CHECK_FALSE(legal_transition({K::returning_home, -1}, {K::detecting, 1}));
  CHECK_FALSE(legal_transition({K::done, -1}, {K::inspecting, -1}));

  PhaseRecorder rec;
  rec.enter({K::inspecting, -1}, 0.0);
  CHECK_THROWS_AS(rec.enter({K::holding, 0}, 1.0), std::logic_error);
  CHECK(rec.transitions().size() == 1);
  CHECK(phase_name({K::detecting, 3}) == "detecting:3");
}

TEST_CASE("zero decals: no faults, detection skipped") {
  const Observed& o = cached("none", with_decals({}));
  const MissionResult& r = o.result;
  REQUIRE(r.report.completed);
  CHECK(r.report.faults.empty());
  CHECK(kinds(r) == std::vector<PhaseKind>{PhaseKind::inspecting, PhaseKind::returning_home, PhaseKind::done});
  for (const auto& c : r.captures) CHECK(c.label == Label::not_crack);
  CHECK_FALSE(o.entered_building);
  CHECK(r.captures.size() == static_cast<std::size_t>(std::floor(r.report.inspection_duration / 10.0)) + 1);
}

TEST_CASE("one decal: exactly one fault at a capture that saw it") {
  const Observed& o = cached("one", with_decals({{5, Face::south, {12.5, 7.5}, {0.5, 0.5}}}));
  const MissionResult& r = o.result;
  REQUIRE(r.report.completed);
  REQUIRE(r.report.faults.size() == 1);
  const Fault& f = r.report.faults.front();
  bool matched = false;
  for (const auto& c : r.captures) {
    const bool saw = std::find(c.visible_decals.begin(), c.visible_decals.end(), 5) != c.visible_decals.end();
    if (saw && (c.est_position - f.position).norm() <= 0.5) matched = true;
  }
  CHECK(matched);
  REQUIRE(r.report.legs.size() == 1);
  CHECK((r.report.legs[0].truth_position - f.position).norm() < 0.5);
}

TEST_CASE("two decals: detection visits both in capture-time order") {
  const Observed& o = cached("two", with_decals({{0, Face::north, {12.5, 1.5}, {0.5, 0.5}},
                                                 {1, Face::east, {2.0, 4.5}, {0.5, 0.5}}}));
  const MissionResult& r = o.result;
  REQUIRE(r.report.completed);
  REQUIRE(r.report.faults.size() == 2);
  CHECK(r.report.faults[0].capture_time < r.report.faults[1].capture_time);
  REQUIRE(r.report.legs.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.report.legs[i].fault_index == static_cast<int>(i));
    CHECK((r.report.legs[i].truth_position - r.report.faults[i].position).norm() < 0.5);
  }
  CHECK(r.report.legs[0].end <= r.report.legs[1].start + 1e-9);
  CHECK(r.report.detection_durations.size() == 2);
}

TEST_CASE("full default mission: legal phases, no building incursion, sane report") {
  const Observed& o = cached("default", load_scenario(scenario_path("default.json")));
  const MissionResult& r = o.result;
  REQUIRE(r.report.completed);
  CHECK(r.report.faults.size() == 4);
  CHECK_FALSE(o.entered_building);
  MissionPhase cur;
  for (const auto& t : r.transitions) {
    CHECK(t.from == cur);
    CHECK(legal_transition(t.from, t.to));
    cur = t.to;
  }
  CHECK(cur.kind == PhaseKind::done);
  CHECK(r.report.min_building_clearance > 0.5);
  CHECK(r.report.max_kalman_error < 0.5);
  CHECK(r.report.max_dead_reckoning_error < 0.5);
  CHECK(r.trajectory.front().time == 0.0);
  CHECK(r.trajectory.back().time == doctest::Approx(r.report.total_time));
}

TEST_CASE("obstacle course: avoidance only on masked range < 3 m, positive clearance") {
  const Observed& o = cached("obstacles", load_scenario(scenario_path("obstacle_course.json")));
  REQUIRE(o.result.report.completed);
  CHECK(o.result.report.avoidance_steps > 0);
  CHECK(o.avoid_matches_sectors);
  CHECK(o.avoid_matches_range);
  CHECK(o.min_obstacle_clearance > 0.5);
  CHECK(o.result.report.min_obstacle_clearance == doctest::Approx(o.min_obstacle_clearance));
  CHECK_FALSE(o.entered_building);
}

TEST_CASE("identical scenario and seeds give identical logs") {
  ScenarioConfig sc = load_scenario(scenario_path("default.json"));
  sc.set_seed(7);
  sc.mission.mission.inspect_only = true;
  const MissionResult a = run_mission(sc.mission);
  const MissionResult b = run_mission(sc.mission);
  CHECK(captures_csv(a.captures) == captures_csv(b.captures));
  CHECK(trajectory_csv(a.trajectory) == trajectory_csv(b.trajectory));
  CHECK(report_json(a.report) == report_json(b.report));
}

TEST_CASE("watchdog aborts an unreachable waypoint and keeps the logs") {
  ScenarioConfig sc = load_scenario(scenario_path("default.json"));
  sc.mission.mission.watchdog = 2.0;
  const MissionResult r = run_mission(sc.mission);
  CHECK_FALSE(r.report.completed);
  CHECK(r.report.diagnostic.find("watchdog") != std::string::npos);
  CHECK_FALSE(r.trajectory.empty());
  CHECK_FALSE(r.captures.empty());
}

TEST_CASE("mission config validation") {
  ScenarioConfig sc = default_scenario();
  CHECK_NOTHROW(sc.validate());
  sc.mission.home = {0, 14, 0};
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  ScenarioConfig bad = default_scenario();
  bad.mission.mission.dt = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("hover helper reports both error traces") {
  const HoverResult h = run_hover(5.0, ImuNoiseSpec::noiseless(), ImuNoiseSpec::noiseless(),
                                  KalmanConfig::for_sensors(1e-3, 1e-3));
  CHECK(h.time.size() == h.kalman_error.size());
  CHECK(h.max_kalman_error < 1e-9);
  CHECK(h.max_dead_reckoning_error < 1e-9);
}
