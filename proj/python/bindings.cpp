#include "uavinspect/cli.hpp"
#include "uavinspect/errors.hpp"
#include "uavinspect/io.hpp"
#include "uavinspect/mission.hpp"
#include "uavinspect/planner.hpp"
#include "uavinspect/scenario.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace uavinspect;

namespace {

ScenarioConfig scenario_of(const std::string& json_text, std::optional<std::uint64_t> seed) {
  ScenarioConfig sc = scenario_from_json(json_text);
  if (seed) sc.set_seed(*seed);
  return sc;
}

py::dict report_dict(const MissionReport& r) {
  py::list faults;
  for (const auto& f : r.faults) {
    py::dict d;
    d["id"] = f.id;
    d["image_id"] = f.image_id;
    d["capture_time"] = f.capture_time;
    d["position"] = f.position;
    d["yaw"] = f.yaw;
    faults.append(d);
  }
  py::dict d;
  d["completed"] = r.completed;
  d["diagnostic"] = r.diagnostic;
  d["faults"] = faults;
  d["inspection_duration"] = r.inspection_duration;
  d["detection_durations"] = r.detection_durations;
  d["min_obstacle_clearance"] = r.min_obstacle_clearance;
  d["min_building_clearance"] = r.min_building_clearance;
  d["total_time"] = r.total_time;
  d["capture_count"] = r.capture_count;
  d["avoidance_steps"] = r.avoidance_steps;
  d["max_kalman_error"] = r.max_kalman_error;
  d["max_dead_reckoning_error"] = r.max_dead_reckoning_error;
  return d;
}

// Runs a CLI command and hands back (exit code, stdout, stderr).
template <typename F>
py::tuple captured(F&& f) {
  std::ostringstream out, err;
  const int rc = f(out, err);
  return py::make_tuple(rc, out.str(), err.str());
}

RunOptions run_options(const std::string& config, std::optional<std::uint64_t> seed, std::optional<std::string> out_dir,
                       std::vector<std::string> overrides) {
  RunOptions o;
  o.config = config;
  o.seed = seed;
  o.out_dir = std::move(out_dir);
  o.overrides = std::move(overrides);
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "UAV facade inspection simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("default_scenario_json", [] { return scenario_to_json(default_scenario()); });
  m.def("load_scenario_json", [](const std::string& path, const std::vector<std::string>& overrides) {
    return scenario_to_json(load_scenario(path, overrides));
  }, py::arg("path"), py::arg("overrides") = std::vector<std::string>{});

  m.def("plan_csv", [](const std::string& json_text) {
    const ScenarioConfig sc = scenario_of(json_text, std::nullopt);
    const MissionConfig& mc = sc.mission;
    return plan_csv(generate_perimeter_path(mc.scene.building(), mc.plan, mc.home));
  }, py::arg("scenario_json"), "Perimeter plan for a scenario, as CSV text.");

  m.def("run_mission", [](const std::string& json_text, std::optional<std::uint64_t> seed) {
    const ScenarioConfig sc = scenario_of(json_text, seed);
    MissionResult r;
    {
      py::gil_scoped_release release;
      r = run_mission(sc.mission);
    }
    py::dict d = report_dict(r.report);
    d["captures_csv"] = captures_csv(r.captures);
    d["trajectory_csv"] = trajectory_csv(r.trajectory);
    d["report_json"] = report_json(r.report);
    return d;
  }, py::arg("scenario_json"), py::arg("seed") = py::none());

  m.def("run_hover", [](double duration, std::uint64_t seed) {
    ImuNoiseSpec a = ImuNoiseSpec::defaults(ImuId::first);
    ImuNoiseSpec b = ImuNoiseSpec::defaults(ImuId::second);
    a.seed = b.seed = seed;
    HoverResult h;
    {
      py::gil_scoped_release release;
      h = run_hover(duration, a, b, KalmanConfig::for_sensors(a.accel_noise_std, b.accel_noise_std));
    }
    py::dict d;
    d["time"] = h.time;
    d["kalman_error"] = h.kalman_error;
    d["dead_reckoning_error"] = h.dead_reckoning_error;
    d["max_kalman_error"] = h.max_kalman_error;
    d["max_dead_reckoning_error"] = h.max_dead_reckoning_error;
    return d;
  }, py::arg("duration") = 120.0, py::arg("seed") = 0, "Default-noise hover at 5 m.");


  m.def("cli_plan", [](const std::string& config, std::optional<std::uint64_t> seed, std::optional<std::string> out_dir,
                       std::vector<std::string> overrides) {
    const RunOptions o = run_options(config, seed, std::move(out_dir), std::move(overrides));
    return captured([&](std::ostream& out, std::ostream& err) { return cmd_plan(o, out, err); });
  }, py::arg("config"), py::arg("seed") = py::none(), py::arg("out_dir") = py::none(),
     py::arg("overrides") = std::vector<std::string>{});

  m.def("cli_inspect", [](const std::string& config, std::optional<std::uint64_t> seed,
                          std::optional<std::string> out_dir, std::vector<std::string> overrides) {
    const RunOptions o = run_options(config, seed, std::move(out_dir), std::move(overrides));
    return captured([&](std::ostream& out, std::ostream& err) { return cmd_inspect(o, out, err); });
  }, py::arg("config"), py::arg("seed") = py::none(), py::arg("out_dir") = py::none(),
     py::arg("overrides") = std::vector<std::string>{});

  m.def("cli_mission", [](const std::string& config, std::optional<std::uint64_t> seed,
                          std::optional<std::string> out_dir, std::vector<std::string> overrides) {
    const RunOptions o = run_options(config, seed, std::move(out_dir), std::move(overrides));
    return captured([&](std::ostream& out, std::ostream& err) { return cmd_mission(o, out, err); });
  }, py::arg("config"), py::arg("seed") = py::none(), py::arg("out_dir") = py::none(),
     py::arg("overrides") = std::vector<std::string>{});

  m.def("cli_report", [](const std::string& run_dir) {
    return captured([&](std::ostream& out, std::ostream& err) { return cmd_report(run_dir, out, err); });
  }, py::arg("run_dir"));
}
