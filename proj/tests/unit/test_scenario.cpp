#include "uavinspect/scenario.hpp"

#include "uavinspect/errors.hpp"

#include <doctest.h>

#include <json.hpp>

#include <set>

using namespace uavinspect;

namespace {

std::string scenario_path(const char* name) { return std::string(UAVINSPECT_SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST_CASE("parse -> serialize -> parse is the identity") {
  for (const char* f : {"default.json", "obstacle_course.json"}) {
    const ScenarioConfig a = load_scenario(scenario_path(f));
    const std::string once = scenario_to_json(a);
    const ScenarioConfig b = scenario_from_json(once);
    CHECK(scenario_to_json(b) == once);
  }
  const std::string d = scenario_to_json(default_scenario());
  CHECK(scenario_to_json(scenario_from_json(d)) == d);
}

TEST_CASE("scenario files load with the declared contents") {
  const ScenarioConfig sc = load_scenario(scenario_path("default.json"));
  const auto& m = sc.mission;
  CHECK(m.scene.building().length == 20.0);
  CHECK(m.scene.building().width == 10.0);
  CHECK(m.scene.building().height == 9.0);
  CHECK(m.scene.decals().size() == 4);
  std::set<Face> faces;
  for (const auto& d : m.scene.decals()) faces.insert(d.face);
  CHECK(faces.size() == 4);
  CHECK(m.pid.kp == 1.0);
  CHECK(m.pid.kd == 0.5);
  CHECK(m.pid.ki == 0.0001);
  CHECK(load_scenario(scenario_path("obstacle_course.json")).mission.scene.obstacles().size() == 2);
}

TEST_CASE("unknown keys and bad values are config errors") {
  CHECK_THROWS_AS(scenario_from_json(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_json(R"({"building": {"length": 20, "colour": "red"}})"), ConfigError);
  CHECK_THROWS_AS(load_scenario(scenario_path("default.json"), {"building.length=-5"}), ConfigError);
  CHECK_THROWS_AS(scenario_from_json("{not json"), ConfigError);
  CHECK_THROWS_AS(scenario_from_json(R"({"building": {"length": "long"}})"), ConfigError);
}

TEST_CASE("missing scenario file is an I/O error") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), IoError);
}

TEST_CASE("overrides reach scalar fields") {
  const ScenarioConfig sc = load_scenario(scenario_path("default.json"),
                                          {"building.height=12", "mission.hold_time=2.5", "classifier.kind=noisy",
                                           "home.position.0=-3"});
  CHECK(sc.mission.scene.building().height == 12.0);
  CHECK(sc.mission.mission.hold_time == 2.5);
  CHECK(sc.mission.classifier.kind == ClassifierKind::noisy);
  CHECK(sc.mission.home.x() == -3.0);
  CHECK_THROWS_AS(load_scenario(scenario_path("default.json"), {"mission.nope=1"}), ConfigError);
  CHECK_THROWS_AS(load_scenario(scenario_path("default.json"), {"novalue"}), ConfigError);
}

TEST_CASE("override text helper") {
  const std::string out = apply_overrides(R"({"a": {"b": 1, "c": [1, 2]}})", {"a.b=2.5", "a.c.1=7", "a.b=hello"});
  const auto j = nlohmann::json::parse(out);
  CHECK(j["a"]["b"] == "hello");
  CHECK(j["a"]["c"][1] == 7);
}

TEST_CASE("set_seed reaches both IMUs and the classifier") {
  ScenarioConfig sc = default_scenario();
  sc.set_seed(7);
  CHECK(sc.mission.imu1.seed == 7);
  CHECK(sc.mission.imu2.seed == 7);
  CHECK(sc.mission.classifier.seed == 7);
}
