#include "uavinspect/io.hpp"

#include "uavinspect/errors.hpp"

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <limits>

using namespace uavinspect;

TEST_CASE("nine significant digits") {
  CHECK(fmt9(0.0) == "0");
  CHECK(fmt9(-0.0) == "0");
  CHECK(fmt9(1.0 / 3.0) == "0.333333333");
  CHECK(fmt9(1.5707963267948966) == "1.57079633");
  CHECK(fmt9(-12345.678901) == "-12345.6789");
  CHECK(fmt9(1e-12) == "1e-12");
}

TEST_CASE("plan and capture CSVs") {
  WaypointPath p;
  p.waypoints.push_back({{1, 2, 3}, 0.5, 0});
  p.waypoints.push_back({{0, 0, 0}, -1.0, kTransitLayer});
  CHECK(plan_csv(p) == std::string(kPlanHeader) + "\n0,1,2,3,0.5\n-1,0,0,0,-1\n");

  CaptureRecord c;
  c.image_id = "img_000003";
  c.time = 30.0;
  c.est_position = {13, 11.5, 1.5};
  c.label = Label::crack;
  const std::string csv = captures_csv({c});
  CHECK(csv == std::string(kCaptureHeader) + "\nimg_000003,30,13,11.5,1.5,1,0,0,0,crack\n");
  CHECK(count_csv_rows(csv) == 1);
  CHECK(count_csv_rows(std::string(kCaptureHeader) + "\n") == 0);
}

TEST_CASE("trajectory CSV round trip") {
  std::vector<TrajectoryRow> rows(2);
  rows[0].time = 0.0;
  rows[1].time = 0.1;
  rows[1].truth = {1, 2, 3};
  rows[1].estimate = {1.1, 2, 3};
  rows[1].dead_reckoning = {1, 2.5, 3};
  rows[1].phase = {PhaseKind::detecting, 2};
  const auto back = parse_trajectory_csv(trajectory_csv(rows));
  REQUIRE(back.size() == 2);
  CHECK(back[1].time == doctest::Approx(0.1));
  CHECK(back[1].estimate.isApprox(Vec3(1.1, 2, 3)));
  CHECK(back[1].dead_reckoning.isApprox(Vec3(1, 2.5, 3)));
  CHECK(back[1].phase == "detecting:2");
  CHECK(back[0].phase == "idle");
  CHECK_THROWS_AS(parse_trajectory_csv("t_s\n1,2\n"), IoError);
}

TEST_CASE("report JSON writes null for an empty obstacle field") {
  MissionReport r;
  r.min_obstacle_clearance = std::numeric_limits<double>::infinity();
  r.min_building_clearance = 2.5;
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["min_obstacle_clearance_m"].is_null());
  CHECK(j["min_building_clearance_m"] == 2.5);
  CHECK(j["faults"].is_array());
}

TEST_CASE("file helpers raise I/O errors") {
  CHECK_THROWS_AS(read_text("/nonexistent/file.txt"), IoError);
  CHECK_THROWS_AS(write_text("/nonexistent/dir/file.txt", "x"), IoError);
  const auto tmp = std::filesystem::temp_directory_path() / "uavinspect_io_test.txt";
  write_text(tmp.string(), "hello\n");
  CHECK(read_text(tmp.string()) == "hello\n");
  std::filesystem::remove(tmp);
}
