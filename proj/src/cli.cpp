#include "uavinspect/cli.hpp"

#include "uavinspect/errors.hpp"
#include "uavinspect/io.hpp"
#include "uavinspect/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

namespace uavinspect {

namespace fs = std::filesystem;

namespace {

struct Prepared {
  ScenarioConfig scenario;
  fs::path out_dir;
};

Prepared prepare(const RunOptions& opts) {
  if (opts.config.empty()) throw ConfigError("--config is required");
  Prepared p{load_scenario(opts.config, opts.overrides), {}};
  if (opts.seed) p.scenario.set_seed(*opts.seed);
  if (opts.out_dir) p.scenario.output_dir = *opts.out_dir;
  p.scenario.validate();
  p.out_dir = p.scenario.output_dir;
  return p;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

std::string file(const fs::path& dir, const char* name) { return (dir / name).string(); }

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const WatchdogAbort& e) {
    err << "watchdog abort: " << e.what() << '\n';
    return kExitWatchdog;
  }
}

int run(const RunOptions& opts, bool inspect_only, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Prepared p = prepare(opts);
    p.scenario.mission.mission.inspect_only = inspect_only;
    const MissionResult r = run_mission(p.scenario.mission);

    ensure_dir(p.out_dir);
    write_text(file(p.out_dir, "scenario.json"), scenario_to_json(p.scenario));
    write_text(file(p.out_dir, "plan.csv"), plan_csv(r.plan));
    write_text(file(p.out_dir, "trajectory.csv"), trajectory_csv(r.trajectory));
    write_text(file(p.out_dir, "captures.csv"), captures_csv(r.captures));
    if (!inspect_only) write_text(file(p.out_dir, "report.json"), report_json(r.report));

    if (!r.report.completed) throw WatchdogAbort(r.report.diagnostic);
    out << (inspect_only ? "inspection" : "mission") << " complete: " << r.captures.size() << " captures, "
        << r.report.faults.size() << " faults, " << fmt9(r.report.total_time) << " s -> " << p.out_dir.string()
        << '\n';
    return static_cast<int>(kExitOk);
  });
}

struct ErrorStats {
  double max{0.0};
  double rms{0.0};
};

ErrorStats stats(const std::vector<double>& e) {
  ErrorStats s;
  double sq = 0.0;
  for (double v : e) {
    s.max = std::max(s.max, v);
    sq += v * v;
  }
  if (!e.empty()) s.rms = std::sqrt(sq / static_cast<double>(e.size()));
  return s;
}

}  // namespace

int cmd_plan(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Prepared p = prepare(opts);
    const MissionConfig& m = p.scenario.mission;
    const WaypointPath plan = generate_perimeter_path(m.scene.building(), m.plan, m.home);
    ensure_dir(p.out_dir);
    write_text(file(p.out_dir, "plan.csv"), plan_csv(plan));
    out << "plan: " << plan.size() << " waypoints, " << fmt9(plan.length_from(m.home)) << " m -> "
        << p.out_dir.string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_inspect(const RunOptions& opts, std::ostream& out, std::ostream& err) { return run(opts, true, out, err); }

int cmd_mission(const RunOptions& opts, std::ostream& out, std::ostream& err) { return run(opts, false, out, err); }

int cmd_hover(const RunOptions& opts, double duration, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(duration > 0.0)) throw ConfigError("hover duration must be > 0");
    const Prepared p = prepare(opts);
    const MissionConfig& m = p.scenario.mission;
    const Vec3 at{m.home.x(), m.home.y(), 5.0};
    const HoverResult h = run_hover(duration, m.imu1, m.imu2, m.effective_kalman(), m.complementary_alpha,
                                    m.mission.dt, at, m.tilt_gate, m.mission.trajectory_stride);
    ensure_dir(p.out_dir);
    write_text(file(p.out_dir, "scenario.json"), scenario_to_json(p.scenario));
    write_text(file(p.out_dir, "trajectory.csv"), trajectory_csv(h.trajectory));
    out << "hover complete: " << fmt9(duration) << " s, kalman max " << fmt9(h.max_kalman_error)
        << " m, dead reckoning max " << fmt9(h.max_dead_reckoning_error) << " m -> " << p.out_dir.string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_report(const std::string& run_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const fs::path dir(run_dir);
    const fs::path traj = dir / "trajectory.csv";
    if (!fs::is_regular_file(traj)) {
      err << "no run found in '" << run_dir << "' (trajectory.csv missing)\n";
      return kExitIo;
    }
    const auto rows = parse_trajectory_csv(read_text(traj.string()));
    std::vector<double> ek;
    std::vector<double> ed;
    for (const auto& r : rows) {
      ek.push_back((r.estimate - r.truth).norm());
      ed.push_back((r.dead_reckoning - r.truth).norm());
    }
    const ErrorStats k = stats(ek);
    const ErrorStats d = stats(ed);

    out << "run: " << run_dir << '\n';
    out << "samples: " << rows.size() << '\n';
    out << "kalman_error_max_m: " << fmt9(k.max) << '\n';
    out << "kalman_error_rms_m: " << fmt9(k.rms) << '\n';
    out << "dead_reckoning_error_max_m: " << fmt9(d.max) << '\n';
    out << "dead_reckoning_error_rms_m: " << fmt9(d.rms) << '\n';
    // Under a centimetre a trace has not measurably drifted, so the ratio says nothing.
    if (std::min(k.max, d.max) < 0.01) {
      out << "error_ratio: n/a\n";
    } else {
      out << "error_ratio: " << fmt9(d.max / k.max) << '\n';
    }

    const fs::path caps = dir / "captures.csv";
    if (fs::is_regular_file(caps)) out << "captures: " << count_csv_rows(read_text(caps.string())) << '\n';

    const fs::path rep = dir / "report.json";
    if (fs::is_regular_file(rep)) {
      const auto j = nlohmann::json::parse(read_text(rep.string()), nullptr, false);
      if (j.is_discarded()) throw IoError("report.json is not valid JSON");
      const auto& c = j.at("min_obstacle_clearance_m");
      out << "min_obstacle_clearance_m: " << (c.is_null() ? std::string("n/a") : fmt9(c.get<double>())) << '\n';
      const auto& faults = j.at("faults");
      out << "faults: " << faults.size() << '\n';
      for (const auto& f : faults) {
        const auto& p = f.at("position_m");
        out << "  fault " << f.at("id").get<int>() << ' ' << f.at("image_id").get<std::string>() << " at ("
            << fmt9(p[0].get<double>()) << ", " << fmt9(p[1].get<double>()) << ", " << fmt9(p[2].get<double>())
            << ") yaw " << fmt9(f.at("yaw_rad").get<double>()) << " rad\n";
      }
    }
    return kExitOk;
  });
}

}  // namespace uavinspect
