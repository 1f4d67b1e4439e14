// Command-line driver: plan, inspect, mission, hover, report.
#include "uavinspect/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace uavinspect;

  CLI::App app{"Simulated UAV facade inspection and fault localisation"};
  app.require_subcommand(1);

  RunOptions opts;
  std::uint64_t seed = 0;
  std::string out_dir;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "scenario JSON file")->required();
    sub->add_option("--seed", seed, "seed for both IMUs and the classifier");
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--set", opts.overrides, "override a config field, key=value (repeatable)");
  };

  auto* plan = app.add_subcommand("plan", "export the perimeter waypoint plan");
  auto* inspect = app.add_subcommand("inspect", "run the inspection phase only");
  auto* mission = app.add_subcommand("mission", "run inspection and detection");
  auto* hover = app.add_subcommand("hover", "zero-command hover for estimator drift comparisons");
  double duration = 120.0;
  hover->add_option("--duration", duration, "seconds of hover (default 120)");
  for (auto* sub : {plan, inspect, mission, hover}) add_run_flags(sub);

  std::string run_dir;
  auto* report = app.add_subcommand("report", "summarise a finished run directory");
  report->add_option("run_dir", run_dir, "directory written by inspect or mission")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  auto* used = app.get_subcommands().front();
  if (used == report) return cmd_report(run_dir, std::cout, std::cerr);
  if (used->count("--seed") > 0) opts.seed = seed;
  if (used->count("--out") > 0) opts.out_dir = out_dir;

  if (used == plan) return cmd_plan(opts, std::cout, std::cerr);
  if (used == inspect) return cmd_inspect(opts, std::cout, std::cerr);
  if (used == hover) return cmd_hover(opts, duration, std::cout, std::cerr);
  return cmd_mission(opts, std::cout, std::cerr);
}
