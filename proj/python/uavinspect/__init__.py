"""Python access to the uavinspect simulator core."""

import json

from ._core import (
    ConfigError,
    IoError,
    cli_inspect,
    cli_mission,
    cli_plan,
    cli_report,
    default_scenario_json,
    load_scenario_json,
    plan_csv,
    run_hover,
    run_mission,
)


def default_scenario():
    """Default scenario as a plain dict."""
    return json.loads(default_scenario_json())


def load_scenario(path, overrides=()):
    return json.loads(load_scenario_json(str(path), list(overrides)))


def mission(scenario, seed=None):
    """Runs a full mission for a scenario dict and returns the report dict plus CSV/JSON texts."""
    return run_mission(json.dumps(scenario), seed)


def plan(scenario):
    return plan_csv(json.dumps(scenario))


__all__ = [
    "ConfigError",
    "IoError",
    "cli_inspect",
    "cli_mission",
    "cli_plan",
    "cli_report",
    "default_scenario",
    "load_scenario",
    "mission",
    "plan",
    "run_hover",
]
