import json
from pathlib import Path

import pytest

import uavinspect

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"


def test_default_scenario_round_trips():
    sc = uavinspect.default_scenario()
    assert sc["building"]["length"] == 20.0 and sc["building"]["height"] == 9.0
    assert json.loads(json.dumps(sc)) == sc


def test_plan_ring_corners():
    sc = uavinspect.load_scenario(SCENARIOS / "default.json")
    lines = uavinspect.plan(sc).strip().splitlines()
    assert lines[0] == "layer,x_m,y_m,z_m,yaw_rad"
    xs = {round(float(r.split(",")[1]), 9) for r in lines[1:] if not r.startswith("-1")}
    assert {-13.0, 13.0} <= xs


def test_mission_finds_four_faults_and_is_seeded():
    sc = uavinspect.load_scenario(SCENARIOS / "default.json")
    a = uavinspect.mission(sc, seed=7)
    assert a["completed"]
    assert len(a["faults"]) == 4
    b = uavinspect.mission(sc, seed=7)
    assert a["captures_csv"] == b["captures_csv"]
    assert a["report_json"] == b["report_json"]


def test_hover_drift_ratio():
    h = uavinspect.run_hover(120.0, seed=0)
    assert h["max_dead_reckoning_error"] >= 50 * h["max_kalman_error"]


def test_bad_override_raises():
    with pytest.raises(uavinspect.ConfigError):
        uavinspect.load_scenario(SCENARIOS / "default.json", ["plan.standoff=0.5"])


def test_cli_exit_codes(tmp_path):
    rc, _, _ = uavinspect.cli_mission(str(SCENARIOS / "default.json"), out_dir=str(tmp_path / "run"))
    assert rc == 0
    assert (tmp_path / "run" / "report.json").exists()
    rc, out, _ = uavinspect.cli_report(str(tmp_path / "run"))
    assert rc == 0 and out
    rc, _, err = uavinspect.cli_report(str(tmp_path))
    assert rc == 4 and "no run found" in err
    rc, _, _ = uavinspect.cli_plan(str(tmp_path / "missing.json"))
    assert rc == 4
