"""Scripted runs, agent policies, metrics, CLI, and golden regression."""

from __future__ import annotations

import json
import statistics
from pathlib import Path

import pytest
from click.testing import CliRunner

from museum_explorer.cli import cli
from museum_explorer.dataspace import load_catalog, sample_catalog_path
from museum_explorer.harness import (
    RunMetrics,
    Script,
    ScriptError,
    emit_metrics,
    load_script,
    parse_metrics_csv,
    run_agent,
    run_script,
    trajectories_csv,
    write_run_outputs,
)
from museum_explorer.params import Params

FIXTURES = Path(__file__).parent / "fixtures"
GOLDENS = Path(__file__).parent / "goldens"


def thema_step(tick, target="fishing"):
    return (tick, {"type": "tool_use", "tool": "thema", "target": target})


# -- scripts -----------------------------------------------------------------


def test_script_offsets_must_be_sorted():
    with pytest.raises(ScriptError, match="non-decreasing"):
        Script([thema_step(5), thema_step(2)])


def test_script_load_and_shape_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"not": "a list"}')
    with pytest.raises(ScriptError, match="array"):
        load_script(path)
    path.write_text('[{"tick": 0}]')
    with pytest.raises(ScriptError, match="tick"):
        load_script(path)


def test_script_beyond_run_length_rejected(sample_catalog):
    with pytest.raises(ScriptError, match="cannot play"):
        run_script(sample_catalog, None, Script([thema_step(50)]), ticks=10)


def test_bad_script_event_reports_tick(sample_catalog):
    script = Script([(0, {"type": "stand_before", "object_id": "ghost"})])
    with pytest.raises(ScriptError, match="tick 0"):
        run_script(sample_catalog, None, script)


def test_empty_script_run_creates_no_rooms(sample_catalog):
    metrics, session = run_script(sample_catalog, None, Script([]), ticks=100)
    assert metrics.rooms_created == 0
    assert session.clock == 100.0


def test_focused_script_spawns_topical_room(sample_catalog):
    script = Script([thema_step(k) for k in range(10)])
    metrics, session = run_script(sample_catalog, None, script, seed=1, ticks=20)
    assert metrics.rooms_created >= 1
    topics = {t for room in session.museum.rooms.values() for t in room.topic}
    assert "fishing" in topics


def test_run_script_deterministic(sample_catalog):
    script = Script([thema_step(k) for k in range(6)])
    a = run_script(sample_catalog, None, script, seed=7, ticks=30)
    b = run_script(sample_catalog, None, script, seed=7, ticks=30)
    assert json.dumps(a[1].museum.to_jsonable(), sort_keys=True) == json.dumps(
        b[1].museum.to_jsonable(), sort_keys=True
    )
    assert emit_metrics(a[0], "csv") == emit_metrics(b[0], "csv")


# -- agents -------------------------------------------------------------------


def test_wanderer_grows_rooms_monotonically(sample_catalog):
    counts = []
    for steps in (10, 25, 50):
        metrics, _ = run_agent(sample_catalog, None, "wanderer", steps, seed=5)
        counts.append(metrics.rooms_created)
    assert counts == sorted(counts)
    assert counts[-1] > 0


def test_focused_agent_raises_target_above_median(sample_catalog):
    _, session = run_agent(sample_catalog, None, "focused", 60, seed=5, target="granite")
    relevances = session.state.R
    assert relevances["granite"] > statistics.median(relevances.values())


def test_unreachable_room_threshold_leaves_only_door_spawns(sample_catalog):
    params = Params(s_room=1.5)  # above r_max: peaks can never fire
    focused, _ = run_agent(sample_catalog, params, "focused", 60, seed=5, target="granite")
    assert focused.rooms_created == 0
    wander, _ = run_agent(sample_catalog, params, "wanderer", 60, seed=5)
    assert wander.rooms_created > 0


def test_agent_deterministic_per_seed(sample_catalog):
    a, sa = run_agent(sample_catalog, None, "random", 80, seed=13)
    b, sb = run_agent(sample_catalog, None, "random", 80, seed=13)
    assert emit_metrics(a, "csv") == emit_metrics(b, "csv")
    assert json.dumps(sa.museum.to_jsonable(), sort_keys=True) == json.dumps(
        sb.museum.to_jsonable(), sort_keys=True
    )


def test_agent_argument_validation(sample_catalog):
    with pytest.raises(ValueError, match="policy"):
        run_agent(sample_catalog, None, "strut", 5)
    with pytest.raises(ValueError, match="steps"):
        run_agent(sample_catalog, None, "random", 0)
    with pytest.raises(ValueError, match="target"):
        run_agent(sample_catalog, None, "focused", 5, target="ghost")


# -- metrics ------------------------------------------------------------------


def test_metrics_consistency_unique_objects(sample_catalog):
    metrics, session = run_agent(sample_catalog, None, "random", 60, seed=3)
    union = set()
    for room in session.museum.rooms.values():
        union.update(p.object_id for p in room.contents.placed)
    assert metrics.unique_objects_exposed == len(union)
    assert 0.0 <= metrics.serendipity_ratio <= 1.0


def test_metrics_csv_round_trips(sample_catalog):
    metrics, _ = run_agent(sample_catalog, None, "random", 30, seed=3)
    text = emit_metrics(metrics, "csv")
    parsed = parse_metrics_csv(text)
    assert parsed.rooms_created == metrics.rooms_created
    assert parsed.unique_objects_exposed == metrics.unique_objects_exposed
    assert parsed.serendipity_ratio == metrics.serendipity_ratio


def test_metrics_table_fits_80_columns(sample_catalog):
    metrics, _ = run_agent(sample_catalog, None, "random", 30, seed=3)
    for line in emit_metrics(metrics, "table").splitlines():
        assert len(line) <= 80


def test_trajectories_csv_header_only_for_empty_run():
    metrics = RunMetrics(0, 0, 0.0, trajectories={"a": [], "b": []})
    text = trajectories_csv(metrics)
    assert text == "tick,a,b\n"


def test_trajectories_have_stable_column_order(sample_catalog):
    metrics, _ = run_script(sample_catalog, None, Script([]), ticks=3)
    header = trajectories_csv(metrics).splitlines()[0]
    assert header == "tick," + ",".join(sorted(sample_catalog.entities))


# -- golden regression -----------------------------------------------------------


def test_golden_run_reproduces_metrics_and_museum(tmp_path):
    catalog = load_catalog(sample_catalog_path())
    script = load_script(FIXTURES / "focused_script.json")
    metrics, session = run_script(catalog, None, script, seed=2024, ticks=40)
    paths = write_run_outputs(metrics, session, tmp_path)
    for name in ("metrics", "museum", "trajectories"):
        fresh = paths[name].read_bytes()
        golden = (GOLDENS / "focused_run" / paths[name].name).read_bytes()
        assert fresh == golden, f"{name} drifted from the golden run"


# -- CLI ---------------------------------------------------------------------------


def test_cli_run_with_outputs(tmp_path):
    runner = CliRunner()
    out = tmp_path / "out"
    result = runner.invoke(
        cli,
        [
            "run",
            "--catalog", str(sample_catalog_path()),
            "--script", str(FIXTURES / "focused_script.json"),
            "--seed", "2024", "--ticks", "40",
            "--out", str(out), "--csv",
        ],
    )
    assert result.exit_code == 0, result.output
    assert result.output.startswith("rooms_created,")
    assert (out / "museum.json").exists()


def test_cli_agent(tmp_path):
    runner = CliRunner()
    result = runner.invoke(
        cli,
        ["agent", "--policy", "random", "--catalog", str(sample_catalog_path()), "--steps", "20", "--seed", "3"],
    )
    assert result.exit_code == 0, result.output
    assert "rooms_created" in result.output


def test_cli_exit_code_2_on_validation_error(tmp_path):
    import subprocess
    import sys

    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    proc = subprocess.run(
        [sys.executable, "-m", "museum_explorer.cli", "run", "--catalog", str(bad), "--script", str(bad)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "error" in proc.stderr.lower()
