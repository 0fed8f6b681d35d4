import json
import os
import subprocess
import sys

import pytest

from strat_euler import load_entry
from strat_euler.catalog import _fixture_dir
from strat_euler.cli import main


def fixture_path(name):
    return str(_fixture_dir() / f"{name}.json")


def run_cli(*args, **kw):
    env = dict(os.environ, STRAT_EULER_COLOR="0")
    return subprocess.run(
        [sys.executable, "-m", "strat_euler", *args],
        capture_output=True,
        text=True,
        env=env,
        **kw,
    )


def test_check_passes_on_a_shipped_census(capsys):
    code = main(["check", fixture_path("node-linear")])
    out = capsys.readouterr().out
    assert code == 0
    assert "0 failed" in out
    assert "FAIL" not in out


def test_check_fails_on_an_inconsistent_census(tmp_path, capsys):
    doc = load_entry("node-linear").raw
    doc = json.loads(json.dumps(doc))
    doc["fibration"]["fiber_chi"]["V2"]["generic"] = 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code = main(["check", str(bad)])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out


def test_schema_problems_exit_2(capsys):
    code = main(["check", "/nonexistent/file.json"])
    err = capsys.readouterr().err
    assert code == 2
    assert "error:" in err


def test_check_with_hyperplane_slice(capsys):
    code = main(
        [
            "check",
            fixture_path("broughton"),
            "--hyperplane",
            fixture_path("broughton-slice"),
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "hyperplane_step [a=0]: LHS=-2 RHS=-2 OK" in out


def test_compute_subcommands(capsys):
    assert main(["compute", fixture_path("node-linear"), "--what", "eu-global"]) == 0
    assert "Eu(X) = 2" in capsys.readouterr().out

    assert main(["compute", fixture_path("cusp-linear"), "--what", "eu-table"]) == 0
    out = capsys.readouterr().out
    assert "V1" in out and "V2" in out

    assert (
        main(["compute", fixture_path("cusp-linear"), "--what", "brasselet", "--at", "v1"])
        == 0
    )
    assert "B(v1) = 2" in capsys.readouterr().out

    assert main(["compute", fixture_path("broughton"), "--what", "lambda", "--at", "0"]) == 0
    assert "lambda(0) = -1" in capsys.readouterr().out

    assert main(["compute", fixture_path("broughton"), "--what", "binf", "--at", "0"]) == 0
    assert "Binf(0) = -1" in capsys.readouterr().out

    assert main(["compute", fixture_path("broughton"), "--what", "detect-irregular"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_compute_falls_back_to_generic_with_a_note(capsys):
    code = main(
        ["compute", fixture_path("zk-4"), "--what", "brasselet", "--at", "17"]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert "B(generic) = 4" in captured.out
    assert "generic" in captured.err


def test_solve_round_trip_through_files(tmp_path, capsys):
    doc = json.loads(json.dumps(load_entry("node-linear").raw))
    del doc["fibration"]["fiber_chi"]["V2"]["generic"]
    hole = tmp_path / "hole.json"
    hole.write_text(json.dumps(doc))
    out_file = tmp_path / "filled.json"

    code = main(
        [
            "solve",
            str(hole),
            "--identity",
            "thm_generic_fiber",
            "--unknown",
            "fiber_chi.V2.generic",
            "--emit-completed",
            str(out_file),
        ]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert "fiber_chi.V2.generic = 2" in captured.out

    filled = json.loads(out_file.read_text())
    assert filled["fibration"]["fiber_chi"]["V2"]["generic"] == 2
    assert main(["check", str(out_file)]) == 0
    assert "0 failed" in capsys.readouterr().out


def test_solve_structural_identity_exits_2(tmp_path, capsys):
    doc = json.loads(json.dumps(load_entry("zk-2").raw))
    del doc["fibration"]["fiber_chi"]["V1"]["generic"]
    hole = tmp_path / "hole.json"
    hole.write_text(json.dumps(doc))
    code = main(
        [
            "solve",
            str(hole),
            "--identity",
            "bdk_global_1",
            "--unknown",
            "fiber_chi.V1.generic",
            "--at",
            "0",
        ]
    )
    captured = capsys.readouterr()
    assert code == 2
    assert "arbitrary census data" in captured.err


def test_fubini_bundle(tmp_path, capsys):
    bundle = {
        "complex_src": {"simplices": [[0], [1], [2], [0, 1], [1, 2], [0, 2]]},
        "complex_dst": {"simplices": [[0], [1], [0, 1]]},
        "vertex_map": {"0": 0, "1": 1, "2": 0},
        "weights": [[[0, 1], 2], [[1, 2], -1], [[2], 5]],
    }
    f = tmp_path / "bundle.json"
    f.write_text(json.dumps(bundle))
    assert main(["fubini", str(f)]) == 0
    out = capsys.readouterr().out
    assert "lhs = 4" in out and "rhs = 4" in out and "OK" in out

    bundle["complex_src"]["simplices"].remove([1])
    f.write_text(json.dumps(bundle))
    assert main(["fubini", str(f)]) == 2


def test_catalog_subcommand(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "zk-2" in out

    assert main(["catalog", "run", "zk-2", "zk-3"]) == 0
    out = capsys.readouterr().out
    assert "2/2 catalog entries verified" in out

    assert main(["catalog", "run", "missing-name"]) == 2
    assert "error:" in capsys.readouterr().err


def test_console_process_has_no_color_when_disabled():
    proc = run_cli("check", fixture_path("zk-2"))
    assert proc.returncode == 0
    assert "\x1b[" not in proc.stdout
    assert proc.stdout.endswith("0 skipped\n")


def test_module_invocation_reports_usage_errors():
    proc = run_cli("compute", fixture_path("zk-2"))
    assert proc.returncode != 0
