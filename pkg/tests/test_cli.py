import json
import os
import subprocess
import sys

import pytest

from blockcond import cli
from blockcond.config import render_config
from blockcond.fixtures import fixture_names, fixture_text, run_all_fixtures, run_fixture

from test_engine import too_small_level


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_ex42(capsys):
    code, out, _ = run(capsys, "analyze", "fixtures/ex42.json")
    assert code == 0
    assert "N_L(B) = 2, f_L = 21, case Squarefree, residual 1" in out


def test_analyze_ex98a(capsys):
    code, out, _ = run(capsys, "analyze", "ex98a")
    assert code == 0
    assert "non-integral; ideal = 𝔭₂·𝔭₇ with f(𝔭₂)=3" in out


def test_analyze_ex98_names_needed_override(capsys):
    code, out, _ = run(capsys, "analyze", "ex98")
    assert code == 0
    assert "indeterminate; v_7 ∈ [0, 2]" in out
    assert "needs override: chi = ε (conductor 7) at q = 7" in out


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "fixtures/ex98a.json")
    assert code == 0 and out.strip() == "A_f (dim 2) × A_{f⊗ε} (dim 1)"
    code, out, _ = run(capsys, "decompose", "genus2")
    assert out.strip() == "A_f^2 (dim 4)"


def test_levels_and_check(capsys):
    code, out, _ = run(capsys, "levels", "ex64")
    assert code == 0 and "override" in out and "R2" in out
    code, out, _ = run(capsys, "check", "gamma0-512")
    assert code == 0 and "Gamma0_P2eq4" in out and "closed form holds" in out
    code, out, _ = run(capsys, "check", "--json", "ex81")
    data = json.loads(out)
    assert data["case"] == "Unclassified" and data["residual"] == "3" and data["holds"] is None


def test_json_report_schema(capsys):
    code, out, _ = run(capsys, "analyze", "--json", "genus2")
    data = json.loads(out)
    assert data["schema"] == "blockcond.report/1"
    for key in ("norm_valuations", "splitting", "ideal", "integral", "generator", "case", "residual"):
        assert key in data
    assert data["generator"] == 2**10 * 3**8
    assert data["residual"] == {"num": 1, "den": 1}
    assert data["norm_valuations"] == {"2": 40, "3": 32}


def test_json_levels(capsys):
    code, out, _ = run(capsys, "levels", "--json", "ex98")
    data = json.loads(out)
    assert {"q": 7, "v": [0, 2], "rule": "R5"}.items() <= next(e for e in data["entries"] if e["v"] == [0, 2]).items()


def test_reports_are_deterministic(capsys):
    first = [run(capsys, "analyze", "--json", n)[1] for n in fixture_names()]
    second = [run(capsys, "analyze", "--json", n)[1] for n in fixture_names()]
    assert first == second
    env = dict(os.environ, PYTHONHASHSEED="12345")
    proc = subprocess.run(
        [sys.executable, "-m", "blockcond.cli", "analyze", "--json", "genus2"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert proc.stdout == first[fixture_names().index("genus2")]


def test_fixtures_command(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0
    assert f"{len(fixture_names())}/{len(fixture_names())} pass" in out
    code, out, _ = run(capsys, "fixtures", "--json")
    data = json.loads(out)
    assert data["passed"] == data["total"] and all(r["passed"] for r in data["results"])


def test_corrupted_fixture_is_a_named_failure(capsys, monkeypatch):
    data = json.loads(fixture_text("ex42"))
    data["expected"]["generator"] = 3
    bad = run_fixture("ex42-corrupted", data)
    assert not bad.passed and bad.diffs == ["generator: expected 3, got 2"]
    monkeypatch.setattr(cli, "run_all_fixtures", lambda: run_all_fixtures() + [bad])
    code, out, _ = run(capsys, "fixtures")
    assert code == 4
    assert "FAIL  ex42-corrupted" in out and "generator: expected 3, got 2" in out


def test_fixture_without_expected_fails():
    data = json.loads(fixture_text("ex42"))
    del data["expected"]
    assert not run_fixture("bare", data).passed


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate", "x"])
    assert info.value.code == 1
    code, _, err = run(capsys, "analyze", "no-such-file.json")
    assert code == 1 and "cannot read" in err


def test_validation_errors_exit_2(capsys, tmp_path):
    data = json.loads(fixture_text("ex42"))
    data["deg_F"] = 3
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "deg_F = 3 does not divide" in err
    data["deg_F"] = "three"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "/deg_F" in err


def test_inconsistent_input_exit_3(capsys, tmp_path):
    path = tmp_path / "small.json"
    path.write_text(render_config(too_small_level()))
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 3 and "inconsistent input" in err


def test_console_script_installed():
    proc = subprocess.run(["blockcond", "analyze", "ex42"], capture_output=True, text=True)
    assert proc.returncode == 0 and "f_L = 21" in proc.stdout
