"""Bundled newform fixtures and the golden comparison against published values."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .config import NewformConfig, config_from_dict
from .engine import analyze
from .errors import BlockcondError
from .report import report_to_dict


def fixture_names() -> list[str]:
    root = resources.files("blockcond") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_text(name: str) -> str:
    return (resources.files("blockcond") / "fixtures" / f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name: str) -> NewformConfig:
    return config_from_dict(json.loads(fixture_text(name)))


def resolve_config_text(path_or_name: str) -> str:
    """Read a config file, falling back to a bundled fixture of the same stem."""
    path = Path(path_or_name)
    if path.exists():
        return path.read_text(encoding="utf-8")
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    if stem in fixture_names():
        return fixture_text(stem)
    raise FileNotFoundError(path_or_name)


def _actual_values(report: dict) -> dict:
    vals = dict(report)
    if report["residual"] is not None:
        r = report["residual"]
        vals["residual"] = str(r["num"]) if r["den"] == 1 else f"{r['num']}/{r['den']}"
    vals["ideal"] = [{k: e[k] for k in ("q", "n", "e", "f", "g")} for e in report["ideal"]]
    vals["decomposition"] = [
        {"dim": o["dim"], "multiplicity": o["multiplicity"], "size": o["size"]} for o in report["decomposition"]
    ]
    return vals


def compare(expected: dict, report: dict) -> list[str]:
    """One message per expected key whose computed value differs."""
    actual = _actual_values(report)
    diffs = []
    for key, want in sorted(expected.items()):
        got = actual.get(key, "<missing>")
        if got != want:
            diffs.append(f"{key}: expected {want!r}, got {got!r}")
    return diffs


@dataclass
class FixtureResult:
    name: str
    passed: bool
    diffs: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "diffs": self.diffs}


def run_fixture(name: str, data: dict | None = None) -> FixtureResult:
    try:
        data = data if data is not None else json.loads(fixture_text(name))
        config = config_from_dict(data)
        report = report_to_dict(analyze(config))
    except (BlockcondError, ValueError, KeyError) as exc:
        return FixtureResult(name, False, [f"{type(exc).__name__}: {exc}"])
    expected = data.get("expected")
    if not expected:
        return FixtureResult(name, False, ["fixture has no expected values"])
    diffs = compare(expected, report)
    return FixtureResult(name, not diffs, diffs)


def run_all_fixtures() -> list[FixtureResult]:
    return [run_fixture(name) for name in fixture_names()]
