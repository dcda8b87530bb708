"""Command-line entry point: ``blockcond {analyze,decompose,levels,check,fixtures}``.

Exit codes: 0 success, 1 usage, 2 invalid config, 3 inconsistent input,
4 fixture mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import parse_config
from .engine import analyze
from .errors import ConfigError, InconsistentInputError, ValidationError
from .fixtures import resolve_config_text, run_all_fixtures
from .levels import level_table
from .report import (
    decomposition_to_list,
    levels_to_dict,
    render_decomposition,
    render_levels,
    render_text,
    report_to_dict,
)

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_INCONSISTENT, EXIT_MISMATCH = range(5)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def _cmd_analyze(config, as_json: bool) -> str:
    report = analyze(config)
    return _dump(report_to_dict(report)) if as_json else render_text(report)


def _cmd_decompose(config, as_json: bool) -> str:
    dec = analyze(config).decomposition
    if as_json:
        return _dump({"schema": "blockcond.decomposition/1", "factors": decomposition_to_list(dec, config.nebentypus)})
    return render_decomposition(dec, config.nebentypus) + "\n"


def _cmd_levels(config, as_json: bool) -> str:
    table = level_table(config)
    return _dump(levels_to_dict(config, table)) if as_json else render_levels(config, table)


def _cmd_check(config, as_json: bool) -> str:
    cls = analyze(config).classification
    if as_json:
        return _dump(
            {
                "schema": "blockcond.check/1",
                "case": cls.case,
                "p2_size": cls.p2_size,
                "residual": None if cls.residual is None else str(cls.residual),
                "expected": None if cls.expected is None else str(cls.expected),
                "holds": cls.holds,
            }
        )
    if cls.holds is None:
        verdict = "no closed form to check" if cls.expected is None else "residual undetermined"
    else:
        verdict = "closed form holds" if cls.holds else "closed form FAILS"
    return (
        f"case {cls.case}, |P2| = {cls.p2_size}, residual {cls.residual}, "
        f"expected {cls.expected}: {verdict}\n"
    )


_COMMANDS = {
    "analyze": (_cmd_analyze, "conductor report for a newform config"),
    "decompose": (_cmd_decompose, "Res_{L/Q}(B) as a product of twists A_{f(x)chi}"),
    "levels": (_cmd_levels, "table of twist level exponents with the deciding rule"),
    "check": (_cmd_check, "compare the residual with the closed form for the case"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blockcond", description="Conductors of building blocks of modular abelian varieties.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="config JSON file, or the name of a bundled fixture")
        p.add_argument("--json", action="store_true", help="machine-readable output")
    p = sub.add_parser("fixtures", help="run every bundled fixture against its expected values")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def _run_fixtures(as_json: bool, out) -> int:
    results = run_all_fixtures()
    passed = sum(r.passed for r in results)
    if as_json:
        out.write(_dump({"passed": passed, "total": len(results), "results": [r.to_dict() for r in results]}))
    else:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}\n")
            for d in r.diffs:
                out.write(f"      {d}\n")
        out.write(f"{passed}/{len(results)} pass\n")
    return EXIT_OK if passed == len(results) else EXIT_MISMATCH


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out, err = sys.stdout, sys.stderr
    if args.command == "fixtures":
        return _run_fixtures(args.json, out)
    try:
        text = resolve_config_text(args.config)
    except OSError as exc:
        err.write(f"blockcond: cannot read {args.config}: {exc}\n")
        return EXIT_USAGE
    try:
        config = parse_config(text)
        handler = _COMMANDS[args.command][0]
        out.write(handler(config, args.json))
    except ValidationError as exc:
        err.write("blockcond: invalid inner-twist data\n")
        for d in exc.diagnostics:
            err.write(f"  - {d}\n")
        return EXIT_CONFIG
    except ConfigError as exc:
        err.write(f"blockcond: invalid config: {exc}\n")
        return EXIT_CONFIG
    except InconsistentInputError as exc:
        err.write(f"blockcond: {exc}\n")
        return EXIT_INCONSISTENT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
