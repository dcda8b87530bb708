"""Text and JSON renderings of conductor reports."""

from __future__ import annotations

import json
from fractions import Fraction

from .config import NewformConfig
from .dirichlet import DirichletCharacter
from .engine import ConductorReport
from .levels import LevelTable
from .twists import OrbitDecomposition

REPORT_SCHEMA = "blockcond.report/1"

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def character_name(chi: DirichletCharacter, eps: DirichletCharacter | None = None) -> str:
    """Short human name: 1, ε^i, χ_D for quadratic characters, else χ[f=..,o=..]."""
    if chi.is_trivial:
        return "1"
    if eps is not None and not eps.is_trivial:
        for i in range(1, eps.order):
            if eps**i == chi:
                return "ε" if i == 1 else f"ε^{i}"
    if chi.order == 2:
        sign = -1 if chi(2 * chi.modulus - 1) else 1
        return f"χ_{sign * chi.conductor}"
    return f"χ[f={chi.conductor},o={chi.order}]"


def variety_name(chi: DirichletCharacter, eps: DirichletCharacter, multiplicity: int = 1) -> str:
    base = "A_f" if chi.is_trivial else f"A_{{f⊗{character_name(chi, eps)}}}"
    return base if multiplicity == 1 else f"{base}^{multiplicity}"


def _fraction(x: Fraction | None) -> dict | None:
    return None if x is None else {"num": x.numerator, "den": x.denominator}


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decomposition_to_list(dec: OrbitDecomposition, eps: DirichletCharacter) -> list[dict]:
    return [
        {
            "representative": o.representative.to_json(),
            "name": variety_name(o.representative, eps),
            "members": [character_name(c, eps) for c in o.members],
            "size": o.size,
            "isotropy": list(o.isotropy),
            "dim": o.dim,
            "multiplicity": o.multiplicity,
        }
        for o in dec
    ]


def report_to_dict(report: ConductorReport) -> dict:
    cfg = report.config
    eps = cfg.nebentypus
    cls = report.classification
    return {
        "schema": REPORT_SCHEMA,
        "label": cfg.label,
        "level": cfg.level,
        "degree": cfg.degree,
        "dim_B": cfg.dim_B,
        "f_L": report.field_conductor,
        "discriminant": report.discriminant,
        "norm_valuations": {str(p.q): p.norm_exponent.to_json() for p in report.primes},
        "splitting": {
            str(p.q): {"e": p.splitting.e, "f": p.splitting.f, "g": p.splitting.g} for p in report.primes
        },
        "ideal": [
            {
                "q": p.q,
                "n": p.n,
                "e": p.splitting.e,
                "f": p.splitting.f,
                "g": p.splitting.g,
                "generator_exponent": p.generator_exponent,
            }
            for p in report.primes
            if p.n
        ],
        "integral": report.integral,
        "witness": report.witness,
        "generator": report.generator,
        "case": cls.case,
        "p2_size": cls.p2_size,
        "residual": _fraction(cls.residual),
        "expected_residual": _fraction(cls.expected),
        "closed_form_holds": cls.holds,
        "norm_residual": _fraction(report.norm_residual),
        "decomposition": decomposition_to_list(report.decomposition, eps),
        "unresolved": [
            {"chi": chi.to_json(), "name": character_name(chi, eps), "q": q, "interval": [v.lo, v.hi]}
            for chi, q, v in report.unresolved
        ],
    }


def ideal_text(report: ConductorReport) -> str:
    parts, notes = [], []
    for p in report.ideal:
        prime = "𝔭" + str(p.q).translate(_SUB)
        parts.append(prime + ("" if p.n == 1 else str(p.n).translate(_SUP)))
        if p.splitting.f > 1:
            notes.append(f"f({prime})={p.splitting.f}")
        if p.splitting.e > 1:
            notes.append(f"e({prime})={p.splitting.e}")
    text = "·".join(parts) or "(1)"
    return text + (f" with {', '.join(notes)}" if notes else "")


def summary_line(report: ConductorReport) -> str:
    cls = report.classification
    f_l = report.field_conductor
    if report.integral:
        res = _fraction_text(cls.residual) if cls.residual is not None else "?"
        return f"N_L(B) = {report.generator}, f_L = {f_l}, case {cls.case}, residual {res}"
    if report.integral is False:
        return f"non-integral; ideal = {ideal_text(report)}"
    bad = ", ".join(f"v_{p.q} ∈ {p.norm_exponent}" for p in report.primes if not p.norm_exponent.is_exact)
    return f"indeterminate; {bad}"


def render_text(report: ConductorReport) -> str:
    cfg = report.config
    eps = cfg.nebentypus
    lines = [
        f"{cfg.label or 'newform'}: N = {cfg.level}, [L:Q] = {cfg.degree}, f_L = {report.field_conductor}, "
        f"dim B = {cfg.dim_B}",
        summary_line(report),
    ]
    for p in report.primes:
        s = p.splitting
        row = f"  q = {p.q}: v(Norm) = {p.norm_exponent}, (e, f, g) = ({s.e}, {s.f}, {s.g})"
        if p.n is not None:
            row += f", n = {p.n}"
            if p.n and p.generator_exponent is not None:
                row += f", generator {p.q}^{p.generator_exponent}"
            elif p.n:
                row += ", not generated over Z"
        lines.append(row)
    if report.integral is False:
        lines.append(f"  witness q = {report.witness}: [L:Q] = {cfg.degree} does not divide v(Norm)")
    for chi, q, v in report.unresolved:
        lines.append(
            f"  needs override: chi = {character_name(chi, eps)} (conductor {chi.conductor}) at q = {q}, "
            f"v ∈ {v}  {json.dumps(chi.to_json())}"
        )
    return "\n".join(lines) + "\n"


def render_decomposition(dec: OrbitDecomposition, eps: DirichletCharacter) -> str:
    return " × ".join(f"{variety_name(o.representative, eps, o.multiplicity)} (dim {o.dim})" for o in dec)


def render_levels(config: NewformConfig, table: LevelTable) -> str:
    eps = config.nebentypus
    names = [character_name(chi, eps) for chi in table.characters]
    width = max(len(n) for n in names) + 2
    header = "chi".ljust(width) + "f_chi".rjust(6) + "".join(f"   v_{q}(N_chi)".ljust(18) for q in table.primes)
    lines = [header]
    for name, chi in zip(names, table.characters):
        row = name.ljust(width) + str(chi.conductor).rjust(6)
        for q in table.primes:
            e = table[chi, q]
            row += f"   {str(e.value)} [{e.rule}]".ljust(18)
        lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def levels_to_dict(config: NewformConfig, table: LevelTable) -> dict:
    eps = config.nebentypus
    return {
        "schema": "blockcond.levels/1",
        "primes": list(table.primes),
        "entries": [
            {
                "chi": chi.to_json(),
                "name": character_name(chi, eps),
                "q": q,
                "v": table[chi, q].value.to_json(),
                "rule": table[chi, q].rule,
            }
            for q in table.primes
            for chi in table.characters
        ],
    }
