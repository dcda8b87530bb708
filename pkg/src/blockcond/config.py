"""Newform configurations: the finite data describing f, its inner twists and
any externally known twist levels, plus the JSON schema they are read from."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import jsonschema
from sympy import isprime

from .dirichlet import DirichletCharacter, evaluate
from .errors import ConfigError, ValidationError
from .group import CharacterGroup
from .twists import GaloisElement, InnerTwistStructure, validate_structure

SCHEMA_VERSION = "blockcond.config/1"

_CHARACTER = {
    "type": "object",
    "required": ["local"],
    "properties": {
        "local": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["p", "k"],
                "properties": {
                    "p": {"type": "integer", "minimum": 2},
                    "k": {"type": "integer", "minimum": 1},
                    "gen_exp": {"type": "integer"},
                    "minus_one_exp": {"type": "integer"},
                    "five_exp": {"type": "integer"},
                },
                "additionalProperties": False,
            },
        }
    },
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["level", "nebentypus", "dim_Af", "deg_F", "schur_index", "inner_twists"],
    "properties": {
        "label": {"type": "string"},
        "level": {"type": "integer", "minimum": 1},
        "nebentypus": _CHARACTER,
        "dim_Af": {"type": "integer", "minimum": 1},
        "deg_F": {"type": "integer", "minimum": 1},
        "schur_index": {"enum": [1, 2]},
        "inner_twists": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["chi"],
                "properties": {
                    "label": {"type": "string"},
                    "chi": _CHARACTER,
                    "galois_exp": {"type": "integer"},
                },
                "additionalProperties": False,
            },
        },
        "level_overrides": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["chi", "q", "v"],
                "properties": {
                    "chi": _CHARACTER,
                    "q": {"type": "integer", "minimum": 2},
                    "v": {"type": "integer", "minimum": 0},
                    "source": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "expected": {"type": "object"},
        "provenance": {"type": "object"},
        "notes": {"type": "string"},
    },
    "additionalProperties": False,
}

_EXTRA_KEYS = ("expected", "provenance", "notes")


@dataclass(frozen=True)
class LevelOverride:
    """Externally known value of v_q(N_chi), the level exponent of f (x) chi."""

    chi: DirichletCharacter
    q: int
    v: int
    source: str = ""

    def to_json(self) -> dict:
        out: dict[str, Any] = {"chi": self.chi.to_json(), "q": self.q, "v": self.v}
        if self.source:
            out["source"] = self.source
        return out


@dataclass(frozen=True)
class NewformConfig:
    level: int
    nebentypus: DirichletCharacter
    dim_Af: int
    deg_F: int
    schur_index: int
    twists: InnerTwistStructure
    level_overrides: tuple[LevelOverride, ...] = ()
    label: str = ""
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def dim_B(self) -> int:
        return self.schur_index * self.deg_F

    @property
    def n(self) -> int:
        """Exponent in A_f ~ B^n over L."""
        return self.dim_Af // self.dim_B

    @cached_property
    def group(self) -> CharacterGroup:
        return self.twists.group

    @property
    def degree(self) -> int:
        """[L:Q]."""
        return self.group.order

    def with_overrides(self, overrides) -> NewformConfig:
        return NewformConfig(
            self.level, self.nebentypus, self.dim_Af, self.deg_F, self.schur_index,
            self.twists, tuple(overrides), self.label, dict(self.extra),
        )


def config_diagnostics(config: NewformConfig) -> list[str]:
    diags = []
    eps = config.nebentypus
    if config.level % eps.conductor:
        diags.append(f"nebentypus: conductor {eps.conductor} does not divide N = {config.level}")
    if evaluate(eps, 2 * config.level - 1) not in (None, 0):
        # -1 is represented by 2N - 1, a unit for every modulus dividing N
        diags.append("nebentypus: eps(-1) must be 1 for weight two")
    if config.dim_Af % config.deg_F:
        diags.append(f"degrees: deg_F = {config.deg_F} does not divide dim_Af = {config.dim_Af}")
    elif config.dim_Af % config.dim_B:
        diags.append(f"degrees: dim B = {config.dim_B} does not divide dim_Af = {config.dim_Af}")
    else:
        diags.extend(validate_structure(config.twists, config.group, config))
    for i, o in enumerate(config.level_overrides):
        if o.chi not in config.group:
            diags.append(f"level_overrides/{i}: character is not in G")
        if (config.level * config.group.conductor()) % o.q:
            diags.append(f"level_overrides/{i}: q = {o.q} does not divide N * f_L")
    return diags


def validate_config(config: NewformConfig) -> NewformConfig:
    diags = config_diagnostics(config)
    if diags:
        raise ValidationError(diags)
    return config


def _character(data: dict, pointer: str) -> DirichletCharacter:
    try:
        return DirichletCharacter.from_json(data).primitive()
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc), pointer) from None


def config_from_dict(data: dict, validate: bool = True) -> NewformConfig:
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        pointer = "/" + "/".join(str(p) for p in err.absolute_path)
        raise ConfigError(err.message, pointer)

    elements = []
    for i, item in enumerate(data["inner_twists"]):
        chi = _character(item["chi"], f"/inner_twists/{i}/chi")
        elements.append(GaloisElement(item.get("label", f"s{i}"), chi, item.get("galois_exp", 1)))
    overrides = []
    for i, item in enumerate(data.get("level_overrides", [])):
        if not isprime(item["q"]):
            raise ConfigError(f"{item['q']} is not prime", f"/level_overrides/{i}/q")
        chi = _character(item["chi"], f"/level_overrides/{i}/chi")
        overrides.append(LevelOverride(chi, item["q"], item["v"], item.get("source", "")))
    config = NewformConfig(
        level=data["level"],
        nebentypus=_character(data["nebentypus"], "/nebentypus"),
        dim_Af=data["dim_Af"],
        deg_F=data["deg_F"],
        schur_index=data["schur_index"],
        twists=InnerTwistStructure.from_elements(elements),
        level_overrides=tuple(overrides),
        label=data.get("label", ""),
        extra={k: data[k] for k in _EXTRA_KEYS if k in data},
    )
    return validate_config(config) if validate else config


def parse_config(text: str, validate: bool = True) -> NewformConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    return config_from_dict(data, validate)


def config_to_dict(config: NewformConfig) -> dict:
    out: dict[str, Any] = {
        "label": config.label,
        "level": config.level,
        "nebentypus": config.nebentypus.to_json(),
        "dim_Af": config.dim_Af,
        "deg_F": config.deg_F,
        "schur_index": config.schur_index,
        "inner_twists": config.twists.to_json(),
        "level_overrides": [o.to_json() for o in config.level_overrides],
    }
    out.update(config.extra)
    return out


def render_config(config: NewformConfig) -> str:
    return json.dumps(config_to_dict(config), indent=2, ensure_ascii=False) + "\n"
