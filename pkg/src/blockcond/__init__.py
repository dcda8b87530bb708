"""Conductors of building blocks of non-CM modular abelian varieties from inner-twist data."""

from .config import LevelOverride, NewformConfig, config_from_dict, parse_config, render_config
from .dirichlet import DirichletCharacter, LocalCharacter, conductor, evaluate, kronecker_character
from .engine import analyze, classify, ideal_factorization, integrality, norm_conductor_exponent
from .errors import (
    BlockcondError,
    ConfigError,
    InconsistentInputError,
    IndeterminateError,
    LevelConflictError,
    ValidationError,
)
from .group import CharacterGroup, generate_group
from .levels import Exact, Interval, LevelExponent, level_table, twist_level_exponent
from .twists import GaloisElement, InnerTwistStructure, act, orbit_decomposition

__all__ = [
    "BlockcondError",
    "CharacterGroup",
    "ConfigError",
    "DirichletCharacter",
    "Exact",
    "GaloisElement",
    "InconsistentInputError",
    "IndeterminateError",
    "InnerTwistStructure",
    "Interval",
    "LevelConflictError",
    "LevelExponent",
    "LevelOverride",
    "LocalCharacter",
    "NewformConfig",
    "ValidationError",
    "act",
    "analyze",
    "classify",
    "conductor",
    "config_from_dict",
    "evaluate",
    "generate_group",
    "ideal_factorization",
    "integrality",
    "kronecker_character",
    "level_table",
    "norm_conductor_exponent",
    "orbit_decomposition",
    "parse_config",
    "render_config",
    "twist_level_exponent",
]
