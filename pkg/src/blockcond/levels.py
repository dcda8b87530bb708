"""Level exponents v_q(N_chi) of the twisted newforms f (x) chi, chi in G.

Each entry is decided by the first applicable rule:

override  externally supplied value (applies to the whole Galois orbit of chi)
R1        chi unramified at q: twisting does not move the q-part of the level
R2        chi_q equals chi_{s,q} for an inner twist s: same q-part as s(f), i.e. N
R3        N squarefree, q | f_eps, chi_q = eps_q^i: 1 for i in {0, n-1}, else 2
R4        eps trivial: v_q(N)
R5        interval [0, v_q(lcm(N, f_chi^2, f_chi f_{eps chi}))] from the Atkin-Li bound
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import TYPE_CHECKING

from sympy import factorint

from .dirichlet import DirichletCharacter, primary_component, valuation
from .errors import LevelConflictError
from .twists import orbits

if TYPE_CHECKING:
    from .config import NewformConfig


@dataclass(frozen=True, order=True)
class LevelExponent:
    """An exact non-negative exponent, or a closed interval of candidates."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, v: int) -> LevelExponent:
        return cls(v, v)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"interval {self} has no single value")
        return self.lo

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other: LevelExponent | int) -> LevelExponent:
        if isinstance(other, int):
            return LevelExponent(self.lo + other, self.hi + other)
        return LevelExponent(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other: int) -> LevelExponent:
        return LevelExponent(self.lo - other, self.hi - other)

    def __mul__(self, c: int) -> LevelExponent:
        if c < 0:
            raise ValueError("scaling by a negative factor")
        return LevelExponent(self.lo * c, self.hi * c)

    __rmul__ = __mul__

    def to_json(self) -> int | list[int]:
        return self.lo if self.is_exact else [self.lo, self.hi]

    def __str__(self) -> str:
        return str(self.lo) if self.is_exact else f"[{self.lo}, {self.hi}]"


def Exact(v: int) -> LevelExponent:
    return LevelExponent.exact(v)


def Interval(lo: int, hi: int) -> LevelExponent:
    return LevelExponent(lo, hi)


@dataclass(frozen=True)
class LevelEntry:
    value: LevelExponent
    rule: str


@dataclass(frozen=True)
class LevelTable:
    characters: tuple[DirichletCharacter, ...]
    primes: tuple[int, ...]
    entries: dict[tuple[DirichletCharacter, int], LevelEntry]

    def __getitem__(self, key: tuple[DirichletCharacter, int]) -> LevelEntry:
        return self.entries[key]

    def column(self, q: int) -> list[LevelEntry]:
        return [self.entries[chi, q] for chi in self.characters]

    def unresolved(self) -> list[tuple[DirichletCharacter, int, LevelExponent]]:
        return [
            (chi, q, self.entries[chi, q].value)
            for q in self.primes
            for chi in self.characters
            if not self.entries[chi, q].value.is_exact
        ]


def level_primes(config: NewformConfig) -> tuple[int, ...]:
    return tuple(sorted(factorint(config.level * config.group.conductor())))


def atkin_li_bound(config: NewformConfig, chi: DirichletCharacter, q: int) -> int:
    f = chi.conductor
    f_eps_chi = (config.nebentypus * chi).conductor
    return valuation(lcm(config.level, f * f, f * f_eps_chi), q)


def rule_chain(config: NewformConfig, chi: DirichletCharacter, q: int) -> LevelEntry:
    """The rule-derived value of v_q(N_chi), ignoring overrides."""
    vq = valuation(config.level, q)
    chi_q = primary_component(chi, q)
    if chi_q.is_trivial:
        return LevelEntry(Exact(vq), "R1")
    if any(primary_component(s.chi, q) == chi_q for s in config.twists):
        return LevelEntry(Exact(vq), "R2")

    eps = config.nebentypus
    squarefree = all(e == 1 for e in factorint(config.level).values())
    if squarefree and eps.conductor % q == 0:
        eps_q = primary_component(eps, q)
        n = eps_q.order
        for i in range(n):
            if eps_q**i == chi_q:
                return LevelEntry(Exact(1 if i in (0, n - 1) else 2), "R3")

    if eps.is_trivial:
        return LevelEntry(Exact(vq), "R4")
    return LevelEntry(Interval(0, atkin_li_bound(config, chi, q)), "R5")


def override_map(config: NewformConfig) -> dict[tuple[DirichletCharacter, int], int]:
    """Overrides spread over Galois orbits: s(f (x) chi) = f (x) (s . chi) has the same level."""
    orbit_of = {}
    for orbit in orbits(config.group, config.twists):
        for chi in orbit:
            orbit_of[chi] = orbit
    out: dict[tuple[DirichletCharacter, int], int] = {}
    for o in config.level_overrides:
        for chi in orbit_of.get(o.chi, (o.chi,)):
            prev = out.get((chi, o.q))
            if prev is not None and prev != o.v:
                raise LevelConflictError(
                    f"overrides disagree on the orbit of {chi!r} at q={o.q}: v={prev} and v={o.v}"
                )
            out[chi, o.q] = o.v
    return out


def _entry(config: NewformConfig, chi: DirichletCharacter, q: int, overrides: dict) -> LevelEntry:
    derived = rule_chain(config, chi, q)
    v = overrides.get((chi, q))
    if v is None:
        return derived
    if derived.value.is_exact:
        if derived.value.value == v:
            return derived
        raise LevelConflictError(
            f"override v_{q}(N_chi)={v} for {chi!r} conflicts with rule {derived.rule} "
            f"giving {derived.value.value}"
        )
    if v not in derived.value:
        raise LevelConflictError(
            f"override v_{q}(N_chi)={v} for {chi!r} lies outside the Atkin-Li bound {derived.value}"
        )
    return LevelEntry(Exact(v), "override")


def twist_level_exponent(config: NewformConfig, chi: DirichletCharacter, q: int) -> LevelExponent:
    if chi not in config.group:
        raise ValueError(f"{chi!r} is not in G")
    return _entry(config, chi, q, override_map(config)).value


def level_table(config: NewformConfig) -> LevelTable:
    overrides = override_map(config)
    chars = config.group.elements
    primes = level_primes(config)
    entries = {(chi, q): _entry(config, chi, q, overrides) for q in primes for chi in chars}
    return LevelTable(chars, primes, entries)
