"""Conductor of the building block B over L from the twist levels.

Milne's formula for Res_{L/Q}(B), Carayol's theorem for each A_{f (x) chi}
and the conductor-discriminant formula combine into one equation per prime::

    v_q(Norm N_L(B)) = dim B * sum_chi v_q(N_chi) - 2 dim B * sum_chi v_q(f_chi)

Every prime of L above q carries the same exponent n_q, so
``v_q(Norm) = n_q f_q g_q`` and N_L(B) is generated by a rational integer
exactly when e_q | n_q for all q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

from sympy import factorint

from .dirichlet import DirichletCharacter, valuation
from .errors import InconsistentInputError, IndeterminateError
from .group import SplittingData
from .levels import LevelExponent, LevelTable, level_primes, level_table
from .twists import OrbitDecomposition, orbit_decomposition

if TYPE_CHECKING:
    from .config import NewformConfig

CASES = (
    "OddN_OrdLeq2",
    "Squarefree",
    "Gamma0_P2le2",
    "Gamma0_P2eq4",
    "DimAf2_Quadratic",
    "Unclassified",
)


def norm_conductor_exponent(
    config: NewformConfig, q: int, table: LevelTable | None = None
) -> LevelExponent:
    """v_q of the norm to Q of N_L(B); an interval when some level is."""
    group = config.group
    if table is None or q not in table.primes:
        if (config.level * group.conductor()) % q:
            return LevelExponent.exact(0)
        table = level_table(config)
    dim_b = config.dim_B
    level_sum = sum((e.value for e in table.column(q)), LevelExponent.exact(0))
    cond_sum = sum(valuation(chi.conductor, q) for chi in group)
    raw = level_sum * dim_b - 2 * dim_b * cond_sum
    if raw.hi < 0:
        raise InconsistentInputError(
            f"inconsistent input: v_{q}(Norm N_L(B)) would be {raw} < 0 "
            f"(dim B * {level_sum} - 2 * dim B * {cond_sum})"
        )
    return LevelExponent(max(raw.lo, 0), raw.hi)


@dataclass(frozen=True)
class IdealFactor:
    """Primes of L above q, each with exponent n in N_L(B)."""

    q: int
    splitting: SplittingData
    n: int

    @property
    def generator_exponent(self) -> int | None:
        """n/e when the q-part is generated by a power of q, else None."""
        e = self.splitting.e
        return self.n // e if self.n % e == 0 else None


@dataclass(frozen=True)
class Integrality:
    integral: bool
    witness: int | None = None


def _norm_exponents(config: NewformConfig, table: LevelTable | None = None) -> dict[int, LevelExponent]:
    table = table or level_table(config)
    return {q: norm_conductor_exponent(config, q, table) for q in table.primes}


def integrality(config: NewformConfig, table: LevelTable | None = None) -> Integrality:
    """Is N_L(B) generated by a rational integer?  Witness: first failing prime."""
    degree = config.degree
    undecided = []
    for q, v in _norm_exponents(config, table).items():
        multiples = [x for x in range(v.lo, v.hi + 1) if x % degree == 0]
        if not multiples:
            return Integrality(False, q)
        if len(multiples) != v.hi - v.lo + 1:
            undecided.append(q)
    if undecided:
        raise IndeterminateError(
            f"indeterminate: v_q(Norm N_L(B)) at q in {undecided} is only known as an interval"
        )
    return Integrality(True)


def ideal_factorization(config: NewformConfig, table: LevelTable | None = None) -> list[IdealFactor]:
    out = []
    for q, v in _norm_exponents(config, table).items():
        if not v.is_exact:
            raise IndeterminateError(f"indeterminate: v_{q}(Norm N_L(B)) in {v}")
        split = config.group.splitting(q)
        fg = split.f * split.g
        if v.value % fg:
            raise InconsistentInputError(
                f"inconsistent input: v_{q}(Norm N_L(B)) = {v.value} is not a multiple of f*g = {fg}"
            )
        if v.value:
            out.append(IdealFactor(q, split, v.value // fg))
    return out


def p2_size(config: NewformConfig) -> int:
    return len(config.group.primary_parts(2))


def classify_case(config: NewformConfig) -> str:
    """Which proved global formula (if any) applies to this newform."""
    level = config.level
    eps_order = config.nebentypus.order
    if level % 2 and eps_order <= 2:
        return "OddN_OrdLeq2"
    if all(e == 1 for e in factorint(level).values()):
        return "Squarefree"
    if config.nebentypus.is_trivial:
        return "Gamma0_P2eq4" if p2_size(config) == 4 else "Gamma0_P2le2"
    if config.dim_Af == 2 and eps_order <= 2 and config.degree == 2:
        return "DimAf2_Quadratic"
    return "Unclassified"


def expected_residual(config: NewformConfig, case: str) -> Fraction | None:
    # the factor 2 in the |P_2| = 4 case enters once per dimension of B
    if case == "Unclassified":
        return None
    if case == "Gamma0_P2eq4":
        return Fraction(2**config.dim_B)
    return Fraction(1)


@dataclass(frozen=True)
class Classification:
    case: str
    p2_size: int
    residual: Fraction | None
    expected: Fraction | None

    @property
    def holds(self) -> bool | None:
        if self.expected is None or self.residual is None:
            return None
        return self.residual == self.expected


def classify(config: NewformConfig, table: LevelTable | None = None) -> Classification:
    case = classify_case(config)
    residual = None
    try:
        if integrality(config, table).integral:
            gen = generator(ideal_factorization(config, table))
            residual = Fraction(config.level**config.dim_B, gen * config.group.conductor() ** config.dim_B)
    except IndeterminateError:
        pass
    return Classification(case, p2_size(config), residual, expected_residual(config, case))


def generator(factors: list[IdealFactor]) -> int:
    out = 1
    for fac in factors:
        if fac.generator_exponent is None:
            raise ValueError(f"the {fac.q}-part is not generated by a rational integer")
        out *= fac.q**fac.generator_exponent
    return out


def good_reduction(config: NewformConfig) -> tuple[list[int], list[int]]:
    """(bad, good) primes among the divisors of a squarefree level."""
    factors = factorint(config.level)
    if any(e > 1 for e in factors.values()):
        raise ValueError(f"remark inapplicable: N = {config.level} is not squarefree")
    f_eps = config.nebentypus.conductor
    bad = [q for q in sorted(factors) if f_eps % q]
    good = [q for q in sorted(factors) if f_eps % q == 0]
    return bad, good


@dataclass(frozen=True)
class PrimeReport:
    q: int
    norm_exponent: LevelExponent
    splitting: SplittingData
    n: int | None
    generator_exponent: int | None


@dataclass(frozen=True)
class ConductorReport:
    config: NewformConfig
    table: LevelTable
    primes: tuple[PrimeReport, ...]
    integral: bool | None
    witness: int | None
    generator: int | None
    classification: Classification
    decomposition: OrbitDecomposition
    norm_residual: Fraction | None
    unresolved: tuple[tuple[DirichletCharacter, int, LevelExponent], ...] = field(default=())

    @property
    def field_conductor(self) -> int:
        return self.config.group.conductor()

    @property
    def discriminant(self) -> int:
        return self.config.group.discriminant()

    def prime(self, q: int) -> PrimeReport:
        for p in self.primes:
            if p.q == q:
                return p
        raise KeyError(q)

    @property
    def ideal(self) -> list[PrimeReport]:
        return [p for p in self.primes if p.n]


def analyze(config: NewformConfig) -> ConductorReport:
    table = level_table(config)
    norms = _norm_exponents(config, table)
    primes = []
    for q in level_primes(config):
        v = norms[q]
        split = config.group.splitting(q)
        n = gen_exp = None
        if v.is_exact:
            fg = split.f * split.g
            if v.value % fg:
                raise InconsistentInputError(
                    f"inconsistent input: v_{q}(Norm N_L(B)) = {v.value} is not a multiple of f*g = {fg}"
                )
            n = v.value // fg
            gen_exp = n // split.e if n % split.e == 0 else None
        primes.append(PrimeReport(q, v, split, n, gen_exp))

    try:
        verdict = integrality(config, table)
        integral, witness = verdict.integral, verdict.witness
    except IndeterminateError:
        integral, witness = None, None
    gen = generator(ideal_factorization(config, table)) if integral else None

    norm_residual = None
    if all(p.norm_exponent.is_exact for p in primes):
        d, dim_b = config.degree, config.dim_B
        norm = 1
        for p in primes:
            norm *= p.q**p.norm_exponent.value
        norm_residual = Fraction(config.level ** (dim_b * d), norm * config.group.conductor() ** (dim_b * d))

    return ConductorReport(
        config=config,
        table=table,
        primes=tuple(primes),
        integral=integral,
        witness=witness,
        generator=gen,
        classification=classify(config, table),
        decomposition=orbit_decomposition(config.group, config.twists, config),
        norm_residual=norm_residual,
        unresolved=tuple(table.unresolved()),
    )


def valuation_identity_defect(config: NewformConfig, q: int, shift: int = 0) -> int:
    """v_q(Norm) + [L:Q] dim B (v_q(f_L) + shift) - [L:Q] dim B v_q(N); 0 when the identity holds."""
    v = norm_conductor_exponent(config, q).value
    scale = config.degree * config.dim_B
    return v + scale * (valuation(config.group.conductor(), q) + shift) - scale * valuation(config.level, q)

