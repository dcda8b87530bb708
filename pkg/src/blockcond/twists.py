"""Inner twists: the group Gal(E/F), its twist characters and its action on G.

An element s of Gal(E/F) is recorded by the character chi_s with
``s(f) = f (x) chi_s`` and one integer ``galois_exp`` e_s: s acts on the
values of every character of G as the power map, ``s(chi) = chi**e_s``.  With
that convention composition reads ``(s o t) = (chi_s * chi_t**e_s, e_s*e_t)``
and the action on G is ``s . chi = chi_s * chi**e_s``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import TYPE_CHECKING, Iterable

from sympy import factorint

from .dirichlet import DirichletCharacter, primary_component
from .group import CharacterGroup, generate_group

if TYPE_CHECKING:
    from .config import NewformConfig


@dataclass(frozen=True)
class GaloisElement:
    label: str
    chi: DirichletCharacter
    galois_exp: int = 1

    def to_json(self) -> dict:
        return {"label": self.label, "chi": self.chi.to_json(), "galois_exp": self.galois_exp}


@dataclass(frozen=True)
class InnerTwistStructure:
    """The elements of Gal(E/F) with their twist data; identity first."""

    elements: tuple[GaloisElement, ...]

    @classmethod
    def from_elements(cls, elements: Iterable[GaloisElement]) -> InnerTwistStructure:
        """Normalize characters and exponents; add the identity if missing."""
        elems = [GaloisElement(s.label, s.chi.primitive(), s.galois_exp) for s in elements]
        m = generate_group(s.chi for s in elems).exponent
        elems = [GaloisElement(s.label, s.chi, _reduce_exp(s.galois_exp, m)) for s in elems]
        ident = [s for s in elems if s.chi.is_trivial]
        if not ident:
            elems.insert(0, GaloisElement("1", DirichletCharacter.trivial(), 1))
        else:
            elems.remove(ident[0])
            elems.insert(0, ident[0])
        return cls(tuple(elems))

    @classmethod
    def trivial(cls) -> InnerTwistStructure:
        return cls.from_elements([])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> GaloisElement:
        return self.elements[0]

    @cached_property
    def group(self) -> CharacterGroup:
        return generate_group(s.chi for s in self.elements)

    @property
    def modulus(self) -> int:
        """Exponents e_s are taken modulo the exponent of G."""
        return self.group.exponent

    @cached_property
    def _by_chi(self) -> dict[DirichletCharacter, GaloisElement]:
        return {s.chi: s for s in self.elements}

    def element(self, label: str) -> GaloisElement:
        for s in self.elements:
            if s.label == label:
                return s
        raise KeyError(label)

    def find(self, chi: DirichletCharacter) -> GaloisElement | None:
        return self._by_chi.get(chi)

    def compose_data(self, s: GaloisElement, t: GaloisElement) -> tuple[DirichletCharacter, int]:
        """Twist character and exponent that s o t must carry."""
        return s.chi * t.chi**s.galois_exp, _reduce_exp(s.galois_exp * t.galois_exp, self.modulus)

    def compose(self, s: GaloisElement, t: GaloisElement) -> GaloisElement:
        chi, e = self.compose_data(s, t)
        u = self.find(chi)
        if u is None or u.galois_exp != e:
            raise ValueError(f"{s.label} o {t.label} is not an element of the structure")
        return u

    def act(self, s: GaloisElement, chi: DirichletCharacter) -> DirichletCharacter:
        return act(s, chi, self.group)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.elements]


def _reduce_exp(e: int, m: int) -> int:
    return e % m if m > 1 else 1


def act(s: GaloisElement, chi: DirichletCharacter, group: CharacterGroup | None = None) -> DirichletCharacter:
    """s . chi = chi_s * s(chi)."""
    out = s.chi * chi**s.galois_exp
    if group is not None and out not in group:
        raise ValueError(f"{s.label} . {chi!r} leaves the character group")
    return out


def validate_structure(
    twists: InnerTwistStructure, group: CharacterGroup, config: NewformConfig
) -> list[str]:
    """Diagnostics for every failed consistency check; empty means valid."""
    diags: list[str] = []
    m = twists.modulus
    level = config.level
    eps = config.nebentypus

    if not twists.identity.chi.is_trivial or twists.identity.galois_exp % m != 1 % m:
        diags.append("identity: element with trivial character must have exponent 1")
    seen: dict[DirichletCharacter, str] = {}
    for s in twists:
        if gcd(s.galois_exp, m) != 1:
            diags.append(f"exponent: {s.label} has galois_exp {s.galois_exp} not prime to {m}")
        if s.chi in seen:
            diags.append(f"duplicate: {seen[s.chi]} and {s.label} share the same twist character")
        seen.setdefault(s.chi, s.label)
        bad = [p for p in factorint(s.chi.conductor) if level % p]
        if bad:
            diags.append(
                f"conductor not supported on N: chi_{s.label} has conductor {s.chi.conductor}, "
                f"prime(s) {bad} do not divide N = {level}"
            )

    for s in twists:
        for t in twists:
            chi, e = twists.compose_data(s, t)
            u = twists.find(chi)
            if u is None:
                diags.append(f"closure: {s.label} o {t.label} has character {chi!r}, not in the structure")
            elif u.galois_exp != e:
                diags.append(
                    f"cocycle: {s.label} o {t.label} = {u.label} needs galois_exp {e}, got {u.galois_exp}"
                )

    expected = config.dim_Af // config.deg_F if config.deg_F else None
    if expected is not None and len(twists) != expected:
        diags.append(f"cardinality: |Gal(E/F)| = {len(twists)} but dim_Af/deg_F = {expected}")

    if set(group.elements) != set(twists.group.elements):
        diags.append("group: G is not the group generated by the twist characters")

    # twist relation chi_s^2 = s(eps)/eps, and complex conjugation twists by eps^-1
    if eps.order > 1 and twists.find(~eps) is None:
        diags.append("nebentypus: eps^-1 must occur as a twist character (complex conjugation)")
    if m % eps.order == 0:
        for s in twists:
            if s.chi**2 != eps ** (s.galois_exp - 1):
                diags.append(f"twist relation: chi_{s.label}^2 != eps^(e_s - 1) for {s.label}")
    else:
        diags.append(f"nebentypus: order {eps.order} of eps does not divide the exponent {m} of G")

    # for squarefree N each chi_{s,q} is 1 or eps_q^-1 at q | f_eps
    factors = factorint(level)
    if all(v == 1 for v in factors.values()):
        for q in factorint(eps.conductor):
            allowed = {DirichletCharacter.trivial(), ~primary_component(eps, q)}
            for s in twists:
                if primary_component(s.chi, q) not in allowed:
                    diags.append(
                        f"squarefree level: chi_{s.label} has {q}-part outside {{1, eps_{q}^-1}}"
                    )
        # twisting at q || N with eps unramified would raise the level to q^2
        for s in twists:
            bad = [q for q in factorint(s.chi.conductor) if eps.conductor % q]
            if bad:
                diags.append(f"squarefree level: chi_{s.label} is ramified at {bad}, where eps is not")
    return diags


@dataclass(frozen=True)
class Orbit:
    representative: DirichletCharacter
    members: tuple[DirichletCharacter, ...]
    isotropy: tuple[str, ...]
    dim: int
    multiplicity: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrbitDecomposition:
    """Res_{L/Q}(B) ~ prod over orbits of (A_{f (x) chi})^t."""

    orbits: tuple[Orbit, ...]

    def __iter__(self):
        return iter(self.orbits)

    def __len__(self) -> int:
        return len(self.orbits)

    def orbit_of(self, chi: DirichletCharacter) -> Orbit:
        for o in self.orbits:
            if chi in o.members:
                return o
        raise KeyError(chi)

    @property
    def total_dimension(self) -> int:
        return sum(o.multiplicity * o.dim for o in self.orbits)


def orbits(group: CharacterGroup, twists: InnerTwistStructure) -> list[tuple[DirichletCharacter, ...]]:
    """Orbits of the action on G, each sorted, listed by representative."""
    remaining = set(group.elements)
    out = []
    for chi in group.elements:
        if chi not in remaining:
            continue
        orbit = tuple(sorted({act(s, chi, group) for s in twists}))
        remaining.difference_update(orbit)
        out.append(orbit)
    return out


def orbit_decomposition(
    group: CharacterGroup, twists: InnerTwistStructure, config: NewformConfig
) -> OrbitDecomposition:
    result = []
    for members in orbits(group, twists):
        rep = members[0]
        isotropy = tuple(s.label for s in twists if act(s, rep) == rep)
        if len(members) * len(isotropy) != len(twists):
            raise ArithmeticError(f"orbit-stabilizer fails at {rep!r}: not a group action")
        dim = len(twists) // len(isotropy) * config.deg_F
        result.append(Orbit(rep, members, isotropy, dim, config.schur_index))
    return OrbitDecomposition(tuple(result))


def structure_from_pairs(pairs: Sequence[tuple[DirichletCharacter, int]]) -> InnerTwistStructure:
    """Convenience constructor labelling elements s1, s2, ..."""
    return InnerTwistStructure.from_elements(
        GaloisElement(f"s{i}", chi, e) for i, (chi, e) in enumerate(pairs, 1)
    )
