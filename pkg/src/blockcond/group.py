"""Finite groups of Dirichlet characters and the abelian fields they cut out.

A group G of primitive characters is identified with the character group of
Gal(L/Q) for the abelian field L it determines, so |G| = [L:Q].  Field
invariants are read off the characters: the conductor of L is the lcm of the
conductors, |d_L| is their product, and the splitting of a prime q follows
from which characters ramify at q and the values of the others at q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from math import lcm
from typing import Iterable, Iterator

from .dirichlet import DirichletCharacter, evaluate, primary_component, root_order, valuation


@dataclass(frozen=True)
class SplittingData:
    """Ramification index, residue degree and number of primes above q."""

    e: int
    f: int
    g: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.e, self.f, self.g)


@dataclass(frozen=True)
class CharacterGroup:
    elements: tuple[DirichletCharacter, ...]
    generators: tuple[DirichletCharacter, ...] = ()

    def __iter__(self) -> Iterator[DirichletCharacter]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, chi: object) -> bool:
        return chi in self._members

    @cached_property
    def _members(self) -> frozenset[DirichletCharacter]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def exponent(self) -> int:
        """lcm of the element orders."""
        return reduce(lcm, (chi.order for chi in self.elements), 1)

    def conductor(self) -> int:
        return field_conductor(self)

    def discriminant(self) -> int:
        return discriminant(self)

    def splitting(self, q: int) -> SplittingData:
        return splitting(self, q)

    def primes(self) -> list[int]:
        """Primes ramified in L."""
        return sorted({c.p for chi in self.elements for c in chi.components})

    def primary_parts(self, q: int) -> set[DirichletCharacter]:
        return {primary_component(chi, q) for chi in self.elements}


def generate_group(gens: Iterable[DirichletCharacter]) -> CharacterGroup:
    """Closure of ``gens`` under multiplication, sorted by encoding."""
    gens = tuple(chi.primitive() for chi in gens)
    seen = {DirichletCharacter.trivial()}
    frontier = list(seen)
    while frontier:
        new = []
        for chi in frontier:
            for g in gens:
                prod = chi * g
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
        frontier = new
    return CharacterGroup(tuple(sorted(seen)), gens)


def field_conductor(group: CharacterGroup) -> int:
    return reduce(lcm, (chi.conductor for chi in group), 1)


def discriminant(group: CharacterGroup) -> int:
    """Absolute discriminant of L by the conductor-discriminant formula."""
    return reduce(lambda a, chi: a * chi.conductor, group, 1)


def splitting(group: CharacterGroup, q: int) -> SplittingData:
    # inertia at q is dual to the subgroup of characters unramified at q;
    # Frobenius has order lcm of chi(q) over that subgroup
    unramified = [chi for chi in group if chi.conductor % q]
    e = len(group) // len(unramified)
    f = 1
    for chi in unramified:
        v = evaluate(chi, q) if chi.conductor > 1 else None
        if v is not None:
            f = lcm(f, root_order(v))
    g = len(group) // (e * f)
    if e * f * g != len(group):
        raise ArithmeticError(f"inconsistent splitting at {q}: e={e}, f={f}, |G|={len(group)}")
    return SplittingData(e, f, g)


def conductor_valuation(chi: DirichletCharacter, q: int) -> int:
    return valuation(chi.conductor, q)
