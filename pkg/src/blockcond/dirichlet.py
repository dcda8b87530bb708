"""Dirichlet characters with exact values in Q/Z.

A value ``x`` of a character is stored as a :class:`fractions.Fraction` in
``[0, 1)`` standing for ``exp(2*pi*i*x)``; its denominator is the
multiplicative order of the root of unity.  ``None`` stands for the value 0
taken at integers that are not coprime to the modulus.

Characters are stored through their local components at the prime powers
``p^k`` dividing the modulus.  For odd ``p`` the component is fixed by its
value at the smallest positive primitive root ``g`` mod ``p^k``; for ``p = 2``
by its values at ``-1`` and ``5``::

    chi(g)  = gen_exp / phi(p^k)
    chi(-1) = minus_one_exp / 2          (k >= 2)
    chi(5)  = five_exp / 2^(k-2)         (k >= 3)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd, lcm
from typing import Callable, Iterator

from sympy import factorint, isprime, jacobi_symbol, primitive_root

RootOfUnity = Fraction


def _frac(x: Fraction | int) -> Fraction:
    return Fraction(x) % 1


def root_order(x: Fraction) -> int:
    """Multiplicative order of the root of unity ``exp(2*pi*i*x)``."""
    return _frac(x).denominator


@lru_cache(maxsize=None)
def canonical_generator(p: int, k: int) -> int:
    """Smallest positive primitive root modulo ``p**k`` (``p`` odd)."""
    if p == 2:
        raise ValueError("(Z/2^kZ)^* uses the generators -1 and 5")
    return int(primitive_root(p**k))


@lru_cache(maxsize=None)
def _log_table(p: int, k: int) -> dict[int, int]:
    # exhaustive discrete logs: base g for odd p, base 5 for p = 2
    mod = p**k
    base = 5 if p == 2 else canonical_generator(p, k)
    size = 2 ** max(k - 2, 0) if p == 2 else (p - 1) * p ** (k - 1)
    table = {}
    x = 1
    for i in range(size):
        table[x] = i
        x = x * base % mod
    return table


@dataclass(frozen=True)
class LocalCharacter:
    """Character of ``(Z/p^kZ)^*`` in the canonical-generator encoding."""

    p: int
    k: int
    gen_exp: int = 0
    minus_one_exp: int = 0
    five_exp: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"exponent k must be >= 1, got {self.k}")
        if self.p == 2:
            if self.gen_exp:
                raise ValueError("gen_exp is not used for p = 2")
            m1 = self.minus_one_exp % 2 if self.k >= 2 else 0
            f5 = self.five_exp % 2 ** (self.k - 2) if self.k >= 3 else 0
            object.__setattr__(self, "minus_one_exp", m1)
            object.__setattr__(self, "five_exp", f5)
        else:
            if self.minus_one_exp or self.five_exp:
                raise ValueError(f"minus_one_exp/five_exp are only used for p = 2 (p = {self.p})")
            object.__setattr__(self, "gen_exp", self.gen_exp % self.phi)

    @property
    def phi(self) -> int:
        return (self.p - 1) * self.p ** (self.k - 1)

    @property
    def key(self) -> tuple[int, ...]:
        if self.p == 2:
            return (2, self.k, self.minus_one_exp, self.five_exp)
        return (self.p, self.k, self.gen_exp)

    @property
    def is_trivial(self) -> bool:
        return not (self.gen_exp or self.minus_one_exp or self.five_exp)

    def value(self, n: int) -> Fraction:
        """Value at an integer ``n`` prime to ``p``."""
        num, den = self._ratio(n)
        return Fraction(num % den, den)

    def _ratio(self, n: int) -> tuple[int, int]:
        # unreduced value num/den; integer arithmetic keeps evaluation cheap
        mod = self.p**self.k
        n %= mod
        if n % self.p == 0:
            raise ValueError(f"{n} is not a unit mod {mod}")
        if self.p != 2:
            return self.gen_exp * _log_table(self.p, self.k)[n], self.phi
        if self.k == 1:
            return 0, 1
        sign = 0 if n % 4 == 1 else 1
        if self.k == 2:
            return self.minus_one_exp * sign, 2
        size = 2 ** (self.k - 2)
        m = n if sign == 0 else (-n) % mod
        return self.minus_one_exp * sign * size + 2 * self.five_exp * _log_table(2, self.k)[m], 2 * size

    @classmethod
    def from_function(cls, p: int, k: int, fn: Callable[[int], Fraction]) -> LocalCharacter:
        """Read off the encoding from values on the canonical generators."""

        def exp(x: Fraction, size: int) -> int:
            e = _frac(x) * size
            if e.denominator != 1:
                raise ValueError(f"value {x} does not come from a character mod {p}^{k}")
            return int(e)

        if p != 2:
            phi = (p - 1) * p ** (k - 1)
            return cls(p, k, gen_exp=exp(fn(canonical_generator(p, k)), phi))
        m1 = exp(fn(2**k - 1), 2) if k >= 2 else 0
        f5 = exp(fn(5), 2 ** (k - 2)) if k >= 3 else 0
        return cls(2, k, minus_one_exp=m1, five_exp=f5)

    @property
    def order(self) -> int:
        if self.p != 2:
            return Fraction(self.gen_exp, self.phi).denominator
        o = Fraction(self.minus_one_exp, 2).denominator
        if self.k >= 3:
            o = lcm(o, Fraction(self.five_exp, 2 ** (self.k - 2)).denominator)
        return o

    @property
    def conductor_exponent(self) -> int:
        if self.p != 2:
            if self.gen_exp == 0:
                return 0
            return self.k - _val(self.gen_exp, self.p)
        if self.five_exp:
            return self.k - _val(self.five_exp, 2)
        return 2 if self.minus_one_exp else 0

    def at_level(self, k: int) -> LocalCharacter:
        """Same character viewed modulo ``p**k`` (restriction or induction)."""
        if k == self.k:
            return self
        if k < self.conductor_exponent:
            raise ValueError(f"character of conductor {self.p}^{self.conductor_exponent} is not defined mod {self.p}^{k}")
        return LocalCharacter.from_function(self.p, k, self.value)

    def primitive(self) -> LocalCharacter | None:
        c = self.conductor_exponent
        return None if c == 0 else self.at_level(c)


def _val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    return _val(abs(n), p)


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character modulo ``prod p**k`` over its local components.

    ``components`` holds one entry per prime dividing the modulus, sorted by
    prime.  Constructors and group operations return primitive characters;
    :meth:`induce` is the one way to obtain an imprimitive one.
    """

    components: tuple[LocalCharacter, ...] = ()

    def __post_init__(self) -> None:
        comps = tuple(sorted(self.components, key=lambda c: c.p))
        primes = [c.p for c in comps]
        if len(set(primes)) != len(primes):
            raise ValueError(f"repeated prime among components: {primes}")
        object.__setattr__(self, "components", comps)

    # -- construction -------------------------------------------------
    @classmethod
    def trivial(cls) -> DirichletCharacter:
        return cls(())

    @classmethod
    def from_function(cls, modulus: int, fn: Callable[[int], Fraction]) -> DirichletCharacter:
        """Character mod ``modulus`` determined by ``fn`` on units.

        ``fn`` is called on CRT lifts of the canonical generators of each
        local factor, so it only has to be correct on integers prime to the
        modulus.  The result keeps the given modulus.
        """
        comps = []
        for p, k in sorted(factorint(modulus).items()):
            q = p**k
            rest = modulus // q
            inv = pow(rest, -1, q) if q > 1 else 0

            def lifted(x: int, q=q, rest=rest, inv=inv) -> Fraction:
                # x mod q, 1 mod rest
                y = (1 + rest * (((x - 1) * inv) % q)) % modulus
                return fn(y or modulus)

            comps.append(LocalCharacter.from_function(p, k, lifted))
        return cls(tuple(comps))

    @classmethod
    def from_json(cls, data: dict) -> DirichletCharacter:
        comps = []
        for entry in data.get("local", []):
            if not isprime(int(entry["p"])):
                raise ValueError(f"{entry['p']} is not prime")
            comps.append(
                LocalCharacter(
                    int(entry["p"]),
                    int(entry["k"]),
                    gen_exp=int(entry.get("gen_exp", 0)),
                    minus_one_exp=int(entry.get("minus_one_exp", 0)),
                    five_exp=int(entry.get("five_exp", 0)),
                )
            )
        return cls(tuple(comps))

    def to_json(self) -> dict:
        out = []
        for c in self.components:
            entry: dict[str, int] = {"p": c.p, "k": c.k}
            if c.p != 2:
                entry["gen_exp"] = c.gen_exp
            else:
                if c.k >= 2:
                    entry["minus_one_exp"] = c.minus_one_exp
                if c.k >= 3:
                    entry["five_exp"] = c.five_exp
            out.append(entry)
        return {"local": out}

    # -- basic invariants --------------------------------------------
    @property
    def modulus(self) -> int:
        return reduce(lambda a, c: a * c.p**c.k, self.components, 1)

    @property
    def key(self) -> tuple:
        """Sort key: lexicographic on the encoding, trivial character first."""
        return tuple(c.key for c in self.components)

    def __lt__(self, other: DirichletCharacter) -> bool:
        return self.key < other.key

    @property
    def order(self) -> int:
        return reduce(lcm, (c.order for c in self.components), 1)

    @property
    def conductor(self) -> int:
        return reduce(lambda a, c: a * c.p**c.conductor_exponent, self.components, 1)

    @property
    def is_trivial(self) -> bool:
        return all(c.is_trivial for c in self.components)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def local(self, p: int) -> LocalCharacter | None:
        for c in self.components:
            if c.p == p:
                return c
        return None

    def primitive(self) -> DirichletCharacter:
        return DirichletCharacter(tuple(filter(None, (c.primitive() for c in self.components))))

    def induce(self, modulus: int) -> DirichletCharacter:
        """The character viewed modulo a multiple of its conductor."""
        if modulus % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {modulus}")
        comps = []
        for p, k in sorted(factorint(modulus).items()):
            c = self.local(p)
            comps.append(c.at_level(k) if c is not None else LocalCharacter(p, k))
        return DirichletCharacter(tuple(comps))

    # -- evaluation and group law --------------------------------------
    def __call__(self, n: int) -> Fraction | None:
        return evaluate(self, n)

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        return multiply(self, other)

    def __pow__(self, e: int) -> DirichletCharacter:
        return power(self, e)

    def __invert__(self) -> DirichletCharacter:
        return inverse(self)

    def __repr__(self) -> str:
        if self.is_trivial and not self.components:
            return "DirichletCharacter(1)"
        return f"DirichletCharacter({self.modulus}, {[c.key[2:] for c in self.components]})"


def evaluate(chi: DirichletCharacter, n: int) -> Fraction | None:
    """chi(n) as an element of Q/Z, or None when gcd(n, modulus) > 1."""
    if n < 1:
        raise ValueError(f"evaluate expects a positive integer, got {n}")
    if gcd(n, chi.modulus) > 1:
        return None
    num, den = 0, 1
    for c in chi.components:
        a, m = c._ratio(n)
        num, den = num * m + a * den, den * m
    return Fraction(num % den, den)


def _combine(chars: list[tuple[DirichletCharacter, int]]) -> DirichletCharacter:
    """Primitive form of prod chi**e over the given (chi, e) pairs."""
    levels: dict[int, int] = {}
    for chi, _ in chars:
        for c in chi.components:
            levels[c.p] = max(levels.get(c.p, 0), c.k)
    comps = []
    for p, k in sorted(levels.items()):
        locs = [(chi.local(p), e) for chi, e in chars if chi.local(p) is not None]

        def fn(n: int, locs=locs) -> Fraction:
            num, den = 0, 1
            for c, e in locs:
                a, m = c._ratio(n)
                num, den = num * m + e * a * den, den * m
            return Fraction(num % den, den)

        prim = LocalCharacter.from_function(p, k, fn).primitive()
        if prim is not None:
            comps.append(prim)
    return DirichletCharacter(tuple(comps))


@lru_cache(maxsize=1 << 16)
def multiply(chi: DirichletCharacter, psi: DirichletCharacter) -> DirichletCharacter:
    return _combine([(chi, 1), (psi, 1)])


@lru_cache(maxsize=1 << 16)
def power(chi: DirichletCharacter, e: int) -> DirichletCharacter:
    return _combine([(chi, e % chi.order)])


def inverse(chi: DirichletCharacter) -> DirichletCharacter:
    return power(chi, -1)


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def primary_component(chi: DirichletCharacter, q: int) -> DirichletCharacter:
    """The primitive q-primary part chi_q of chi."""
    c = chi.local(q)
    prim = c.primitive() if c is not None else None
    return DirichletCharacter((prim,) if prim is not None else ())


def kronecker_character(d: int) -> DirichletCharacter:
    """The quadratic character n -> (d/n) of a fundamental discriminant d."""
    m = abs(d)

    def fn(n: int) -> Fraction:
        if n % 2 == 0:
            n += m  # m is odd here; the symbol has period m
        return Fraction(0) if jacobi_symbol(d % n, n) == 1 else Fraction(1, 2)

    chi = DirichletCharacter.from_function(m, fn)
    if chi.conductor != m or chi.order != 2:
        raise ValueError(f"{d} is not a fundamental discriminant")
    return chi


def quadratic_catalogue() -> dict[str, DirichletCharacter]:
    """The four quadratic-or-trivial characters of 2-power conductor."""
    xi = DirichletCharacter((LocalCharacter(2, 3, minus_one_exp=0, five_exp=1),))
    psi = DirichletCharacter((LocalCharacter(2, 3, minus_one_exp=1, five_exp=1),))
    return {"1": DirichletCharacter.trivial(), "xi": xi, "psi": psi, "xipsi": xi * psi}


def local_characters(p: int, k: int) -> Iterator[LocalCharacter]:
    if p != 2:
        phi = (p - 1) * p ** (k - 1)
        for a in range(phi):
            yield LocalCharacter(p, k, gen_exp=a)
    else:
        for a in range(2 if k >= 2 else 1):
            for b in range(2 ** (k - 2) if k >= 3 else 1):
                yield LocalCharacter(2, k, minus_one_exp=a, five_exp=b)


def characters_mod(modulus: int) -> Iterator[DirichletCharacter]:
    """All phi(modulus) characters modulo ``modulus`` (not made primitive)."""
    pieces = [list(local_characters(p, k)) for p, k in sorted(factorint(modulus).items())]
    for combo in product(*pieces):
        yield DirichletCharacter(tuple(combo))

