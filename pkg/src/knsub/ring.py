"""Arithmetic of Z/mZ, its ideals, and ideal-level closedness tests.

Ideals of Z/mZ are in bijection with the positive divisors of m, so an
ideal is stored as its divisor generator: ``d`` stands for dZ/mZ, the zero
ideal is ``d == m`` and the whole ring is ``d == 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable

from sympy import divisors as _sympy_divisors, factorint


class ImproperIdealError(ValueError):
    pass


@dataclass(frozen=True)
class FactoredNat:
    value: int
    factors: dict[int, int] = field(compare=False)

    def __post_init__(self):
        if prod(p**e for p, e in self.factors.items()) != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> list[int]:
        return list(self.factors)

    def exponent(self, p: int) -> int:
        return self.factors.get(p, 0)

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def radical(self) -> int:
        return prod(self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return "·".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors.items())


def factorize(n: int) -> FactoredNat:
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    return FactoredNat(n, dict(sorted(factorint(n).items())))


def divisors(n: int) -> list[int]:
    return [int(d) for d in _sympy_divisors(n)]


@dataclass(frozen=True)
class ZModRing:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"ring modulus must be >= 2, got {self.m}")

    def __iter__(self):
        return iter(range(self.m))

    def __len__(self):
        return self.m

    def __str__(self):
        return f"Z_{self.m}"

    def mul(self, a: int, b: int) -> int:
        return a * b % self.m

    def pow(self, a: int, e: int) -> int:
        # x^0 = 1 for every x, including 0
        return pow(a, e, self.m)

    def ideal(self, x: int) -> RingIdeal:
        """Principal ideal generated by the residue ``x``."""
        return RingIdeal(self, gcd(x % self.m, self.m) or self.m)

    def zero_ideal(self) -> RingIdeal:
        return RingIdeal(self, self.m)

    def unit_ideal(self) -> RingIdeal:
        return RingIdeal(self, 1)

    def ideals(self) -> list[RingIdeal]:
        return [RingIdeal(self, d) for d in divisors(self.m)]


@dataclass(frozen=True)
class RingIdeal:
    ring: ZModRing
    gen: int

    def __post_init__(self):
        if self.gen < 1 or self.ring.m % self.gen:
            raise ValueError(f"ideal generator {self.gen} must be a positive divisor of {self.ring.m}")

    def __contains__(self, x: int) -> bool:
        return (x % self.ring.m) % self.gen == 0

    def __str__(self):
        return f"({self.gen})"

    def __le__(self, other: RingIdeal) -> bool:
        return self.gen % other.gen == 0

    def __lt__(self, other: RingIdeal) -> bool:
        return self <= other and self != other

    def __mul__(self, other: RingIdeal) -> RingIdeal:
        return self.ring.ideal(self.gen * other.gen)

    def __pow__(self, e: int) -> RingIdeal:
        if e == 0:
            return self.ring.unit_ideal()
        return self.ring.ideal(self.gen**e)

    def __and__(self, other: RingIdeal) -> RingIdeal:
        return RingIdeal(self.ring, self.gen * other.gen // gcd(self.gen, other.gen))

    def __add__(self, other: RingIdeal) -> RingIdeal:
        return RingIdeal(self.ring, gcd(self.gen, other.gen))

    def elements(self) -> list[int]:
        return list(range(0, self.ring.m, self.gen))

    def is_proper(self) -> bool:
        return self.gen != 1

    def is_zero(self) -> bool:
        return self.gen == self.ring.m

    def colon(self, x: int) -> RingIdeal:
        """The ideal {r : r*x in self}."""
        g = gcd(x % self.ring.m, self.gen)
        return RingIdeal(self.ring, self.gen // g)


def units(R: ZModRing) -> set[int]:
    return {u for u in R if gcd(u, R.m) == 1}


def ideal_radical(I: RingIdeal) -> RingIdeal:
    # nilradical of Z_m sits inside every radical, so the zero ideal (gen m)
    # maps to rad(m) as well
    return RingIdeal(I.ring, factorize(I.gen).radical())


def _require_proper(I: RingIdeal):
    if not I.is_proper():
        raise ImproperIdealError(f"{I} is the whole ring {I.ring}")


def kn_closed_ideal_witness(I: RingIdeal, k: int, n: int) -> int | None:
    """Least x with x^k in I and x^n not in I; None when no such x exists.

    Accepts the whole ring, where the implication holds vacuously.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    R = I.ring
    for x in R:
        if R.pow(x, k) in I and R.pow(x, n) not in I:
            return x
    return None


def is_kn_closed_ideal(I: RingIdeal, k: int, n: int) -> tuple[bool, int | None]:
    _require_proper(I)
    x = kn_closed_ideal_witness(I, k, n)
    return x is None, x


def is_semi_n_absorbing_ideal(I: RingIdeal, n: int) -> bool:
    return is_kn_closed_ideal(I, n + 1, n)[0]


def is_prime_ideal(I: RingIdeal) -> bool:
    _require_proper(I)
    f = factorize(I.gen)
    return len(f.factors) == 1 and f.exponent(f.primes[0]) == 1


@dataclass(frozen=True)
class MultiplicativeSet:
    ring: ZModRing
    elements: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x % self.ring.m in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return len(self.elements)

    def contains_zero(self) -> bool:
        return 0 in self.elements

    def meets(self, I: RingIdeal) -> bool:
        return any(s in I for s in self.elements)

    def inverted_primes(self) -> list[int]:
        """Primes p | m that become units once S is inverted."""
        m = self.ring.m
        return [p for p in factorize(m).primes if any(s % p == 0 for s in self.elements)]

    def __str__(self):
        return "{" + ",".join(map(str, self)) + "}"


def mult_closure(R: ZModRing, seeds: Iterable[int]) -> MultiplicativeSet:
    seeds = {s % R.m for s in seeds}
    if not seeds:
        raise ValueError("mult_closure needs at least one seed")
    closed = {1 % R.m} | seeds
    frontier = list(closed)
    while frontier:
        a = frontier.pop()
        for b in list(closed):
            c = a * b % R.m
            if c not in closed:
                closed.add(c)
                frontier.append(c)
    return MultiplicativeSet(R, frozenset(closed))
