"""Symbolic engine for submodules cZ of the Z-module Z.

Membership in cZ only depends on valuations at the primes of c, and a
valuation above t_p = v_p(c) behaves exactly like t_p in every inequality
``j*v_p(r) + v_p(m) >= t_p`` we test.  So scalars and elements range over
capped valuation vectors, i.e. over the divisors of c.

For a fixed r the admissible m (those with r^k m in cZ) are exactly the
multiples of m_0 = c / gcd(c, r^k); the failure "r^{n-1} m not in cZ" is
inherited by divisors, so m_0 alone decides whether r admits a violation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, product as cartesian
from math import prod

from .predicates import HOLDS, PredicateVerdict
from .ring import FactoredNat, factorize


@dataclass(frozen=True)
class CyclicZSubmodule:
    """cZ inside Z, for c >= 2."""

    c: FactoredNat

    @classmethod
    def of(cls, c: int) -> CyclicZSubmodule:
        if c < 2:
            raise ValueError(f"cZ must be a proper nonzero submodule, got c = {c}")
        return cls(factorize(c))

    @property
    def value(self) -> int:
        return self.c.value

    @property
    def primes(self) -> list[int]:
        return self.c.primes

    @property
    def caps(self) -> tuple[int, ...]:
        return tuple(self.c.factors.values())

    def __contains__(self, x: int) -> bool:
        return x % self.value == 0

    def __str__(self):
        return f"{self.value}Z"

    def holds_for(self, vec) -> bool:
        """Is the integer with valuation vector ``vec`` in cZ?"""
        return all(v >= t for v, t in zip(vec, self.caps))

    def integer(self, vec) -> int:
        return prod(p**e for p, e in zip(self.primes, vec))

    @cached_property
    def vectors(self) -> tuple[tuple[int, ...], ...]:
        """All capped valuation vectors, ordered by the integer they realise."""
        vecs = cartesian(*(range(t + 1) for t in self.caps))
        return tuple(sorted(vecs, key=self.integer))


def _as_cyclic(c) -> CyclicZSubmodule:
    return c if isinstance(c, CyclicZSubmodule) else CyclicZSubmodule.of(c)


def _check_params(*params: int):
    for p in params:
        if p < 1:
            raise ValueError(f"exponents must be positive integers, got {p}")


def _scale(vec, j: int):
    return tuple(j * v for v in vec)


def _plus(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _total(vecs, width: int):
    """Valuations of a product; the empty product is 1."""
    return tuple(sum(col) for col in zip(*vecs)) if vecs else (0,) * width


def _cofactor(N: CyclicZSubmodule, vec):
    """Valuations of c / gcd(c, r) for r with valuation vector ``vec``."""
    return tuple(max(0, t - v) for v, t in zip(vec, N.caps))


def _violates(N: CyclicZSubmodule, k: int, n: int, r: int, m: int) -> bool:
    c = N.value
    return (r**k * m) % c == 0 and r**n % c != 0 and (r ** (n - 1) * m) % c != 0


def _preferred_m(N: CyclicZSubmodule, k: int, n: int, r: int, m0: int) -> int:
    """Witness element for a violating r.

    Takes c^j / r^k for the least j with r^k | c^j when that quotient is
    itself a violation (this reads as "the part of a power of c that r^k
    misses"), otherwise the least admissible element m_0.
    """
    c, rk = N.value, r**k
    j = 1
    while c**j % rk:
        j += 1
    m = c**j // rk
    return m if _violates(N, k, n, r, m) else m0


def zint_is_kn_closed(c, k: int, n: int) -> PredicateVerdict:
    """r^k m in cZ  ==>  r^n in cZ  or  r^{n-1} m in cZ, for all integers r, m."""
    _check_params(k, n)
    N = _as_cyclic(c)
    for e in N.vectors:
        if N.holds_for(_scale(e, n)):
            continue
        f0 = _cofactor(N, _scale(e, k))
        if not N.holds_for(_plus(_scale(e, n - 1), f0)):
            r, m0 = N.integer(e), N.integer(f0)
            return PredicateVerdict(False, {"r": r, "m": _preferred_m(N, k, n, r, m0)})
    return HOLDS


def zint_is_semi_n_absorbing(c, n: int) -> PredicateVerdict:
    return zint_is_kn_closed(c, n, n)


def zint_is_n_absorbing(c, n: int) -> PredicateVerdict:
    """a_1...a_n m in cZ  ==>  a_1...a_n in cZ  or  some n-1 of the a_i times m in cZ."""
    _check_params(n)
    N = _as_cyclic(c)
    width = len(N.caps)
    for combo in combinations_with_replacement(N.vectors, n):
        total = _total(combo, width)
        if N.holds_for(total):
            continue
        f0 = _cofactor(N, total)
        if all(
            not N.holds_for(_plus(_total(combo[:i] + combo[i + 1:], width), f0))
            for i in range(n)
        ):
            return PredicateVerdict(False, {"a": [N.integer(e) for e in combo], "m": N.integer(f0)})
    return HOLDS


def zint_ideal_is_kn_closed(c, k: int, n: int) -> PredicateVerdict:
    """x^k in cZ  ==>  x^n in cZ; decided by n*ceil(t_p/k) >= t_p at every p | c.

    The least x with x^k in cZ is prod p^ceil(t_p/k) and every other such x
    is a multiple of it, so it is also the least witness.
    """
    _check_params(k, n)
    N = _as_cyclic(c)
    x0 = tuple(-(-t // k) for t in N.caps)
    if all(n * e >= t for e, t in zip(x0, N.caps)):
        return HOLDS
    return PredicateVerdict(False, {"x": N.integer(x0)})


def zint_ideal_search(c, k: int, n: int) -> PredicateVerdict:
    """The same test as :func:`zint_ideal_is_kn_closed`, by scanning x = 1, 2, ..., c."""
    _check_params(k, n)
    N = _as_cyclic(c)
    cv = N.value
    for x in range(1, cv + 1):
        if pow(x, k, cv) == 0 and pow(x, n, cv) != 0:
            return PredicateVerdict(False, {"x": x})
    return HOLDS


# -- arithmetic conditions from the prime-power classification ----------------

def _split(k: int, n: int) -> tuple[int, int]:
    """k = b*n + c with 0 <= c <= n-1."""
    return divmod(k, n)


def _union_condition(t: int, k: int, n: int, c: int) -> bool:
    """t in U_{h=1..n} {k*i + h : i in Z, 0 <= i*c <= n-h}."""
    for h in range(1, n + 1):
        if (t - h) % k:
            continue
        i = (t - h) // k
        if 0 <= i * c <= n - h:
            return True
    return False


def tkn_part1(t: int, k: int, n: int) -> bool:
    """t = k*a + r with a >= 0, 1 <= r <= n, a*(k mod n) + r <= n,
    and a != 0 only when k = n + c with 1 <= c <= n-1."""
    for a in range(0, t // k + 1):
        r = t - k * a
        if not 1 <= r <= n or a * (k % n) + r > n:
            continue
        if a != 0 and not (n + 1 <= k <= 2 * n - 1):
            continue
        return True
    return False


def tkn_part2(t: int, k: int, n: int) -> bool:
    b, c = _split(k, n)
    if b >= 2:
        return 1 <= t <= n
    if b == 1:
        return _union_condition(t, k, n, c)
    return True  # k < n: neither case applies


def tkn_condition(t: int, k: int, n: int) -> bool:
    _check_params(t, k, n)
    return tkn_part1(t, k, n) and tkn_part2(t, k, n)


def semi_n_decomposition(t: int, n: int) -> bool:
    """t = n*a + r with a >= 0 and 1 <= r < n."""
    _check_params(t, n)
    return 1 <= t % n < n


def semi_n_union(t: int, n: int) -> bool:
    """t in U_{h=1..n} {n*i + h : 0 <= i < n-h}."""
    _check_params(t, n)
    return any(t == n * i + h for h in range(1, n + 1) for i in range(0, n - h))


def semi_2_condition(t: int) -> bool:
    return t in (1, 2)


def prime_power_condition(t: int, k: int, n: int) -> bool:
    """One of: 1 <= t <= n;  t = ka+r = na+d with a >= 1 and r, d in [1, n-1];
    t = ka+r = n(a+1) with a >= 1 and r in [1, n-1]."""
    _check_params(t, k, n)
    if 1 <= t <= n:
        return True
    for a in range(1, t // min(k, n) + 1):
        r, d = t - k * a, t - n * a
        if 1 <= r <= n - 1 and 1 <= d <= n - 1:
            return True
        if 1 <= r <= n - 1 and t == n * (a + 1):
            return True
    return False


def factorization_condition(c, k: int, n: int) -> bool:
    """Per-exponent conditions for cZ to be (k,n)-closed with 1 <= n <= k.

    For a prime power c the three-case condition on P^t must hold as well.
    """
    _check_params(k, n)
    if n > k:
        raise ValueError(f"the factorization conditions need n <= k, got k={k}, n={n}")
    N = _as_cyclic(c)
    b, rem = _split(k, n)
    if b >= 2:
        ok = all(1 <= t <= n for t in N.caps)
    else:
        ok = all(_union_condition(t, k, n, rem) for t in N.caps)
    if ok and N.c.is_prime_power():
        ok = prime_power_condition(N.caps[0], k, n)
    return ok


def zint_spectrum(c, kmax: int) -> tuple[tuple[bool, ...], ...]:
    return tuple(
        tuple(zint_is_kn_closed(c, k, n).holds for n in range(1, kmax + 1))
        for k in range(1, kmax + 1)
    )
