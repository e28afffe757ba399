"""Submodule predicates: (k,n)-closed, semi n-absorbing and relatives.

Every predicate is an exhaustive scan over scalars of Z_m and elements of M
using the bitsets ``N.hit_masks[s] = {x : s*x in N}``.  A false answer
always carries the witness that is least in scan order (scalars first, then
the element index).  By convention r^0 = 1, so with n = 1 the conclusion
"r^{n-1} x in N" reads "x in N".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import prod

import numpy as np

from .modules import (
    ImproperSubmoduleError,
    Submodule,
    enumerate_submodules,
    lowest_bit,
)


class SpectrumInvariantError(RuntimeError):
    """A closure spectrum broke one of the structural laws; this is a bug."""


@dataclass(frozen=True)
class PredicateVerdict:
    holds: bool
    witness: dict | None = None

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("a witness is required exactly when the predicate fails")

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {"holds": self.holds, "witness": self.witness}


HOLDS = PredicateVerdict(True)


def _check_params(*params: int):
    for p in params:
        if p < 1:
            raise ValueError(f"exponents must be positive integers, got {p}")


def _require_proper(N: Submodule):
    if not N.is_proper():
        raise ImproperSubmoduleError(f"submodule {N.describe()} is not proper in {N.module}")


def _fail(N: Submodule, x: int, **scalars) -> PredicateVerdict:
    return PredicateVerdict(False, {**scalars, "x": N.module.format(x)})


@lru_cache(maxsize=1 << 16)
def is_kn_closed(N: Submodule, k: int, n: int) -> PredicateVerdict:
    """r^k x in N  ==>  r^n in (N:M)  or  r^{n-1} x in N."""
    _check_params(k, n)
    _require_proper(N)
    R, res, hits = N.ring, N.residual, N.hit_masks
    for r in R:
        if R.pow(r, n) in res:
            continue
        bad = hits[R.pow(r, k)] & ~hits[R.pow(r, n - 1)]
        if bad:
            return _fail(N, lowest_bit(bad), r=r)
    return HOLDS


def is_semi_n_absorbing(N: Submodule, n: int) -> PredicateVerdict:
    return is_kn_closed(N, n, n)


@lru_cache(maxsize=1 << 14)
def is_semiprime(N: Submodule) -> PredicateVerdict:
    _require_proper(N)
    R, hits = N.ring, N.hit_masks
    for r in R:
        bad = hits[R.mul(r, r)] & ~hits[r]
        if bad:
            return _fail(N, lowest_bit(bad), r=r)
    return HOLDS


@lru_cache(maxsize=1 << 14)
def is_quasi_prime(N: Submodule) -> PredicateVerdict:
    """abx in N  ==>  ax in N or bx in N (scanned over a <= b)."""
    _require_proper(N)
    R, hits = N.ring, N.hit_masks
    for a in R:
        for b in range(a, R.m):
            bad = hits[R.mul(a, b)] & ~hits[a] & ~hits[b]
            if bad:
                return _fail(N, lowest_bit(bad), a=a, b=b)
    return HOLDS


N_ABSORBING_CAP = 3


@lru_cache(maxsize=1 << 14)
def is_n_absorbing(N: Submodule, n: int, cap: int = N_ABSORBING_CAP) -> PredicateVerdict:
    """a_1...a_n x in N  ==>  a_1...a_n in (N:M)  or some n-1 of the a_i times x lie in N.

    Scalars range over multisets; the condition is symmetric in the a_i.
    """
    _check_params(n)
    if n > cap:
        raise ValueError(f"n-absorbing scans are capped at n <= {cap}, got n = {n}")
    _require_proper(N)
    R, res, hits = N.ring, N.residual, N.hit_masks
    m = R.m
    for scalars in combinations_with_replacement(range(m), n):
        p = prod(scalars) % m
        if p in res:
            continue
        bad = hits[p]
        for i in range(n):
            if not bad:
                break
            rest = prod(scalars[:i] + scalars[i + 1:]) % m
            bad &= ~hits[rest]
        if bad:
            return _fail(N, lowest_bit(bad), a=list(scalars))
    return HOLDS


def _ideal_powers(N: Submodule, d: int, *exps: int) -> list[int]:
    R = N.ring
    return [(R.ideal(d) ** e).gen % R.m for e in exps]


@lru_cache(maxsize=1 << 14)
def is_strongly_kn_closed(N: Submodule, k: int, n: int) -> PredicateVerdict:
    """Ideal form: I^k x ⊆ N  ==>  I^n ⊆ (N:M)  or  I^{n-1} x ⊆ N, I^0 = R.

    Ideals are scanned through their divisor generators; a principal ideal
    (g) sends x into N exactly when g*x does.
    """
    _check_params(k, n)
    _require_proper(N)
    R, res, hits = N.ring, N.residual, N.hit_masks
    for I in R.ideals():
        if I ** n <= res:
            continue
        gk, gn1 = _ideal_powers(N, I.gen, k, n - 1)
        bad = hits[gk] & ~hits[gn1]
        if bad:
            return _fail(N, lowest_bit(bad), I=I.gen)
    return HOLDS


def is_strongly_semi_n_absorbing(N: Submodule, n: int) -> PredicateVerdict:
    return is_strongly_kn_closed(N, n, n)


def strongly_kn_closed_submodule_form(N: Submodule, k: int, n: int) -> PredicateVerdict:
    """I^k L ⊆ N  ==>  I^n ⊆ (N:M)  or  I^{n-1} L ⊆ N, over all ideals I and submodules L."""
    _check_params(k, n)
    _require_proper(N)
    R, res, hits = N.ring, N.residual, N.hit_masks
    lattice = enumerate_submodules(N.module)
    for I in R.ideals():
        if I ** n <= res:
            continue
        gk, gn1 = _ideal_powers(N, I.gen, k, n - 1)
        for L in lattice:
            if L.mask & ~hits[gk] == 0 and L.mask & ~hits[gn1]:
                return PredicateVerdict(False, {"I": I.gen, "L": L.describe()})
    return HOLDS


def kn_closed_submodule_form(N: Submodule, k: int, n: int) -> PredicateVerdict:
    """r^k L ⊆ N  ==>  r^{n-1} L ⊆ N  or  r^n in (N:M), over all submodules L."""
    _check_params(k, n)
    _require_proper(N)
    R, res, hits = N.ring, N.residual, N.hit_masks
    lattice = enumerate_submodules(N.module)
    for r in R:
        if R.pow(r, n) in res:
            continue
        inside_k, inside_n1 = hits[R.pow(r, k)], hits[R.pow(r, n - 1)]
        for L in lattice:
            if L.mask & ~inside_k == 0 and L.mask & ~inside_n1:
                return PredicateVerdict(False, {"r": r, "L": L.describe()})
    return HOLDS


def _colon_generators(N: Submodule) -> np.ndarray:
    """For each element y, the divisor generating (N :_R y)."""
    M, m = N.module, N.ring.m
    inside = N.member[M.act_table]
    gen = np.full(M.size, m, dtype=np.int64)
    for s in range(m - 1, 0, -1):
        gen[inside[s]] = s
    return gen


@lru_cache(maxsize=1 << 14)
def colon_test(N: Submodule, k: int, n: int) -> bool:
    """(N : r^k x) = (N : r^{n-1} x)  or  r^n in (N:M), for every r and x."""
    _check_params(k, n)
    _require_proper(N)
    R, res, act = N.ring, N.residual, N.module.act_table
    gen = _colon_generators(N)
    for r in R:
        if R.pow(r, n) in res:
            continue
        if (gen[act[R.pow(r, k)]] != gen[act[R.pow(r, n - 1)]]).any():
            return False
    return True


# -- witness replay -------------------------------------------------------------

def violates_kn(N: Submodule, k: int, n: int, r: int, x) -> bool:
    M, R = N.module, N.ring
    i = M.index(x)
    return (
        M.act(R.pow(r, k), i) in N
        and R.pow(r, n) not in N.residual
        and M.act(R.pow(r, n - 1), i) not in N
    )


def violates_n_absorbing(N: Submodule, scalars, x) -> bool:
    M, m = N.module, N.ring.m
    i = M.index(x)
    p = prod(scalars) % m
    if M.act(p, i) not in N or p in N.residual:
        return False
    return all(
        M.act(prod(scalars[:j] + scalars[j + 1:]) % m, i) not in N
        for j in range(len(scalars))
    )


def violates_quasi_prime(N: Submodule, a: int, b: int, x) -> bool:
    M = N.module
    i = M.index(x)
    return M.act(a * b, i) in N and M.act(a, i) not in N and M.act(b, i) not in N


# -- spectrum ---------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureSpectrum:
    submodule: Submodule
    kmax: int
    grid: tuple[tuple[bool, ...], ...] = field(repr=False)

    def holds(self, k: int, n: int) -> bool:
        return self.grid[k - 1][n - 1]

    def cells(self):
        K = self.kmax
        return [(k, n) for k in range(1, K + 1) for n in range(1, K + 1)]

    def violations(self) -> list[str]:
        """Cells breaking monotonicity, the k > n collapse, or diagonal growth."""
        out = []
        K = self.kmax
        for k, n in self.cells():
            if not self.holds(k, n):
                continue
            for k1 in range(1, k + 1):
                for n1 in range(n, K + 1):
                    if not self.holds(k1, n1):
                        out.append(f"({k},{n}) holds but ({k1},{n1}) does not")
        for k, n in self.cells():
            if k > n and self.holds(k, n) != self.holds(n, n):
                out.append(f"({k},{n}) differs from the diagonal ({n},{n})")
        for n in range(1, K + 1):
            if self.holds(n, n):
                for k in range(1, K + 1):
                    if not self.holds(k, n):
                        out.append(f"semi-{n}-absorbing but not ({k},{n})-closed")
                for n1 in range(n, K + 1):
                    if not self.holds(n1, n1):
                        out.append(f"semi-{n}-absorbing but not semi-{n1}-absorbing")
        return out

    def fingerprint(self) -> str:
        """Diagonal as a bit string; the whole grid is determined by it."""
        return "".join("1" if self.holds(n, n) else "0" for n in range(1, self.kmax + 1))

    def to_json(self) -> dict:
        return {
            "submodule": self.submodule.describe(),
            "kmax": self.kmax,
            "grid": [[self.holds(k, n) for n in range(1, self.kmax + 1)]
                     for k in range(1, self.kmax + 1)],
        }


def spectrum(N: Submodule, kmax: int) -> ClosureSpectrum:
    _check_params(kmax)
    _require_proper(N)
    grid = tuple(
        tuple(is_kn_closed(N, k, n).holds for n in range(1, kmax + 1))
        for k in range(1, kmax + 1)
    )
    result = ClosureSpectrum(N, kmax, grid)
    broken = result.violations()
    if broken:
        raise SpectrumInvariantError(f"{N}: " + "; ".join(broken[:5]))
    return result
