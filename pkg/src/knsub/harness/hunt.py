"""Counterexample hunts: scan a search space in a fixed order, stop at the first hit.

Besides the hunts defined here, any registered property can be hunted; its
search space is then the property's own case stream over a catalog.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from sympy import primerange

from ..zint import (
    zint_ideal_is_kn_closed,
    zint_is_kn_closed,
    zint_is_semi_n_absorbing,
)
from .catalog import load_catalog
from .core import FAILS_STATUS, SuiteContext, get_property, run_property


@dataclass(frozen=True)
class HuntResult:
    name: str
    space: str
    searched: int
    witness: dict | None

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        return {"property": self.name, "space": self.space, "searched": self.searched, "witness": self.witness}


# A hunt yields candidate dicts, or None for a candidate that passed.
HuntFn = Callable[..., Iterator[dict | None]]
HUNTS: dict[str, tuple[HuntFn, str, dict]] = {}


def _hunt(name: str, default_space: str, **defaults):
    def deco(fn: HuntFn) -> HuntFn:
        HUNTS[name] = (fn, default_space, defaults)
        return fn
    return deco


def _prime_power_pairs(bound: int, n: int):
    """(p, q) with p < q primes and p^n q^n <= bound, ordered by the product."""
    pairs = []
    for p in primerange(2, int(bound ** (1 / n)) + 2):
        for q in primerange(p + 1, int(bound ** (1 / n)) + 2):
            if (p * q) ** n <= bound:
                pairs.append(((p * q) ** n, p, q))
    return sorted(pairs)


@_hunt("intersection-of-semi-n-not-semi-n", "pairs", bound=2000, n=2)
def _intersection(bound, n, space):
    """p^nZ ∩ q^nZ = (pq)^nZ with both sides semi n-absorbing but the meet not.

    The ``general`` space drops the prime-power shape: any a, b <= bound
    with lcm(a, b) <= bound.
    """
    if space == "pairs":
        for c, p, q in _prime_power_pairs(bound, n):
            a, b = p**n, q**n
            yield _meet_candidate(a, b, c, n)
        return
    if space != "general":
        raise ValueError(f"unknown search space {space!r}")
    from math import gcd
    found = {}
    for a in range(2, bound + 1):
        for b in range(a + 1, bound + 1):
            c = a * b // gcd(a, b)
            if c <= bound and c not in (a, b):
                found.setdefault(c, (a, b))
    for c in sorted(found):
        a, b = found[c]
        yield _meet_candidate(a, b, c, n)


def _meet_candidate(a, b, c, n):
    if not (zint_is_semi_n_absorbing(a, n).holds and zint_is_semi_n_absorbing(b, n).holds):
        return None
    v = zint_is_semi_n_absorbing(c, n)
    if v.holds:
        return None
    return {"c": c, "n": n, "parts": [a, b], **v.witness}


@_hunt("converse-of-T-t0", "symbolic", bound=100, k=2, n=1)
def _converse_t0(bound, k, n, space):
    """cZ a (k,n)-closed ideal while cZ is not a (k,n)-closed submodule."""
    for c in range(2, bound + 1):
        if not zint_ideal_is_kn_closed(c, k, n).holds:
            yield None
            continue
        v = zint_is_kn_closed(c, k, n)
        yield None if v.holds else {"c": c, "k": k, "n": n, **v.witness}


@_hunt("monotonicity", "symbolic", bound=200, n=4)
def _monotonicity(bound, n, space):
    """(k,n')-closed cZ failing to be (k1,n1)-closed for k1 <= k, n1 >= n'; never happens."""
    K = n
    for c in range(2, bound + 1):
        grid = {(k, m): zint_is_kn_closed(c, k, m).holds for k in range(1, K + 1) for m in range(1, K + 1)}
        hit = next(
            ({"c": c, "from": [k, m], "to": [k1, m1]}
             for (k, m), ok in grid.items() if ok
             for k1 in range(1, k + 1) for m1 in range(m, K + 1) if not grid[(k1, m1)]),
            None,
        )
        yield hit


def _property_hunt(name: str, bound: int | None) -> Iterator[dict | None]:
    prop = get_property(name)
    catalog = load_catalog()
    modules = catalog.modules()
    if bound is not None:
        modules = [M for M in modules if M.size <= bound]
    ctx = SuiteContext(modules, symbolic=catalog.symbolic)
    for case in prop.cases(ctx):
        r = run_property(case)
        yield {"instance": r.instance, **(r.witness or {})} if r.status == FAILS_STATUS else None


@_hunt("semiprime-not-(k,1)-closed", "catalog", bound=None)
def _semiprime(bound, space):
    return _property_hunt("T-t1-1[n=1]", bound)


def hunt_names() -> list[str]:
    from . import properties  # noqa: F401
    from .core import REGISTRY

    return sorted(HUNTS) + sorted(REGISTRY)


def hunt(name: str, bound: int | None = None, space: str | None = None, **params) -> HuntResult:
    """First failing instance of ``name`` in deterministic order, or no witness."""
    if name in HUNTS:
        fn, default_space, defaults = HUNTS[name]
        args = dict(defaults)
        if bound is not None:
            args["bound"] = bound
        args.update({k: v for k, v in params.items() if v is not None and k in defaults})
        space = space or default_space
        stream = fn(space=space, **args)
    else:
        get_property(name)  # KeyError for unknown names
        space = space or "catalog"
        stream = _property_hunt(name, bound)
    searched = 0
    for cand in stream:
        searched += 1
        if cand is not None:
            return HuntResult(name, space, searched, cand)
    return HuntResult(name, space, searched, None)
