"""Module constructions: quotients, direct sums, products in multiplication
modules, radicals, secondary submodules, localization, homomorphisms."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product as cartesian
from math import prod

import numpy as np

from .modules import (
    CoordinateModule,
    FiniteModule,
    ModuleError,
    ModuleHom,
    Submodule,
    TableModule,
    bool_to_mask,
    enumerate_submodules,
    hom_from_table,
    ideal_times_module,
    intersect_all,
    is_maximal_submodule,
    is_prime_submodule,
    make_hom,
    scalar_image,
    submodule_from_mask,
    sum_,
    whole,
    _require_proper,
)
from .ring import MultiplicativeSet, RingIdeal, ZModRing, factorize


class NotMultiplicationModuleError(ModuleError):
    pass


# -- quotients ----------------------------------------------------------------

class QuotientModule(TableModule):
    """M/K on cosets, each labelled by its lexicographically least representative."""

    def __init__(self, base: FiniteModule, kernel: Submodule):
        if kernel.module != base:
            raise ModuleError("kernel is not a submodule of the base module")
        coset = np.full(base.size, -1, dtype=np.int64)
        reps = []
        ker = np.array(kernel.elements, dtype=np.int64)
        for x in range(base.size):
            if coset[x] == -1:
                coset[base.add_row(x)[ker]] = len(reps)
                reps.append(x)
        reps_arr = np.array(reps, dtype=np.int64)
        add = np.stack([coset[base.add_row(x)[reps_arr]] for x in reps])
        act = coset[base.act_table[:, reps_arr]]
        super().__init__(
            base.ring,
            [base.label(x) for x in reps],
            add,
            act,
            origin=f"{_short(base)}/{kernel.describe()}",
            lookup=lambda label: int(coset[base.index(label)]),
            check=False,
        )
        self.base = base
        self.kernel = kernel
        self.reps = reps
        self.coset_of = coset
        self.projection = ModuleHom(base, self, coset)

    def lift(self, N: Submodule) -> Submodule:
        """Preimage in the base module of a submodule of the quotient."""
        return self.projection.preimage(N)


def _short(M: FiniteModule) -> str:
    return M.origin.split(" over ")[0]


def quotient(M: FiniteModule, K: Submodule) -> tuple[QuotientModule, ModuleHom]:
    Q = QuotientModule(M, K)
    return Q, Q.projection


# -- submodules as modules ----------------------------------------------------

def submodule_as_module(N: Submodule) -> tuple[TableModule, ModuleHom]:
    """N as a module in its own right, with its inclusion into the ambient module."""
    M = N.module
    elems = np.array(N.elements, dtype=np.int64)
    pos = np.full(M.size, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    add = np.stack([pos[M.add_row(int(x))[elems]] for x in elems])
    act = pos[M.act_table[:, elems]]
    sub = TableModule(M.ring, [M.label(int(x)) for x in elems], add, act,
                      origin=f"{N.describe()} ⊆ {_short(M)} over {M.ring}", check=False)
    return sub, ModuleHom(sub, M, elems)


# -- direct sums --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DirectSum:
    left: FiniteModule
    right: FiniteModule
    module: FiniteModule
    embed1: ModuleHom
    embed2: ModuleHom

    def lift(self, N1: Submodule, N2: Submodule) -> Submodule:
        """N1 ⊕ N2 inside left ⊕ right."""
        if N1.module != self.left or N2.module != self.right:
            raise ModuleError("summands do not match the direct sum")
        flags = (N1.member[:, None] & N2.member[None, :]).ravel()
        return submodule_from_mask(self.module, bool_to_mask(flags))

    def lift_left(self, N1: Submodule) -> Submodule:
        return self.lift(N1, whole(self.right))

    def lift_right(self, N2: Submodule) -> Submodule:
        return self.lift(whole(self.left), N2)


def direct_sum(M1: FiniteModule, M2: FiniteModule) -> DirectSum:
    if M1.ring != M2.ring:
        raise ModuleError(f"ring mismatch: {M1.ring} vs {M2.ring}")
    R = M1.ring
    origin = f"({_short(M1)})⊕({_short(M2)}) over {R}"
    n2 = M2.size
    if isinstance(M1, CoordinateModule) and isinstance(M2, CoordinateModule):
        M = CoordinateModule(R, M1.orders + M2.orders, origin=origin)
    else:
        labels = [M1.label(a) + M2.label(b) for a in range(M1.size) for b in range(n2)]
        i1, i2 = np.divmod(np.arange(M1.size * n2), n2)
        add = np.stack([M1.add_row(int(a))[i1] * n2 + M2.add_row(int(b))[i2] for a, b in zip(i1, i2)])
        act = M1.act_table[:, i1] * n2 + M2.act_table[:, i2]
        M = TableModule(R, labels, add, act, origin=origin, check=False)
    # index(a, b) = a*|M2| + b in both representations
    e1 = hom_from_table(M1, M, np.arange(M1.size) * n2, check=False)
    e2 = hom_from_table(M2, M, np.arange(n2), check=False)
    return DirectSum(M1, M2, M, e1, e2)


# -- multiplication modules ---------------------------------------------------

@lru_cache(maxsize=256)
def is_multiplication(M: FiniteModule) -> bool:
    return all(
        ideal_times_module(N.residual, M).mask == N.mask for N in enumerate_submodules(M)
    )


def _require_multiplication(M: FiniteModule):
    if not is_multiplication(M):
        raise NotMultiplicationModuleError(f"{M} is not a multiplication module")


def product(N: Submodule, K: Submodule) -> Submodule:
    """NK = (N:M)(K:M)M."""
    if N.module != K.module:
        raise ModuleError("submodules live in different modules")
    _require_multiplication(N.module)
    return ideal_times_module(N.residual * K.residual, N.module)


def product_all(subs: list[Submodule]) -> Submodule:
    return reduce(product, subs)


def submodule_power(N: Submodule, t: int) -> Submodule:
    _require_multiplication(N.module)
    return ideal_times_module(N.residual ** t, N.module)


def presentation_ideals(N: Submodule) -> list[RingIdeal]:
    """All ideals I of R with I*M = N."""
    M = N.module
    return [I for I in N.ring.ideals() if ideal_times_module(I, M).mask == N.mask]


def are_comaximal(N: Submodule, K: Submodule) -> bool:
    return not sum_(N, K).is_proper()


# -- radicals -----------------------------------------------------------------

def prime_submodules(M: FiniteModule) -> list[Submodule]:
    return [N for N in enumerate_submodules(M) if N.is_proper() and is_prime_submodule(N)[0]]


def maximal_submodules(M: FiniteModule) -> list[Submodule]:
    return [N for N in enumerate_submodules(M) if N.is_proper() and is_maximal_submodule(N)]


def m_radical(N: Submodule) -> Submodule:
    """Intersection of the prime submodules containing N, or M if there are none."""
    _require_proper(N)
    M = N.module
    above = [P for P in prime_submodules(M) if N <= P]
    return intersect_all(above) if above else whole(M)


def rad_module(M: FiniteModule) -> Submodule:
    maximal = maximal_submodules(M)
    return intersect_all(maximal) if maximal else whole(M)


# -- secondary submodules -----------------------------------------------------

def homothety_kind(N: Submodule, r: int) -> str:
    """'surjective', 'nilpotent' or 'neither' for x -> r*x on N."""
    image = scalar_image(r, N)
    if image.mask == N.mask:
        return "surjective"
    # r^t N shrinks until it stabilises; nilpotent iff it reaches 0
    current = image
    while True:
        nxt = scalar_image(r, current)
        if nxt.mask == current.mask:
            break
        current = nxt
    return "nilpotent" if current.is_zero() else "neither"


def is_secondary(N: Submodule) -> bool:
    if N.is_zero():
        raise ModuleError("secondary submodules are nonzero by definition")
    return all(homothety_kind(N, r) != "neither" for r in N.ring)


# -- localization -------------------------------------------------------------

def _strip(d: int, primes: list[int]) -> int:
    for p in primes:
        while d % p == 0:
            d //= p
    return d


@dataclass(frozen=True, eq=False)
class LocalizedModule:
    base: FiniteModule
    S: MultiplicativeSet
    ring: ZModRing
    module: FiniteModule
    table: np.ndarray  # canonical map x -> x/1, base index -> localized index

    def image(self, N: Submodule) -> Submodule:
        if N.module != self.base:
            raise ModuleError("submodule is not in the base module")
        flags = np.zeros(self.module.size, dtype=bool)
        flags[self.table[N.elements]] = True
        return submodule_from_mask(self.module, bool_to_mask(flags))

    def __call__(self, x) -> int:
        return int(self.table[self.base.index(x)])


def complement_of_prime(R: ZModRing, p: int) -> MultiplicativeSet:
    """R \\ (p) for a prime p dividing m."""
    if R.m % p or len(factorize(p).factors) != 1 or factorize(p).exponent(p) != 1:
        raise ValueError(f"{p} is not a prime divisor of {R.m}")
    return MultiplicativeSet(R, frozenset(x for x in R if x % p))


def localize_module(M: FiniteModule, S: MultiplicativeSet) -> LocalizedModule:
    """S^{-1}M over S^{-1}R = Z_{m'}, m' the part of m prime to every element of S."""
    if S.ring != M.ring:
        raise ModuleError("multiplicative set lives in a different ring")
    if S.contains_zero():
        raise ModuleError("cannot localize at a multiplicative set containing 0")
    m = M.ring.m
    inverted = S.inverted_primes()
    m_local = _strip(m, inverted)
    R_local = ZModRing(m_local)
    tag = f"S^-1({_short(M)}), S={S}"
    if isinstance(M, CoordinateModule):
        kept = [i for i, d in enumerate(M.orders) if _strip(d, inverted) > 1]
        new_orders = [_strip(M.orders[i], inverted) for i in kept]
        L = CoordinateModule(R_local, new_orders, origin=f"{tag} over {R_local}")
        if kept:
            table = L.encode(M.coords[:, kept])
        else:
            table = np.zeros(M.size, dtype=np.int64)
        return LocalizedModule(M, S, R_local, L, np.asarray(table, dtype=np.int64))
    # general case: S^{-1}M ≅ M / {x : (m/m') x = 0}
    torsion_order = m // m_local
    torsion = submodule_from_mask(
        M, bool_to_mask(M.act_table[torsion_order % m] == 0)
    )
    Q = QuotientModule(M, torsion)
    act = Q.act_table[:m_local]
    L = TableModule(R_local, Q.labels, Q.add_table, act, origin=f"{tag} over {R_local}",
                    lookup=Q._extra_lookup, check=True)
    return LocalizedModule(M, S, R_local, L, Q.coset_of)


def localize(M: FiniteModule, N: Submodule, S: MultiplicativeSet) -> tuple[LocalizedModule, Submodule]:
    loc = localize_module(M, S)
    return loc, loc.image(N)


# -- homomorphisms ------------------------------------------------------------

def hom_image(f: ModuleHom, N: Submodule) -> Submodule:
    return f.image(N)


def hom_preimage(f: ModuleHom, N: Submodule) -> Submodule:
    return f.preimage(N)


def all_homs(M1: FiniteModule, M2: FiniteModule, cap: int = 512) -> list[ModuleHom]:
    """Every homomorphism M1 -> M2, or [] if there are more than ``cap``.

    A generator g of additive order o can go to any y with o*y = 0.
    """
    if M1.ring != M2.ring:
        return []
    options = []
    for g in M1.generators:
        order = _additive_order(M1, g)
        options.append([y for y in range(M2.size) if _is_killed(M2, y, order)])
    if prod(len(o) for o in options) > cap:
        return []
    homs = []
    for images in cartesian(*options):
        try:
            homs.append(make_hom(M1, M2, list(images)))
        except ModuleError:
            # generators of a table module need not be independent
            continue
    return homs


def _additive_order(M: FiniteModule, x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = M.add(y, x)
        k += 1
    return k


def _is_killed(M: FiniteModule, y: int, order: int) -> bool:
    return M.act(order % M.ring.m, y) == 0 if order % M.ring.m else True
