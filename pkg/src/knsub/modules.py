"""Finite modules over Z/mZ, submodules as bitsets, residuals, lattice scans.

Elements of a module are addressed by their index in a canonical order.  For
coordinate modules the order is lexicographic on coordinate tuples, so the
smallest index is also the lexicographically least label.  Index 0 is always
the zero element.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from math import lcm, prod
from typing import Iterable, Sequence, Union

import numpy as np

from .ring import RingIdeal, ZModRing

DEFAULT_MAX_MODULE_SIZE = 4096

Label = tuple
ElementLike = Union[int, str, Sequence[int]]


class ModuleError(ValueError):
    pass


class CapExceededError(ModuleError):
    pass


class ImproperSubmoduleError(ModuleError):
    """A predicate that needs a proper submodule was handed N = M."""


def max_module_size() -> int:
    raw = os.environ.get("KNSUB_MAX_MODULE_SIZE")
    return int(raw) if raw else DEFAULT_MAX_MODULE_SIZE


def mask_to_bool(mask: int, size: int) -> np.ndarray:
    nbytes = (size + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def bool_to_mask(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def format_label(label: Label) -> str:
    return ",".join(str(a) for a in label)


def parse_label(text: str) -> Label:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def parse_generators(text: str) -> list[Label]:
    """``"2,0;0,1"`` -> [(2, 0), (0, 1)]; the empty string is no generators."""
    text = text.strip()
    if not text:
        return []
    return [parse_label(chunk) for chunk in text.split(";") if chunk.strip()]


class FiniteModule:
    """Common surface of coordinate and table-backed modules."""

    ring: ZModRing
    size: int
    origin: str

    # subclasses fill these in
    def label(self, i: int) -> Label:
        raise NotImplementedError

    def _lookup(self, label: Label) -> int:
        raise NotImplementedError

    def add_row(self, i: int) -> np.ndarray:
        """Indices of i + j for every element j."""
        raise NotImplementedError

    def _build_act_table(self) -> np.ndarray:
        raise NotImplementedError

    @property
    def generators(self) -> tuple[int, ...]:
        raise NotImplementedError

    @cached_property
    def act_table(self) -> np.ndarray:
        """``act_table[r, i]`` is the index of r * element i."""
        return self._build_act_table()

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.act_table[self.ring.m - 1]

    def add(self, i: int, j: int) -> int:
        return int(self.add_row(i)[j])

    def neg(self, i: int) -> int:
        return int(self.neg_table[i])

    def act(self, r: int, i: int) -> int:
        return int(self.act_table[r % self.ring.m, i])

    def index(self, x: ElementLike) -> int:
        if isinstance(x, (int, np.integer)):
            if not 0 <= x < self.size:
                raise ModuleError(f"element index {x} outside module of size {self.size}")
            return int(x)
        if isinstance(x, str):
            x = parse_label(x)
        try:
            return self._lookup(tuple(int(a) for a in x))
        except (KeyError, IndexError, ValueError):
            raise ModuleError(f"{x!r} is not an element of {self}") from None

    def format(self, i: int) -> str:
        return format_label(self.label(i))

    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def exponent(self) -> int:
        """Least e >= 1 with e*M = 0 (divides m)."""
        for d in range(1, self.ring.m + 1):
            if self.ring.m % d == 0 and not self.act_table[d % self.ring.m].any():
                return d
        return self.ring.m

    def is_zero(self) -> bool:
        return self.size == 1

    def __str__(self):
        return self.origin


class CoordinateModule(FiniteModule):
    """Z_{d_1} x ... x Z_{d_t} over Z_m with componentwise scalar action."""

    def __init__(self, ring: ZModRing, orders: Sequence[int], origin: str | None = None):
        orders = tuple(int(d) for d in orders)
        for d in orders:
            if d < 2:
                raise ModuleError(f"cyclic factor order {d} must be >= 2")
            if ring.m % d:
                raise ModuleError(f"cyclic factor order {d} does not divide {ring.m}")
        self.ring = ring
        self.orders = orders
        self.size = prod(orders)
        if self.size > max_module_size():
            raise CapExceededError(
                f"module of size {self.size} exceeds the cap {max_module_size()}"
            )
        strides = [1] * len(orders)
        for i in range(len(orders) - 2, -1, -1):
            strides[i] = strides[i + 1] * orders[i + 1]
        self._strides = np.array(strides, dtype=np.int64)
        self._orders = np.array(orders, dtype=np.int64)
        self.origin = origin or default_origin(ring, orders)

    def __eq__(self, other):
        return (
            isinstance(other, CoordinateModule)
            and self.ring == other.ring
            and self.orders == other.orders
        )

    def __hash__(self):
        return hash((self.ring, self.orders))

    def __repr__(self):
        return f"CoordinateModule({self.ring}, {list(self.orders)})"

    @cached_property
    def coords(self) -> np.ndarray:
        idx = np.arange(self.size, dtype=np.int64)
        if not self.orders:
            return np.zeros((1, 0), dtype=np.int64)
        return (idx[:, None] // self._strides) % self._orders

    def encode(self, coords: np.ndarray) -> np.ndarray:
        return (coords % self._orders) @ self._strides

    def label(self, i: int) -> Label:
        return tuple(int(a) for a in self.coords[i])

    def _lookup(self, label: Label) -> int:
        if len(label) != len(self.orders):
            raise ValueError("wrong arity")
        if any(not 0 <= a < d for a, d in zip(label, self.orders)):
            raise ValueError("coordinate out of range")
        return int(self.encode(np.array(label, dtype=np.int64)))

    def add_row(self, i: int) -> np.ndarray:
        return self.encode(self.coords + self.coords[i])

    def _build_act_table(self) -> np.ndarray:
        table = np.empty((self.ring.m, self.size), dtype=np.int64)
        for r in range(self.ring.m):
            table[r] = self.encode(self.coords * r)
        return table

    @property
    def generators(self) -> tuple[int, ...]:
        gens = []
        for pos in range(len(self.orders)):
            unit = [0] * len(self.orders)
            unit[pos] = 1
            gens.append(self._lookup(tuple(unit)))
        return tuple(gens)


class TableModule(FiniteModule):
    """A module given by explicit addition and scalar-action tables.

    Used for quotients, localizations of table modules, and submodules viewed
    as modules in their own right.  ``lookup`` may accept labels beyond the
    canonical ones (a quotient accepts any representative).
    """

    def __init__(self, ring: ZModRing, labels: Sequence[Label], add_table, act_table,
                 origin: str, lookup=None, check: bool = True):
        self.ring = ring
        self.labels = [tuple(lab) for lab in labels]
        self.size = len(self.labels)
        if self.size > max_module_size():
            raise CapExceededError(
                f"module of size {self.size} exceeds the cap {max_module_size()}"
            )
        self._add = np.asarray(add_table, dtype=np.int64)
        self._act = np.asarray(act_table, dtype=np.int64)
        self.origin = origin
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._extra_lookup = lookup
        if check:
            self._check_tables()

    def __repr__(self):
        return f"TableModule({self.origin!r}, size={self.size})"

    def _check_tables(self):
        add, act, n = self._add, self._act, self.size
        if add.shape != (n, n) or act.shape != (self.ring.m, n):
            raise ModuleError("table shapes do not match the module size")
        if not (add[0] == np.arange(n)).all():
            raise ModuleError("index 0 is not an additive identity")
        if not (add == add.T).all():
            raise ModuleError("addition table is not commutative")
        if not (add == 0).any(axis=1).all():
            raise ModuleError("some element has no additive inverse")
        if n <= 128 and not (add[add, :] == add[:, add]).all():
            raise ModuleError("addition table is not associative")
        if not (act[1 % self.ring.m] == np.arange(n)).all():
            raise ModuleError("1 does not act as the identity")
        for r in range(self.ring.m):
            # r(x + y) = rx + ry
            if not (act[r][add] == add[act[r][:, None], act[r][None, :]]).all():
                raise ModuleError(f"scalar {r} does not distribute over addition")

    def label(self, i: int) -> Label:
        return self.labels[i]

    def _lookup(self, label: Label) -> int:
        if label in self._index:
            return self._index[label]
        if self._extra_lookup is not None:
            return self._extra_lookup(label)
        raise KeyError(label)

    def add_row(self, i: int) -> np.ndarray:
        return self._add[i]

    @property
    def add_table(self) -> np.ndarray:
        return self._add

    def _build_act_table(self) -> np.ndarray:
        return self._act

    @cached_property
    def _generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        mask = 1
        full = (1 << self.size) - 1
        for x in range(1, self.size):
            if mask == full:
                break
            if not mask >> x & 1:
                gens.append(x)
                mask = _close(self, mask, [x])
        return tuple(gens)

    @property
    def generators(self) -> tuple[int, ...]:
        return self._generators


def default_origin(ring: ZModRing, orders: Sequence[int]) -> str:
    if not orders:
        return f"0 over {ring}"
    body = "×".join(f"Z_{d}" for d in orders)
    return f"{body} over {ring}"


def build_module(R: ZModRing, orders: Sequence[int], origin: str | None = None) -> CoordinateModule:
    return CoordinateModule(R, orders, origin)


def reduce_integer_scalars(orders: Sequence[int]) -> CoordinateModule:
    """A finite Z-module Z_{d_1} x ... read as a module over Z_e, e = lcm(d_i).

    The integer action factors through Z_e, and every predicate here depends
    on scalars only through their residues mod e.
    """
    if not orders:
        raise ModuleError("reduce_integer_scalars needs at least one cyclic factor")
    e = reduce(lcm, orders)
    body = "×".join(f"Z_{d}" for d in orders)
    return CoordinateModule(ZModRing(e), orders, origin=f"Z-module {body} (scalars mod {e})")


# -- submodules ---------------------------------------------------------------

def _close(M: FiniteModule, mask: int, gens: Iterable[int]) -> int:
    """Smallest subgroup containing the set ``mask`` (a subgroup) and ``gens``."""
    for g in gens:
        if mask >> g & 1:
            continue
        members = np.flatnonzero(mask_to_bool(mask, M.size))
        flags = np.zeros(M.size, dtype=bool)
        y = 0
        while True:
            flags[M.add_row(y)[members]] = True
            y = M.add(y, g)
            if y == 0:
                break
        mask = bool_to_mask(flags)
    return mask


@dataclass(frozen=True)
class Submodule:
    module: FiniteModule
    mask: int
    gens: tuple[int, ...] = field(default=(), compare=False)

    @cached_property
    def member(self) -> np.ndarray:
        return mask_to_bool(self.mask, self.module.size)

    @cached_property
    def elements(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.member)]

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def ring(self) -> ZModRing:
        return self.module.ring

    def __contains__(self, x: ElementLike) -> bool:
        return bool(self.mask >> self.module.index(x) & 1)

    def __len__(self):
        return self.size

    def __le__(self, other: Submodule) -> bool:
        _same_module(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Submodule) -> bool:
        return self <= other and self.mask != other.mask

    def is_proper(self) -> bool:
        return self.size < self.module.size

    def is_zero(self) -> bool:
        return self.mask == 1

    def labels(self) -> list[Label]:
        return [self.module.label(i) for i in self.elements]

    def describe(self) -> str:
        if not self.gens:
            return "0"
        return "⟨" + "; ".join(self.module.format(g) for g in self.gens) + "⟩"

    def __str__(self):
        return f"{self.describe()} in {self.module}"

    @cached_property
    def hit_masks(self) -> tuple[int, ...]:
        """``hit_masks[s]`` is the bitset {x : s*x in N}, for every scalar s."""
        member = self.member
        return tuple(bool_to_mask(member[row]) for row in self.module.act_table)

    @cached_property
    def residual(self) -> RingIdeal:
        return residual_ring(self)


def _same_module(N: Submodule, K: Submodule):
    if N.module != K.module:
        raise ModuleError(f"submodules live in different modules: {N.module} vs {K.module}")


def _greedy_minimal(M: FiniteModule, gens: Sequence[int], mask: int) -> tuple[int, ...]:
    gens = list(gens)
    i = 0
    while i < len(gens):
        rest = gens[:i] + gens[i + 1:]
        if _close(M, 1, rest) == mask:
            gens = rest
        else:
            i += 1
    return tuple(gens)


def span(M: FiniteModule, gens: Iterable[ElementLike] = ()) -> Submodule:
    idx = [M.index(g) for g in gens]
    mask = _close(M, 1, idx)
    nonzero = [g for g in dict.fromkeys(idx) if g != 0]
    return Submodule(M, mask, _greedy_minimal(M, nonzero, mask))


def submodule_from_mask(M: FiniteModule, mask: int) -> Submodule:
    """Wrap a bitset already known to be a submodule, recovering generators."""
    gens: list[int] = []
    acc = 1
    rest = mask & ~acc
    while rest:
        x = lowest_bit(rest)
        gens.append(x)
        acc = _close(M, acc, [x])
        rest = mask & ~acc
    if acc != mask:
        raise ModuleError("bitset is not closed under addition")
    return Submodule(M, mask, _greedy_minimal(M, gens, mask))


def zero_submodule(M: FiniteModule) -> Submodule:
    return Submodule(M, 1, ())


def whole(M: FiniteModule) -> Submodule:
    return Submodule(M, (1 << M.size) - 1, M.generators)


def residual_ring(N: Submodule) -> RingIdeal:
    """(N :_R M) = {r : rM ⊆ N}, scanned against a generating set of M."""
    M, R = N.module, N.ring
    gens = M.generators
    for r in range(1, R.m):
        if all(N.mask >> int(M.act_table[r, g]) & 1 for g in gens):
            return RingIdeal(R, r)
    return R.zero_ideal()


def residual_element(N: Submodule, x: ElementLike) -> RingIdeal:
    """(N :_R x) = {r : r*x in N}."""
    M, R = N.module, N.ring
    i = M.index(x)
    for r in range(1, R.m):
        if N.mask >> int(M.act_table[r, i]) & 1:
            return RingIdeal(R, r)
    return R.zero_ideal()


def residual_module(N: Submodule, I: RingIdeal) -> Submodule:
    """(N :_M I) = {x : I*x ⊆ N}; testing the generator of I suffices."""
    if I.ring != N.ring:
        raise ModuleError(f"ideal of {I.ring} used with a module over {N.ring}")
    return submodule_from_mask(N.module, N.hit_masks[I.gen % N.ring.m])


def intersect(N: Submodule, K: Submodule) -> Submodule:
    _same_module(N, K)
    return submodule_from_mask(N.module, N.mask & K.mask)


def intersect_all(subs: Sequence[Submodule]) -> Submodule:
    if not subs:
        raise ModuleError("empty intersection")
    return submodule_from_mask(subs[0].module, reduce(lambda a, b: a & b, (s.mask for s in subs)))


def sum_(N: Submodule, K: Submodule) -> Submodule:
    _same_module(N, K)
    mask = _close(N.module, N.mask, K.gens)
    return Submodule(N.module, mask, _greedy_minimal(N.module, N.gens + K.gens, mask))


def equals(N: Submodule, K: Submodule) -> bool:
    _same_module(N, K)
    return N.mask == K.mask


def is_proper(N: Submodule) -> bool:
    return N.is_proper()


def contains(N: Submodule, x: ElementLike) -> bool:
    return x in N


def ideal_times_module(I: RingIdeal, M: FiniteModule) -> Submodule:
    """I*M, which for a principal ideal is just gen*M."""
    g = I.gen % M.ring.m
    return span(M, sorted({int(M.act_table[g, x]) for x in M.generators}))


def scalar_image(r: int, N: Submodule) -> Submodule:
    """r*N as a submodule."""
    M = N.module
    flags = np.zeros(M.size, dtype=bool)
    flags[M.act_table[r % M.ring.m][N.elements]] = True
    return submodule_from_mask(M, bool_to_mask(flags))


@lru_cache(maxsize=256)
def enumerate_submodules(M: FiniteModule) -> tuple[Submodule, ...]:
    """All submodules of M, smallest first, each with a greedy-minimal generator list."""
    if M.size > max_module_size():
        raise CapExceededError(f"module of size {M.size} exceeds the cap {max_module_size()}")
    found: dict[int, tuple[int, ...]] = {1: ()}
    frontier = [1]
    while frontier:
        nxt = []
        for mask in frontier:
            for x in range(M.size):
                if mask >> x & 1:
                    continue
                bigger = _close(M, mask, [x])
                if bigger not in found:
                    found[bigger] = found[mask] + (x,)
                    nxt.append(bigger)
        frontier = nxt
    subs = [Submodule(M, mask, _greedy_minimal(M, gens, mask)) for mask, gens in found.items()]
    subs.sort(key=lambda s: (s.size, s.elements))
    return tuple(subs)


def proper_submodules(M: FiniteModule) -> tuple[Submodule, ...]:
    return tuple(N for N in enumerate_submodules(M) if N.is_proper())


def _require_proper(N: Submodule):
    if not N.is_proper():
        raise ImproperSubmoduleError(f"submodule {N.describe()} is not proper in {N.module}")


def is_maximal_submodule(N: Submodule) -> bool:
    _require_proper(N)
    M = N.module
    full = (1 << M.size) - 1
    return not any(
        N.mask != K.mask and K.mask != full and N.mask & ~K.mask == 0
        for K in enumerate_submodules(M)
    )


def prime_submodule_witness(N: Submodule) -> tuple[int, int] | None:
    """Least (r, x) with r*x in N, x not in N, r not in (N:M)."""
    _require_proper(N)
    res = N.residual
    for r in range(N.ring.m):
        if r in res:
            continue
        bad = N.hit_masks[r] & ~N.mask
        if bad:
            return r, lowest_bit(bad)
    return None


def is_prime_submodule(N: Submodule) -> tuple[bool, dict | None]:
    w = prime_submodule_witness(N)
    if w is None:
        return True, None
    return False, {"r": w[0], "x": N.module.format(w[1])}


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ModuleHom:
    source: FiniteModule
    target: FiniteModule
    table: np.ndarray

    def __call__(self, x: ElementLike) -> int:
        return int(self.table[self.source.index(x)])

    def image(self, N: Submodule | None = None) -> Submodule:
        if N is None:
            N = whole(self.source)
        if N.module != self.source:
            raise ModuleError("submodule is not in the source module")
        flags = np.zeros(self.target.size, dtype=bool)
        flags[self.table[N.elements]] = True
        return submodule_from_mask(self.target, bool_to_mask(flags))

    def preimage(self, N: Submodule) -> Submodule:
        if N.module != self.target:
            raise ModuleError("submodule is not in the target module")
        return submodule_from_mask(self.source, bool_to_mask(N.member[self.table]))

    def kernel(self) -> Submodule:
        return self.preimage(zero_submodule(self.target))

    def is_surjective(self) -> bool:
        return len(np.unique(self.table)) == self.target.size

    def is_injective(self) -> bool:
        return len(np.unique(self.table)) == self.source.size


def _check_hom(source: FiniteModule, target: FiniteModule, table: np.ndarray):
    for x in range(source.size):
        lhs = table[source.add_row(x)]
        rhs = target.add_row(int(table[x]))[table]
        if not (lhs == rhs).all():
            raise ModuleError("map is not additive")
    for r in range(source.ring.m):
        if not (table[source.act_table[r]] == target.act_table[r][table]).all():
            raise ModuleError(f"map does not commute with the scalar {r}")


def hom_from_table(source: FiniteModule, target: FiniteModule, table, check: bool = True) -> ModuleHom:
    if source.ring != target.ring:
        raise ModuleError(f"ring mismatch: {source.ring} vs {target.ring}")
    table = np.asarray(table, dtype=np.int64)
    if check:
        _check_hom(source, target, table)
    return ModuleHom(source, target, table)


def make_hom(source: FiniteModule, target: FiniteModule, images: Sequence[ElementLike]) -> ModuleHom:
    """Extend images of ``source.generators`` additively to a verified hom."""
    if source.ring != target.ring:
        raise ModuleError(f"ring mismatch: {source.ring} vs {target.ring}")
    gens = source.generators
    if len(images) != len(gens):
        raise ModuleError(f"need {len(gens)} generator images, got {len(images)}")
    img = [target.index(y) for y in images]
    table = np.full(source.size, -1, dtype=np.int64)
    table[0] = 0
    queue = [0]
    while queue:
        x = queue.pop()
        fx = int(table[x])
        for g, fg in zip(gens, img):
            y = source.add(x, g)
            fy = target.add(fx, fg)
            if table[y] == -1:
                table[y] = fy
                queue.append(y)
            elif table[y] != fy:
                raise ModuleError("generator images do not define a homomorphism")
    _check_hom(source, target, table)
    return ModuleHom(source, target, table)


def identity_hom(M: FiniteModule) -> ModuleHom:
    return ModuleHom(M, M, np.arange(M.size, dtype=np.int64))
