from itertools import combinations

import numpy as np
import pytest

from knsub.modules import (
    CapExceededError,
    ImproperSubmoduleError,
    ModuleError,
    build_module,
    enumerate_submodules,
    identity_hom,
    intersect,
    is_maximal_submodule,
    is_prime_submodule,
    make_hom,
    proper_submodules,
    reduce_integer_scalars,
    residual_element,
    residual_module,
    residual_ring,
    span,
    submodule_from_mask,
    sum_,
    whole,
    zero_submodule,
)
from knsub.ring import ZModRing, divisors

from conftest import brute_members, elements, zmod


def _brute_lattice(m, orders):
    """Every subset closed under + and the scalar action, by exhaustion."""
    elems = elements(orders)
    add = lambda x, y: tuple((a + b) % d for a, b, d in zip(x, y, orders))
    act = lambda r, x: tuple(r * a % d for a, d in zip(x, orders))
    zero = elems[0]
    others = elems[1:]
    found = set()
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            S = {zero, *extra}
            if all(add(x, y) in S for x in S for y in S) and all(act(r, x) in S for r in range(m) for x in S):
                found.add(frozenset(S))
    return found


@pytest.mark.parametrize("m, orders", [(4, [4]), (2, [2, 2]), (4, [4, 2]), (12, [12]), (3, [3, 3]), (6, [6])])
def test_enumeration_matches_exhaustive_search(m, orders):
    M = build_module(ZModRing(m), orders)
    subs = enumerate_submodules(M)
    assert {frozenset(brute_members(N)) for N in subs} == _brute_lattice(m, orders)
    assert len(subs) == len({N.mask for N in subs})


@pytest.mark.parametrize("m, orders, count", [(4, [4], 3), (2, [2, 2], 5), (4, [4, 2], 8)])
def test_submodule_counts(m, orders, count):
    assert len(enumerate_submodules(build_module(ZModRing(m), orders))) == count


@pytest.mark.parametrize("m", [8, 12, 30, 36, 60])
def test_cyclic_lattice_is_divisor_lattice(m):
    assert sorted(N.size for N in enumerate_submodules(zmod(m))) == sorted(m // d for d in divisors(m))


def test_zero_module():
    Z = build_module(ZModRing(4), [])
    assert Z.size == 1
    assert len(enumerate_submodules(Z)) == 1
    assert proper_submodules(Z) == ()


def test_build_module_examples():
    assert zmod(12).size == 12
    assert build_module(ZModRing(4), [4, 2]).size == 8
    with pytest.raises(ModuleError):
        build_module(ZModRing(12), [8])


def test_reduce_integer_scalars():
    assert reduce_integer_scalars([8]).ring.m == 8
    M = reduce_integer_scalars([4, 2])
    assert M.ring.m == 4 and M.size == 8
    assert reduce_integer_scalars([9, 3]).ring.m == 9


def test_module_cap(monkeypatch):
    monkeypatch.setenv("KNSUB_MAX_MODULE_SIZE", "10")
    with pytest.raises(CapExceededError):
        build_module(ZModRing(12), [12])


def test_element_index_and_format():
    M = build_module(ZModRing(4), [4, 2])
    assert M.index("2,1") == M.index((2, 1)) == 5
    assert M.format(5) == "2,1"
    assert M.index(0) == 0 and M.format(0) == "0,0"
    with pytest.raises(ModuleError):
        M.index("4,0")
    with pytest.raises(ModuleError):
        M.index("1")


def test_span_examples():
    M = zmod(12)
    assert brute_members(span(M, [4])) == {(0,), (4,), (8,)}
    assert span(M, []).is_zero()
    K = build_module(ZModRing(4), [4, 2])
    assert brute_members(span(K, ["2,0"])) == {(0, 0), (2, 0)}


def test_span_generators_are_minimal():
    M = zmod(12)
    N = span(M, [4, 8, 6])
    # 4 is redundant given 8 and 6; neither of those alone spans
    assert N.size == 6 and N.describe() == "⟨8; 6⟩"
    assert span(M, N.gens).mask == N.mask


def test_residual_ring_examples():
    assert residual_ring(zero_submodule(zmod(6))).gen == 6
    K = build_module(ZModRing(4), [4, 2])
    assert residual_ring(span(K, ["2,0"])).gen == 2
    assert residual_ring(whole(K)).gen == 1


def test_residual_ring_against_scan():
    for m, orders in [(4, [4, 2]), (8, [8, 2]), (9, [9, 3]), (36, [4, 9])]:
        M = build_module(ZModRing(m), orders)
        for N in enumerate_submodules(M):
            members = set(N.elements)
            scan = [r for r in range(m) if all(M.act(r, x) in members for x in range(M.size))]
            assert set(N.residual.elements()) == set(scan)


def test_residual_element_examples():
    N = span(zmod(12), [4])
    assert residual_element(N, 2).gen == 2
    assert residual_element(N, 4).gen == 1
    assert residual_element(zero_submodule(zmod(8)), 4).gen == 2


def test_residual_module_examples():
    M = zmod(12)
    N = span(M, [4])
    R = M.ring
    assert brute_members(residual_module(N, R.ideal(2))) == {(x,) for x in range(0, 12, 2)}
    assert residual_module(N, R.unit_ideal()).mask == N.mask
    assert residual_module(N, R.zero_ideal()).mask == whole(M).mask


def test_lattice_operations():
    M = zmod(12)
    assert brute_members(intersect(span(M, [2]), span(M, [3]))) == {(0,), (6,)}
    assert sum_(span(M, [4]), span(M, [6])).mask == span(M, [2]).mask
    N = span(M, [4])
    assert intersect(N, whole(M)).mask == N.mask
    assert 8 in N and 2 not in N


def test_submodule_from_mask_rejects_non_subgroup():
    with pytest.raises(ModuleError):
        submodule_from_mask(zmod(4), 0b0011)


def test_maximal():
    M = zmod(12)
    assert is_maximal_submodule(span(M, [2]))
    assert not is_maximal_submodule(span(M, [4]))
    assert is_maximal_submodule(zero_submodule(zmod(5)))
    with pytest.raises(ImproperSubmoduleError):
        is_maximal_submodule(whole(M))


def test_prime_submodule():
    M = zmod(12)
    assert is_prime_submodule(span(M, [2])) == (True, None)
    assert is_prime_submodule(span(M, [4])) == (False, {"r": 2, "x": "2"})
    assert is_prime_submodule(zero_submodule(zmod(7)))[0]


def test_prime_submodule_against_definition():
    for m, orders in [(12, [12]), (4, [4, 2]), (8, [8, 2]), (6, [6])]:
        M = build_module(ZModRing(m), orders)
        for N in proper_submodules(M):
            res = set(N.residual.elements())
            mem = set(N.elements)
            scan = all(
                M.act(r, x) not in mem or x in mem or r in res
                for r in range(m) for x in range(M.size)
            )
            assert is_prime_submodule(N)[0] == scan


def test_homomorphisms():
    M = zmod(12)
    f = make_hom(M, M, [4])
    assert [f(x) for x in range(12)] == [4 * x % 12 for x in range(12)]
    assert brute_members(f.kernel()) == {(0,), (3,), (6,), (9,)}
    R4 = ZModRing(4)
    red = make_hom(build_module(R4, [4]), build_module(R4, [2]), [1])
    assert red.is_surjective() and not red.is_injective()
    assert red.image(span(red.source, [2])).is_zero()
    ident = identity_hom(M)
    assert (ident.table == np.arange(12)).all()
    assert ident.image(span(M, [3])).mask == span(M, [3]).mask


def test_make_hom_rejects_ill_defined():
    R4 = ZModRing(4)
    with pytest.raises(ModuleError):
        make_hom(build_module(R4, [2]), build_module(R4, [4]), [1])
