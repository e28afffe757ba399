"""The theorem catalog, one registered property per claim.

Each generator walks the suite context and yields cases; a case's
hypothesis decides vacuity and its conclusion returns a verdict whose
witness names the failing instance.  Properties split by parameter range
(for example ``[n=1]``) carry the part of a claim that is known or
suspected to fail.
"""
from __future__ import annotations

from itertools import combinations

from ..constructions import (
    all_homs,
    are_comaximal,
    complement_of_prime,
    direct_sum,
    is_multiplication,
    is_secondary,
    localize_module,
    m_radical,
    presentation_ideals,
    prime_submodules,
    product,
    product_all,
    quotient,
    rad_module,
    submodule_as_module,
    submodule_power,
)
from ..modules import (
    enumerate_submodules,
    intersect,
    intersect_all,
    reduce_integer_scalars,
    residual_element,
    residual_module,
    span,
    zero_submodule,
)
from ..predicates import (
    HOLDS,
    colon_test,
    is_kn_closed,
    is_n_absorbing,
    is_quasi_prime,
    is_semi_n_absorbing,
    is_semiprime,
    is_strongly_kn_closed,
    kn_closed_submodule_form,
    strongly_kn_closed_submodule_form,
)
from ..ring import factorize, is_kn_closed_ideal, is_semi_n_absorbing_ideal, mult_closure, units
from ..zint import (
    factorization_condition,
    prime_power_condition,
    semi_2_condition,
    semi_n_decomposition,
    semi_n_union,
    tkn_condition,
    zint_ideal_is_kn_closed,
    zint_is_kn_closed,
    zint_is_n_absorbing,
    zint_is_semi_n_absorbing,
)
from .core import SCRUTINY, VERIFIED, PropertyCase, expect, first_failure, register

DIRECT_SUM_MAX = 128
HOM_CAP = 64
TKN_PRIMES = (2, 3)


def _kn(N, k, n) -> bool:
    return is_kn_closed(N, k, n).holds


def _ideal_kn(I, k, n) -> bool:
    """Ideal closedness, with the whole ring counting as closed."""
    return not I.is_proper() or is_kn_closed_ideal(I, k, n)[0]


def _case(name, tier, instance, hyp, concl):
    return PropertyCase(name, tier, instance, hyp, concl)


def _true():
    return True


def _grid_cases(name, tier, ctx, check, *, ks=None, ns=None, where=None):
    """One case per (proper N, k, n); ``check(N, k, n)`` returns (hypothesis, conclusion)."""
    K = ctx.kmax
    for M in ctx.modules:
        for N in ctx.proper(M):
            for k in ks or range(1, K + 1):
                for n in ns or range(1, K + 1):
                    if where and not where(k, n):
                        continue
                    hyp, concl = check(N, k, n)
                    yield _case(name, tier, f"{N} | k={k}, n={n}", hyp, concl)


def _fail_kn(N, k, n, **extra):
    v = is_kn_closed(N, k, n)
    return expect(v.holds, submodule=str(N), k=k, n=n, **(v.witness or {}), **extra)


# -- element and submodule forms ------------------------------------------------

@register("T-l1", VERIFIED, "element form of (k,n)-closed agrees with the form over all submodules L")
def _t_l1(ctx):
    def check(N, k, n):
        def concl():
            a, b = is_kn_closed(N, k, n), kn_closed_submodule_form(N, k, n)
            return expect(a.holds == b.holds, element_form=a.to_json(), submodule_form=b.to_json())
        return _true, concl
    return _grid_cases("T-l1", VERIFIED, ctx, check)


@register("T-t0", VERIFIED, "(k,n)-closed N has a (k,n)-closed residual ideal (N:M)")
def _t_t0(ctx):
    def check(N, k, n):
        def concl():
            ok, x = is_kn_closed_ideal(N.residual, k, n)
            return expect(ok, ideal=str(N.residual), x=x)
        return (lambda: _kn(N, k, n)), concl
    return _grid_cases("T-t0", VERIFIED, ctx, check)


@register("T-t0-pres", SCRUTINY,
          "on multiplication modules every presentation ideal of a (k,n)-closed N is a (k,n)-closed ideal")
def _t_t0_pres(ctx):
    def check(N, k, n):
        def hyp():
            return is_multiplication(N.module) and _kn(N, k, n)

        def concl():
            for I in presentation_ideals(N):
                ok, x = is_kn_closed_ideal(I, k, n)
                if not ok:
                    return expect(False, ideal=str(I), x=x)
            return HOLDS
        return hyp, concl
    return _grid_cases("T-t0-pres", SCRUTINY, ctx, check)


@register("T-tsm1", VERIFIED, "(k,n)-closed N makes every (N:x), x outside N, a (k,n)-closed ideal")
def _t_tsm1(ctx):
    def check(N, k, n):
        def concl():
            for x in range(N.module.size):
                if x in N:
                    continue
                I = residual_element(N, x)
                ok, w = is_kn_closed_ideal(I, k, n)
                if not ok:
                    return expect(False, x=N.module.format(x), ideal=str(I), ideal_witness=w)
            return HOLDS
        return (lambda: _kn(N, k, n)), concl
    return _grid_cases("T-tsm1", VERIFIED, ctx, check)



@register("T-tsm2", VERIFIED, "if every (N:x), x outside N, is a (k,n)-closed ideal then N is (k,n+1)-closed")
def _t_tsm2(ctx):
    def check(N, k, n):
        def hyp():
            M = N.module
            return all(
                is_kn_closed_ideal(residual_element(N, x), k, n)[0]
                for x in range(M.size) if x not in N
            )
        return hyp, (lambda: _fail_kn(N, k, n + 1))
    return _grid_cases("T-tsm2", VERIFIED, ctx, check)


@register("T-lsm", VERIFIED,
          "k > n: closed residuals at a generating set give a closed (N:M); on cyclic M, (N:m) and (N:M) agree")
def _t_lsm(ctx):
    def check(N, k, n):
        M = N.module
        gens = M.generators

        def hyp():
            return all(_ideal_kn(residual_element(N, g), k, n) for g in gens)

        def concl():
            ok, x = is_kn_closed_ideal(N.residual, k, n)
            if not ok:
                return expect(False, ideal=str(N.residual), x=x)
            if len(gens) == 1:
                a = _ideal_kn(residual_element(N, gens[0]), k, n)
                return expect(a == ok, generator=M.format(gens[0]), cyclic_agreement=False)
            return HOLDS
        return hyp, concl
    return _grid_cases("T-lsm", VERIFIED, ctx, check, where=lambda k, n: k > n)


def _prime_field_cyclics(ctx):
    """Cyclic submodules Rm of modules over prime fields, as modules in their own right."""
    out = []
    for M in ctx.modules:
        if factorize(M.ring.m).primes != [M.ring.m]:
            continue
        seen = set()
        for x in range(1, M.size):
            L = span(M, [x])
            if L.mask in seen:
                continue
            seen.add(L.mask)
            C, _ = submodule_as_module(L)
            out.append(C)
    return out


@register("T-lsm-div", VERIFIED,
          "over a division ring, (N:m) is (k,n)-closed iff every (N:m') is, on cyclic M = Rm",
          vacuity_ok="prime-field cyclic modules only have the zero proper submodule")
def _t_lsm_div(ctx):
    K = ctx.kmax
    for C in _prime_field_cyclics(ctx):
        m = C.generators[0]
        for N in ctx.proper(C):
            for k in range(1, K + 1):
                for n in range(1, K + 1):
                    def concl(N=N, k=k, n=n):
                        a = _ideal_kn(residual_element(N, m), k, n)
                        b = all(_ideal_kn(residual_element(N, y), k, n) for y in range(C.size))
                        return expect(a == b, generator_closed=a, all_closed=b)
                    yield _case("T-lsm-div", VERIFIED, f"{N} | k={k}, n={n}", _true, concl)


@register("T-c2", VERIFIED,
          "over a division ring on cyclic Rm: (N:m) (k,n)-closed gives N (k,n+1)-closed; semi-n gives semi-(n+1)",
          vacuity_ok="prime-field cyclic modules only have the zero proper submodule")
def _t_c2(ctx):
    K = ctx.kmax
    for C in _prime_field_cyclics(ctx):
        m = C.generators[0]
        for N in ctx.proper(C):
            I = residual_element(N, m)
            for k in range(1, K + 1):
                for n in range(1, K + 1):
                    yield _case("T-c2", VERIFIED, f"{N} | k={k}, n={n}",
                                lambda I=I, k=k, n=n: _ideal_kn(I, k, n),
                                lambda N=N, k=k, n=n: _fail_kn(N, k, n + 1))
            for n in range(1, K + 1):
                yield _case("T-c2", VERIFIED, f"{N} | semi n={n}",
                            lambda I=I, n=n: not I.is_proper() or is_semi_n_absorbing_ideal(I, n),
                            lambda N=N, n=n: _fail_kn(N, n + 1, n + 1))


# -- colon characterisation -------------------------------------------------------

def _colon_check(N, k, n):
    def concl():
        a, b = _kn(N, k, n), colon_test(N, k, n)
        return expect(a == b, kn_closed=a, colon_test=b)
    return _true, concl


@register("T-prop-colon", VERIFIED, "(k,n)-closed iff the colon ideals of r^k x and r^{n-1} x agree (k >= n-1)")
def _t_prop_colon(ctx):
    return _grid_cases("T-prop-colon", VERIFIED, ctx, _colon_check, where=lambda k, n: k >= n - 1)


@register("T-prop-colon[k<n-1]", SCRUTINY, "the colon characterisation for k < n-1")
def _t_prop_colon_low(ctx):
    return _grid_cases("T-prop-colon[k<n-1]", SCRUTINY, ctx, _colon_check, where=lambda k, n: k < n - 1)


# -- relations between the notions ---------------------------------------------------

def _semiprime_check(N, k, n):
    return (lambda: is_semiprime(N).holds), (lambda: _fail_kn(N, k, n))


@register("T-t1-1", VERIFIED, "semiprime N is (k,n)-closed for all k and n >= 2")
def _t_t1_1(ctx):
    return _grid_cases("T-t1-1", VERIFIED, ctx, _semiprime_check, where=lambda k, n: n >= 2)


@register("T-t1-1[n=1]", SCRUTINY, "semiprime N is (k,1)-closed for all k")
def _t_t1_1_one(ctx):
    return _grid_cases("T-t1-1[n=1]", SCRUTINY, ctx, _semiprime_check, ns=[1])


def _nabs_cases(name, ctx, target):
    for M in ctx.modules:
        for N in ctx.proper(M):
            for n in range(1, ctx.nabs_max + 1):
                for k in target(ctx, n):
                    yield _case(name, VERIFIED, f"{N} | n={n}, k={k}",
                                lambda N=N, n=n: is_n_absorbing(N, n, ctx.nabs_max).holds,
                                lambda N=N, k=k, n=n: _fail_kn(N, k, n))


@register("T-t1-2", VERIFIED, "n-absorbing N is semi n-absorbing")
def _t_t1_2(ctx):
    return _nabs_cases("T-t1-2", ctx, lambda ctx, n: [n])


@register("T-t1-3", VERIFIED, "n-absorbing N is (k,n)-closed for every k")
def _t_t1_3(ctx):
    return _nabs_cases("T-t1-3", ctx, lambda ctx, n: range(1, ctx.kmax + 1))


@register("T-t1-4", VERIFIED, "(k,n)-closed gives (k1,n1)-closed for k1 <= k, n1 >= n")
def _t_t1_4(ctx):
    K = ctx.kmax

    def check(N, k, n):
        def concl():
            return first_failure(
                _fail_kn(N, k1, n1) for k1 in range(1, k + 1) for n1 in range(n, K + 1)
            )
        return (lambda: _kn(N, k, n)), concl
    return _grid_cases("T-t1-4", VERIFIED, ctx, check)


@register("T-t1-5", VERIFIED, "semi n-absorbing gives semi n1-absorbing for n1 >= n")
def _t_t1_5(ctx):
    K = ctx.kmax

    def check(N, k, n):
        return (lambda: _kn(N, n, n)), (lambda: first_failure(_fail_kn(N, m, m) for m in range(n, K + 1)))
    return _grid_cases("T-t1-5", VERIFIED, ctx, check, ks=[1])


@register("T-t1-6", VERIFIED, "quasi-prime N is (k,n)-closed for k >= n >= 2")
def _t_t1_6(ctx):
    def check(N, k, n):
        return (lambda: is_quasi_prime(N).holds), (lambda: _fail_kn(N, k, n))
    return _grid_cases("T-t1-6", VERIFIED, ctx, check, where=lambda k, n: k >= n >= 2)


@register("T-ti", VERIFIED, "semi n-absorbing N is (k,n)-closed for every k")
def _t_ti(ctx):
    def check(N, k, n):
        return (lambda: _kn(N, n, n)), (lambda: _fail_kn(N, k, n))
    return _grid_cases("T-ti", VERIFIED, ctx, check)


@register("T-ciff", VERIFIED, "for k > n, (k,n)-closed iff semi n-absorbing")
def _t_ciff(ctx):
    def check(N, k, n):
        def concl():
            a, b = _kn(N, k, n), _kn(N, n, n)
            return expect(a == b, kn_closed=a, semi_n=b)
        return _true, concl
    return _grid_cases("T-ciff", VERIFIED, ctx, check, where=lambda k, n: k > n)


# -- intersections, radicals, products ----------------------------------------------

def _meet_closure(subs):
    """All intersections of nonempty subfamilies."""
    seen = {N.mask: N for N in subs}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for A in frontier:
            for B in subs:
                C = intersect(A, B)
                if C.mask not in seen:
                    seen[C.mask] = C
                    nxt.append(C)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (s.size, s.elements))


def _t2_cases(name, tier, ctx, ns):
    K = ctx.kmax
    for M in ctx.modules:
        semiprimes = [N for N in ctx.proper(M) if is_semiprime(N).holds]
        for C in _meet_closure(semiprimes):
            for k in range(1, K + 1):
                for n in ns:
                    yield _case(name, tier, f"{C} | k={k}, n={n}", _true, lambda C=C, k=k, n=n: _fail_kn(C, k, n))


@register("T-t2", VERIFIED, "intersections of semiprime submodules are (k,n)-closed for n >= 2")
def _t_t2(ctx):
    return _t2_cases("T-t2", VERIFIED, ctx, range(2, ctx.kmax + 1))


@register("T-t2[n=1]", SCRUTINY, "intersections of semiprime submodules are (k,1)-closed")
def _t_t2_one(ctx):
    return _t2_cases("T-t2[n=1]", SCRUTINY, ctx, [1])


def _radicals(ctx, M):
    out = {}
    for N in ctx.proper(M):
        R = m_radical(N)
        out.setdefault(R.mask, ("M-rad", R))
    Rad = rad_module(M)
    out.setdefault(Rad.mask, ("Rad", Rad))
    return list(out.values())


def _rad_cases(name, tier, ctx, ns):
    K = ctx.kmax
    for M in ctx.modules:
        for label, R in _radicals(ctx, M):
            for k in range(1, K + 1):
                for n in ns:
                    yield _case(name, tier, f"{label} {R} | k={k}, n={n}",
                                lambda R=R: R.is_proper(), lambda R=R, k=k, n=n: _fail_kn(R, k, n))


@register("T-rad", VERIFIED, "M-rad(N) and Rad(M) are (k,n)-closed for n >= 2")
def _t_rad(ctx):
    return _rad_cases("T-rad", VERIFIED, ctx, range(2, ctx.kmax + 1))


@register("T-rad[n=1]", SCRUTINY, "M-rad(N) and Rad(M) are (k,1)-closed")
def _t_rad_one(ctx):
    return _rad_cases("T-rad[n=1]", SCRUTINY, ctx, [1])


def _multiplication_modules(ctx):
    return [M for M in ctx.modules if is_multiplication(M)]


def _comaximal_families(subs, sizes=(2, 3)):
    for t in sizes:
        for fam in combinations(subs, t):
            if all(are_comaximal(a, b) for a, b in combinations(fam, 2)):
                yield fam


@register("T-l3", VERIFIED, "pairwise comaximal submodules of a multiplication module: products are intersections")
def _t_l3(ctx):
    for M in _multiplication_modules(ctx):
        for fam in _comaximal_families(list(ctx.proper(M))):
            def concl(fam=fam):
                if len(fam) == 2:
                    P, I = product(*fam), intersect(*fam)
                    return expect(P.mask == I.mask, product=P.describe(), intersection=I.describe())
                head = intersect_all(list(fam[:-1]))
                if not are_comaximal(head, fam[-1]):
                    return expect(False, not_comaximal=[head.describe(), fam[-1].describe()])
                P, I = product_all(list(fam)), intersect_all(list(fam))
                return expect(P.mask == I.mask, product=P.describe(), intersection=I.describe())
            yield _case("T-l3", VERIFIED, " , ".join(str(N) for N in fam), _true, concl)


def _tf2_cases(name, tier, ctx, ns):
    K = ctx.kmax
    for M in _multiplication_modules(ctx):
        semiprimes = [N for N in ctx.proper(M) if is_semiprime(N).holds]
        fams = [(N,) for N in semiprimes] + list(_comaximal_families(semiprimes))
        for fam in fams:
            P = product_all(list(fam))
            for k in range(1, K + 1):
                for n in ns:
                    yield _case(name, tier, f"{' · '.join(N.describe() for N in fam)} in {M} | k={k}, n={n}",
                                lambda P=P: P.is_proper(), lambda P=P, k=k, n=n: _fail_kn(P, k, n, product=P.describe()))


@register("T-tf2", VERIFIED, "products of pairwise comaximal semiprime submodules are (k,n)-closed for n >= 2")
def _t_tf2(ctx):
    return _tf2_cases("T-tf2", VERIFIED, ctx, range(2, ctx.kmax + 1))


@register("T-tf2[n=1]", SCRUTINY, "products of pairwise comaximal semiprime submodules are (k,1)-closed")
def _t_tf2_one(ctx):
    return _tf2_cases("T-tf2[n=1]", SCRUTINY, ctx, [1])


@register("T-tf2-power", SCRUTINY, "semiprime N gives a (k,n)-closed power N^n")
def _t_tf2_power(ctx):
    K = ctx.kmax
    for M in _multiplication_modules(ctx):
        for N in ctx.proper(M):
            for k in range(1, K + 1):
                for n in range(1, K + 1):
                    def concl(N=N, k=k, n=n):
                        P = submodule_power(N, n)
                        return _fail_kn(P, k, n, power=P.describe())
                    yield _case("T-tf2-power", SCRUTINY, f"{N} | k={k}, n={n}",
                                lambda N=N, n=n: is_semiprime(N).holds and submodule_power(N, n).is_proper(), concl)


@register("T-chain", VERIFIED, "the intersection of a chain of (k,n)-closed submodules is (k,n)-closed")
def _t_chain(ctx):
    K = ctx.kmax
    for M in ctx.modules:
        subs = ctx.proper(M)
        for A, B in combinations(subs, 2):
            if not (A <= B or B <= A):
                continue
            for k in range(1, K + 1):
                for n in range(1, K + 1):
                    yield _case("T-chain", VERIFIED, f"{A} ⊆ {B} | k={k}, n={n}",
                                lambda A=A, B=B, k=k, n=n: _kn(A, k, n) and _kn(B, k, n),
                                lambda A=A, B=B, k=k, n=n: _fail_kn(intersect(A, B), k, n))


def _semi_pairs(ctx):
    K = ctx.kmax
    for M in ctx.modules:
        for A, B in combinations(ctx.proper(M), 2):
            for n1 in range(1, K + 1):
                for n2 in range(1, K + 1):
                    yield A, B, n1, n2


@register("T-int1", SCRUTINY, "semi n1- and semi n2-absorbing intersect to semi (max+1)-absorbing")
def _t_int1(ctx):
    for A, B, n1, n2 in _semi_pairs(ctx):
        n = max(n1, n2)
        yield _case("T-int1", SCRUTINY, f"{A} ∩ {B} | n1={n1}, n2={n2}",
                    lambda A=A, B=B, n1=n1, n2=n2: _kn(A, n1, n1) and _kn(B, n2, n2),
                    lambda A=A, B=B, n=n: _fail_kn(intersect(A, B), n + 1, n + 1))


def _semi_families(ctx, t):
    K = ctx.kmax
    for M in ctx.modules:
        for fam in combinations(ctx.proper(M), t):
            for n in range(1, K + 1):
                yield fam, n


@register("T-int2", SCRUTINY, "t semi n-absorbing submodules intersect to semi (n+t)-absorbing")
def _t_int2(ctx):
    for t in (2, 3):
        for fam, n in _semi_families(ctx, t):
            yield _case("T-int2", SCRUTINY, f"{' ∩ '.join(str(N) for N in fam)} | n={n}",
                        lambda fam=fam, n=n: all(_kn(N, n, n) for N in fam),
                        lambda fam=fam, n=n, t=t: _fail_kn(intersect_all(list(fam)), n + t, n + t))


@register("T-int3", SCRUTINY, "semi n_i-absorbing submodules intersect to semi (max n_i + 2)-absorbing")
def _t_int3(ctx):
    K = ctx.kmax
    for M in ctx.modules:
        for fam in combinations(ctx.proper(M), 3):
            # least semi-absorbing index of each member, if within range
            idx = [next((n for n in range(1, K + 1) if _kn(N, n, n)), None) for N in fam]
            yield _case("T-int3", SCRUTINY, " ∩ ".join(str(N) for N in fam),
                        lambda idx=idx: None not in idx,
                        lambda fam=fam, idx=idx: _fail_kn(intersect_all(list(fam)), max(idx) + 2, max(idx) + 2))


@register("T-divint", VERIFIED,
          "over a division ring on cyclic M, (k_j,n_j)-closed N_j intersect to (k,n+1)-closed",
          vacuity_ok="prime-field cyclic modules only have the zero proper submodule")
def _t_divint(ctx):
    from itertools import product as cartesian
    K = ctx.kmax
    for C in _prime_field_cyclics(ctx):
        subs = ctx.proper(C)
        for t in (1, 2):
            for fam in combinations(subs, t):
                for params in cartesian(range(1, K + 1), repeat=2 * t):
                    ks, ns = params[::2], params[1::2]
                    for k in range(1, min(ks) + 1):
                        for n in range(min(k, max(ns)), K + 1):
                            yield _case("T-divint", VERIFIED, f"{C} family {[N.describe() for N in fam]} {params} k={k} n={n}",
                                        lambda fam=fam, ks=ks, ns=ns: all(_kn(N, a, b) for N, a, b in zip(fam, ks, ns)),
                                        lambda fam=fam, k=k, n=n: _fail_kn(intersect_all(list(fam)), k, n + 1))


# -- secondary submodules ---------------------------------------------------------

@register("T-tsec", VERIFIED, "secondary N meets a semi n-absorbing K in a secondary submodule (when nonzero)")
def _t_tsec(ctx):
    K = ctx.kmax
    for M in ctx.modules:
        nonzero = [N for N in enumerate_submodules(M) if not N.is_zero()]
        for N in nonzero:
            for Kp in ctx.proper(M):
                for n in range(1, K + 1):
                    yield _case("T-tsec", VERIFIED, f"N={N}, K={Kp.describe()} | n={n}",
                                lambda N=N, Kp=Kp, n=n: (
                                    is_secondary(N) and _kn(Kp, n, n) and not intersect(N, Kp).is_zero()),
                                lambda N=N, Kp=Kp: expect(is_secondary(intersect(N, Kp)),
                                                          intersection=intersect(N, Kp).describe()))


@register("T-csec", SCRUTINY, "K inside a secondary semi n-absorbing N is semi n-absorbing")
def _t_csec(ctx):
    K = ctx.kmax
    for M in ctx.modules:
        subs = ctx.proper(M)
        for N in subs:
            if N.is_zero():
                continue
            for Kp in subs:
                if not Kp <= N:
                    continue
                for n in range(1, K + 1):
                    yield _case("T-csec", SCRUTINY, f"K={Kp} ⊆ N={N.describe()} | n={n}",
                                lambda N=N, n=n: is_secondary(N) and _kn(N, n, n),
                                lambda Kp=Kp, n=n: _fail_kn(Kp, n, n))


# -- strongly closed submodules -------------------------------------------------

@register("T-l2", VERIFIED, "strongly (k,n)-closed: element form agrees with the form over submodules L")
def _t_l2(ctx):
    def check(N, k, n):
        def concl():
            a, b = is_strongly_kn_closed(N, k, n), strongly_kn_closed_submodule_form(N, k, n)
            return expect(a.holds == b.holds, element_form=a.to_json(), submodule_form=b.to_json())
        return _true, concl
    return _grid_cases("T-l2", VERIFIED, ctx, check)


@register("T-pid", VERIFIED, "over Z_m, strongly (k,n)-closed and (k,n)-closed coincide")
def _t_pid(ctx):
    def check(N, k, n):
        def concl():
            a, b = is_strongly_kn_closed(N, k, n), is_kn_closed(N, k, n)
            return expect(a.holds == b.holds, strongly=a.to_json(), plain=b.to_json())
        return _true, concl
    return _grid_cases("T-pid", VERIFIED, ctx, check)


@register("T-resmod", VERIFIED, "(k,n)-closed N makes every (N:_M I) (k,n)-closed when proper")
def _t_resmod(ctx):
    def check(N, k, n):
        def concl():
            for I in N.ring.ideals():
                L = residual_module(N, I)
                if L.is_proper() and not _kn(L, k, n):
                    return _fail_kn(L, k, n, ideal=str(I))
            return HOLDS
        return (lambda: _kn(N, k, n)), concl
    return _grid_cases("T-resmod", VERIFIED, ctx, check)


@register("T-resmod2", SCRUTINY, "strongly (k,n)-closed N has (N:_M I^k) = (N:_M I^{n-1}) for every I")
def _t_resmod2(ctx):
    def check(N, k, n):
        def concl():
            for I in N.ring.ideals():
                A, B = residual_module(N, I ** k), residual_module(N, I ** (n - 1))
                if A.mask != B.mask:
                    return expect(False, ideal=str(I), lhs=A.describe(), rhs=B.describe())
            return HOLDS
        return (lambda: is_strongly_kn_closed(N, k, n).holds), concl
    return _grid_cases("T-resmod2", SCRUTINY, ctx, check)


@register("T-NL", VERIFIED, "strongly (k,n)-closed iff the ideal condition holds for all L containing N")
def _t_nl(ctx):
    def check(N, k, n):
        def concl():
            R, res, hits = N.ring, N.residual, N.hit_masks
            over = True
            for I in R.ideals():
                if I ** n <= res:
                    continue
                gk, gn1 = (I ** k).gen % R.m, (I ** (n - 1)).gen % R.m
                for L in enumerate_submodules(N.module):
                    if N <= L and L.mask & ~hits[gk] == 0 and L.mask & ~hits[gn1]:
                        over = False
            a = is_strongly_kn_closed(N, k, n).holds
            return expect(a == over, strongly=a, containing_form=over)
        return _true, concl
    return _grid_cases("T-NL", VERIFIED, ctx, check)


@register("T-st1", VERIFIED, "(k,2)-closed N with L^k ⊆ N in a multiplication module gives 2(L:M)^2 ⊆ (N:M)")
def _t_st1(ctx):
    K = ctx.kmax
    for M in _multiplication_modules(ctx):
        subs = enumerate_submodules(M)
        for N in ctx.proper(M):
            for L in subs:
                for k in range(1, K + 1):
                    def hyp(N=N, L=L, k=k):
                        return _kn(N, k, 2) and submodule_power(L, k) <= N

                    def concl(N=N, L=L):
                        J = L.residual
                        two_j2 = M.ring.ideal(2 * (J * J).gen)
                        return expect(two_j2 <= N.residual, L=L.describe(), two_L_squared=str(two_j2))
                    yield _case("T-st1", VERIFIED, f"{N}, L={L.describe()} | k={k}", hyp, concl)


@register("T-st2", VERIFIED, "if 2 is a unit, (k,2)-closed implies strongly (k,2)-closed")
def _t_st2(ctx):
    def check(N, k, n):
        return (lambda: 2 % N.ring.m in units(N.ring) and _kn(N, k, 2)), (
            lambda: expect(is_strongly_kn_closed(N, k, 2).holds, k=k))
    return _grid_cases("T-st2", VERIFIED, ctx, check, ns=[2])


# -- localization -------------------------------------------------------------------

def _mult_sets(M):
    R = M.ring
    seen = {}
    for s in range(1, R.m):
        S = mult_closure(R, [s])
        if not S.contains_zero():
            seen.setdefault(S.elements, S)
    return list(seen.values())


@register("T-s1", VERIFIED, "(k,n)-closed N with (N:M) ∩ S empty localizes to a (k,n)-closed S^-1 N")
def _t_s1(ctx):
    K = ctx.kmax
    for M in ctx.modules:
        for S in _mult_sets(M):
            loc = localize_module(M, S)
            for N in ctx.proper(M):
                LN = loc.image(N)
                for k in range(1, K + 1):
                    for n in range(1, K + 1):
                        yield _case("T-s1", VERIFIED, f"{N}, S={S} | k={k}, n={n}",
                                    lambda N=N, S=S, LN=LN, k=k, n=n: (
                                        not S.meets(N.residual) and LN.is_proper() and _kn(N, k, n)),
                                    lambda LN=LN, k=k, n=n: _fail_kn(LN, k, n))


def _sloc_cases(ctx, name, conclusion):
    K = ctx.kmax
    for M in ctx.modules:
        for S in _mult_sets(M):
            if 2 % M.ring.m not in S:
                continue
            loc = localize_module(M, S)
            for N in ctx.proper(M):
                LN = loc.image(N)
                for k in range(1, K + 1):
                    yield _case(name, SCRUTINY, f"{N}, S={S} | k={k}",
                                lambda N=N, S=S, LN=LN, k=k: (
                                    not S.meets(N.residual) and LN.is_proper()
                                    and is_strongly_kn_closed(N, k, 2).holds),
                                lambda loc=loc, LN=LN, k=k: conclusion(loc, LN, k))


@register("T-sloc", SCRUTINY, "2 ∈ S: strongly (k,2)-closed N localizes to strongly (k,2)-closed S^-1 N")
def _t_sloc(ctx):
    def concl(loc, LN, k):
        v = is_strongly_kn_closed(LN, k, 2)
        return expect(v.holds, localized=str(LN), **(v.witness or {}))
    return _sloc_cases(ctx, "T-sloc", concl)


@register("T-sloc-premise", SCRUTINY, "2 ∈ S leaves 2 a non-unit of S^-1 R")
def _t_sloc_premise(ctx):
    def concl(loc, LN, k):
        two = 2 % loc.ring.m
        return expect(two not in units(loc.ring), ring=str(loc.ring), two_is_unit=True)
    return _sloc_cases(ctx, "T-sloc-premise", concl)


def _np_cases(ctx, name, tier, forward):
    K = ctx.kmax
    for M in ctx.modules:
        for P in prime_submodules(M):
            q = P.residual.gen
            if q == M.ring.m:
                # (P:M) = 0 is prime only when m is prime; then S = R \ 0 inverts nothing new
                continue
            S = complement_of_prime(M.ring, q)
            loc = localize_module(M, S)
            for N in ctx.proper(M):
                if not N <= P:
                    continue
                LN = loc.image(N)
                for k in range(1, K + 1):
                    for n in range(1, K + 1):
                        inst = f"{N}, P={P.describe()} | k={k}, n={n}"
                        if forward:
                            yield _case(name, tier, inst,
                                        lambda N=N, LN=LN, k=k, n=n: LN.is_proper() and _kn(N, k, n),
                                        lambda LN=LN, k=k, n=n: _fail_kn(LN, k, n))
                        else:
                            yield _case(name, tier, inst,
                                        lambda LN=LN, k=k, n=n: LN.is_proper() and _kn(LN, k, n),
                                        lambda N=N, k=k, n=n: _fail_kn(N, k, n, localized=str(LN)))


@register("T-NP", VERIFIED, "N inside a prime P: (k,n)-closed N localizes at P to a (k,n)-closed N_P")
def _t_np(ctx):
    return _np_cases(ctx, "T-NP", VERIFIED, True)


@register("T-NP-converse", SCRUTINY, "N inside a prime P: (k,n)-closed N_P forces (k,n)-closed N")
def _t_np_conv(ctx):
    return _np_cases(ctx, "T-NP-converse", SCRUTINY, False)


# -- homomorphisms, quotients, direct sums ------------------------------------------

def _module_pairs(ctx, limit=None):
    for M1 in ctx.modules:
        for M2 in ctx.modules:
            if M1.ring != M2.ring:
                continue
            if limit is not None and M1.size * M2.size > limit:
                continue
            yield M1, M2


@register("T-hom1", VERIFIED, "preimages of (k,n)-closed submodules are (k,n)-closed")
def _t_hom1(ctx):
    K = ctx.kmax
    for M1, M2 in _module_pairs(ctx):
        for fi, f in enumerate(all_homs(M1, M2, HOM_CAP)):
            for N2 in ctx.proper(M2):
                pre = f.preimage(N2)
                for k in range(1, K + 1):
                    for n in range(1, K + 1):
                        yield _case("T-hom1", VERIFIED, f"f#{fi}: {M1} -> {M2}, N'={N2.describe()} | k={k}, n={n}",
                                    lambda pre=pre, N2=N2, k=k, n=n: pre.is_proper() and _kn(N2, k, n),
                                    lambda pre=pre, k=k, n=n: _fail_kn(pre, k, n))


@register("T-hom2", VERIFIED, "onto f with Ker f ⊆ N maps (k,n)-closed N to a (k,n)-closed f(N)")
def _t_hom2(ctx):
    K = ctx.kmax
    for M1, M2 in _module_pairs(ctx):
        for fi, f in enumerate(all_homs(M1, M2, HOM_CAP)):
            if not f.is_surjective():
                continue
            ker = f.kernel()
            for N in ctx.proper(M1):
                if not ker <= N:
                    continue
                img = f.image(N)
                for k in range(1, K + 1):
                    for n in range(1, K + 1):
                        yield _case("T-hom2", VERIFIED, f"f#{fi}: {M1} -> {M2}, N={N.describe()} | k={k}, n={n}",
                                    lambda N=N, k=k, n=n: _kn(N, k, n),
                                    lambda img=img, k=k, n=n: _fail_kn(img, k, n))


@register("T-cor-sub", VERIFIED, "for M ⊆ M', (k,n)-closed N in M' meets M in a (k,n)-closed submodule")
def _t_cor_sub(ctx):
    K = ctx.kmax
    for Mp in ctx.modules:
        for L in ctx.proper(Mp):
            if L.is_zero():
                continue
            C, inc = submodule_as_module(L)
            for N in ctx.proper(Mp):
                NL = inc.preimage(N)
                for k in range(1, K + 1):
                    for n in range(1, K + 1):
                        yield _case("T-cor-sub", VERIFIED, f"N={N}, M={L.describe()} | k={k}, n={n}",
                                    lambda NL=NL, N=N, k=k, n=n: NL.is_proper() and _kn(N, k, n),
                                    lambda NL=NL, k=k, n=n: _fail_kn(NL, k, n))


def _quot_cases(ctx, name, tier, literal):
    K = ctx.kmax
    for M in ctx.modules:
        subs = ctx.proper(M)
        for Kq in subs:
            Q, pi = quotient(M, Kq)
            for N in subs:
                if not Kq <= N:
                    continue
                NQ = pi.image(N)
                other = Kq if literal else N
                for k in range(1, K + 1):
                    for n in range(1, K + 1):
                        def concl(NQ=NQ, other=other, k=k, n=n):
                            a, b = _kn(NQ, k, n), _kn(other, k, n)
                            return expect(a == b, quotient_closed=a, compared=str(other), compared_closed=b)
                        yield _case(name, tier, f"N={N.describe()}, K={Kq.describe()} in {M} | k={k}, n={n}",
                                    _true, concl)


@register("T-cor-quot", VERIFIED, "for K ⊆ N, N/K is (k,n)-closed in M/K iff N is (k,n)-closed")
def _t_cor_quot(ctx):
    return _quot_cases(ctx, "T-cor-quot", VERIFIED, False)


@register("T-cor-quot[K]", SCRUTINY, "for K ⊆ N, N/K is (k,n)-closed in M/K iff K is (k,n)-closed")
def _t_cor_quot_k(ctx):
    return _quot_cases(ctx, "T-cor-quot[K]", SCRUTINY, True)


def _ds_cases(ctx, name, side):
    K = ctx.kmax
    for M1, M2 in _module_pairs(ctx, DIRECT_SUM_MAX):
        ds = direct_sum(M1, M2)
        own = M1 if side == 1 else M2
        for N in ctx.proper(own):
            lifted = ds.lift_left(N) if side == 1 else ds.lift_right(N)
            for k1 in range(1, K + 1):
                for n1 in range(1, K + 1):
                    def concl(N=N, lifted=lifted, k1=k1, n1=n1):
                        a = _kn(N, k1, n1)
                        b = all(_kn(lifted, k, n) for k in range(1, k1 + 1) for n in range(n1, K + 1))
                        return expect(a == b, summand_closed=a, lifted_closed=b, lifted=str(lifted))
                    yield _case(name, VERIFIED, f"{N} in {ds.module} | k={k1}, n={n1}", _true, concl)


@register("T-ds1", VERIFIED, "N1 is (k1,n1)-closed iff N1⊕M2 is (k,n)-closed for all k <= k1, n >= n1")
def _t_ds1(ctx):
    return _ds_cases(ctx, "T-ds1", 1)


@register("T-ds2", VERIFIED, "N2 is (k2,n2)-closed iff M1⊕N2 is (k,n)-closed for all k <= k2, n >= n2")
def _t_ds2(ctx):
    return _ds_cases(ctx, "T-ds2", 2)


@register("T-ds3", VERIFIED, "N1⊕N2 is (k,n)-closed for k <= min(k1,k2), n >= max(n1,n2)+1")
def _t_ds3(ctx):
    K = ctx.kmax
    for M1, M2 in _module_pairs(ctx, DIRECT_SUM_MAX):
        ds = direct_sum(M1, M2)
        for N1 in ctx.proper(M1):
            for N2 in ctx.proper(M2):
                lifted = ds.lift(N1, N2)
                idx1 = _closed_cells(N1, K)
                idx2 = _closed_cells(N2, K)
                for k in range(1, K + 1):
                    for n in range(1, K + 1):
                        # hypothesis: some (k1,n1), (k2,n2) closed with k <= min k_i and n >= max n_i + 1
                        def hyp(k=k, n=n, idx1=idx1, idx2=idx2):
                            return any(k <= a and n >= b + 1 for a, b in idx1) and any(
                                k <= a and n >= b + 1 for a, b in idx2)
                        yield _case("T-ds3", VERIFIED, f"{N1.describe()}⊕{N2.describe()} in {ds.module} | k={k}, n={n}",
                                    hyp, lambda lifted=lifted, k=k, n=n: _fail_kn(lifted, k, n))


def _closed_cells(N, K):
    return [(k, n) for k in range(1, K + 1) for n in range(1, K + 1) if _kn(N, k, n)]


# -- the symbolic cZ family ------------------------------------------------------------

def _tkn_cases(ctx, name, tier, where):
    if ctx.symbolic is None:
        return
    K, T = ctx.kmax, ctx.symbolic["tmax"]
    for p in TKN_PRIMES:
        for t in range(1, T + 1):
            for k in range(1, K + 1):
                for n in range(1, K + 1):
                    if not where(k, n):
                        continue
                    yield _case(name, tier, f"{p}^{t}Z | k={k}, n={n}",
                                lambda p=p, t=t, k=k, n=n: zint_is_kn_closed(p**t, k, n).holds,
                                lambda t=t, k=k, n=n: expect(tkn_condition(t, k, n), t=t, k=k, n=n))


@register("T-tkn", VERIFIED, "(k,n)-closed p^tZ with n <= k satisfies the decomposition conditions on t")
def _t_tkn(ctx):
    return _tkn_cases(ctx, "T-tkn", VERIFIED, lambda k, n: n <= k)


@register("T-tkn[k<n]", SCRUTINY, "the decomposition conditions on t for k < n")
def _t_tkn_low(ctx):
    return _tkn_cases(ctx, "T-tkn[k<n]", SCRUTINY, lambda k, n: k < n)


@register("T-cor-semi-n", SCRUTINY, "semi n-absorbing p^tZ has t = na + r with 1 <= r < n")
def _t_cor_semi_n(ctx):
    if ctx.symbolic is None:
        return
    K, T = ctx.kmax, ctx.symbolic["tmax"]
    for p in TKN_PRIMES:
        for t in range(1, T + 1):
            for n in range(1, K + 1):
                yield _case("T-cor-semi-n", SCRUTINY, f"{p}^{t}Z | n={n}",
                            lambda p=p, t=t, n=n: zint_is_semi_n_absorbing(p**t, n).holds,
                            lambda t=t, n=n: expect(semi_n_decomposition(t, n) and semi_n_union(t, n),
                                                    t=t, n=n, decomposition=semi_n_decomposition(t, n),
                                                    union=semi_n_union(t, n)))


@register("T-cor-semi-2", VERIFIED, "semi 2-absorbing p^tZ has t in {1, 2}")
def _t_cor_semi_2(ctx):
    if ctx.symbolic is None:
        return
    for p in TKN_PRIMES:
        for t in range(1, ctx.symbolic["tmax"] + 1):
            yield _case("T-cor-semi-2", VERIFIED, f"{p}^{t}Z",
                        lambda p=p, t=t: zint_is_semi_n_absorbing(p**t, 2).holds,
                        lambda t=t: expect(semi_2_condition(t), t=t))


@register("T-pid-fact", VERIFIED, "(k,n)-closed cZ with n <= k meets the per-exponent factorization conditions")
def _t_pid_fact(ctx):
    if ctx.symbolic is None:
        return
    K = ctx.kmax
    for c in range(2, ctx.symbolic["cmax"] + 1):
        for k in range(1, K + 1):
            for n in range(1, k + 1):
                yield _case("T-pid-fact", VERIFIED, f"{c}Z | k={k}, n={n}",
                            lambda c=c, k=k, n=n: zint_is_kn_closed(c, k, n).holds,
                            lambda c=c, k=k, n=n: expect(factorization_condition(c, k, n), c=c, k=k, n=n))


@register("T-Pt", VERIFIED, "(k,n)-closed p^tZ with n <= k meets one of the three cases for P^t")
def _t_pt(ctx):
    if ctx.symbolic is None:
        return
    K, T = ctx.kmax, ctx.symbolic["tmax"]
    for p in TKN_PRIMES:
        for t in range(1, T + 1):
            for k in range(1, K + 1):
                for n in range(1, k + 1):
                    yield _case("T-Pt", VERIFIED, f"{p}^{t}Z | k={k}, n={n}",
                                lambda p=p, t=t, k=k, n=n: zint_is_kn_closed(p**t, k, n).holds,
                                lambda t=t, k=k, n=n: expect(prime_power_condition(t, k, n), t=t, k=k, n=n))


@register("T-t0-Z", VERIFIED, "(k,n)-closed cZ has a (k,n)-closed ideal cZ")
def _t_t0_z(ctx):
    if ctx.symbolic is None:
        return
    K = ctx.kmax
    for c in range(2, min(ctx.symbolic["cmax"], 200) + 1):
        for k in range(1, K + 1):
            for n in range(1, K + 1):
                def concl(c=c, k=k, n=n):
                    v = zint_ideal_is_kn_closed(c, k, n)
                    return expect(v.holds, c=c, **(v.witness or {}))
                yield _case("T-t0-Z", VERIFIED, f"{c}Z | k={k}, n={n}",
                            lambda c=c, k=k, n=n: zint_is_kn_closed(c, k, n).holds, concl)


# -- worked examples ------------------------------------------------------------------

def _claim(name, tier, instance, actual, claimed, **context):
    """A case asserting that a computed verdict matches what the example states."""
    def concl():
        v = actual()
        return expect(v.holds == claimed, claimed=claimed, computed=v.holds, **context, **(v.witness or {}))
    return _case(name, tier, instance, _true, concl)


def _witness_claim(name, instance, actual, witness):
    def concl():
        v = actual()
        return expect(not v.holds and v.witness == witness, expected=witness, computed=v.to_json())
    return _case(name, VERIFIED, instance, _true, concl)


@register("E-6Z", VERIFIED, "6Z is a (2,1)-closed ideal but not a (2,1)-closed submodule, witness r=2, m=9")
def _e_6z(ctx):
    if not ctx.examples:
        return
    yield _witness_claim("E-6Z", "6Z submodule (2,1)", lambda: zint_is_kn_closed(6, 2, 1), {"r": 2, "m": 9})
    yield _claim("E-6Z", VERIFIED, "6Z ideal (2,1)", lambda: zint_ideal_is_kn_closed(6, 2, 1), True)


@register("E-e1", SCRUTINY, "8Z is a (2,1)-closed ideal")
def _e_e1(ctx):
    if not ctx.examples:
        return
    yield _claim("E-e1", SCRUTINY, "8Z ideal (2,1)", lambda: zint_ideal_is_kn_closed(8, 2, 1), True)


@register("E-e1-module", VERIFIED, "8Z is not a (2,2)-closed submodule, witness r=2, m=2")
def _e_e1_module(ctx):
    if not ctx.examples:
        return
    yield _witness_claim("E-e1-module", "8Z submodule (2,2)", lambda: zint_is_kn_closed(8, 2, 2), {"r": 2, "m": 2})


@register("E-e", SCRUTINY, "12Z is semi 2-absorbing while 4Z is not")
def _e_e(ctx):
    if not ctx.examples:
        return
    yield _claim("E-e", SCRUTINY, "12Z semi-2", lambda: zint_is_semi_n_absorbing(12, 2), True, c=12)
    yield _claim("E-e", SCRUTINY, "4Z semi-2", lambda: zint_is_semi_n_absorbing(4, 2), False, c=4)


@register("E-30", VERIFIED, "30Z is semi 2-absorbing and (3,2)-closed but not 2-absorbing, witness 2·3·5")
def _e_30(ctx):
    if not ctx.examples:
        return
    yield _claim("E-30", VERIFIED, "30Z semi-2", lambda: zint_is_semi_n_absorbing(30, 2), True)
    yield _claim("E-30", VERIFIED, "30Z (3,2)", lambda: zint_is_kn_closed(30, 3, 2), True)
    yield _witness_claim("E-30", "30Z 2-absorbing", lambda: zint_is_n_absorbing(30, 2), {"a": [2, 3], "m": 5})
    Z30 = reduce_integer_scalars([30])
    yield _witness_claim("E-30", "0 in Z_30, 2-absorbing",
                         lambda: is_n_absorbing(zero_submodule(Z30), 2), {"a": [2, 3], "x": "5"})


@register("E-pn", VERIFIED, "0 in Z_{p^n}: (n,n)-closed, not (n,n-1)-closed, not quasi-prime, not semi (n-1)")
def _e_pn(ctx):
    if not ctx.examples:
        return
    for p, n in ((2, 2), (2, 3), (3, 2)):
        N = zero_submodule(reduce_integer_scalars([p**n]))
        tag = f"0 in Z_{p**n}"
        yield _claim("E-pn", VERIFIED, f"{tag} ({n},{n})", lambda N=N, n=n: is_kn_closed(N, n, n), True)
        yield _claim("E-pn", VERIFIED, f"{tag} ({n},{n - 1})", lambda N=N, n=n: is_kn_closed(N, n, n - 1), False)
        yield _claim("E-pn", VERIFIED, f"{tag} quasi-prime", lambda N=N: is_quasi_prime(N), False)
        yield _claim("E-pn", VERIFIED, f"{tag} semi-{n - 1}", lambda N=N, n=n: is_semi_n_absorbing(N, n - 1), False)


@register("E-int", VERIFIED, "p^nZ and q^nZ are semi n-absorbing, p^n q^nZ is not (witness r=p, m=q^n)")
def _e_int(ctx):
    if not ctx.examples:
        return
    for p, q, n in ((2, 3, 2), (2, 3, 3)):
        yield _claim("E-int", VERIFIED, f"{p}^{n}Z semi-{n}", lambda p=p, n=n: zint_is_semi_n_absorbing(p**n, n), True)
        yield _claim("E-int", VERIFIED, f"{q}^{n}Z semi-{n}", lambda q=q, n=n: zint_is_semi_n_absorbing(q**n, n), True)
        yield _witness_claim("E-int", f"{p}^{n}{q}^{n}Z semi-{n}",
                             lambda p=p, q=q, n=n: zint_is_semi_n_absorbing(p**n * q**n, n), {"r": p, "m": q**n})
