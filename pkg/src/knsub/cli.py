"""knsub command line: spectra, classification tables, the theorem suite, hunts, cZ queries.

Exit codes: 0 clean, 1 verified-tier counterexample, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .modules import ModuleError, build_module, is_prime_submodule, parse_generators, proper_submodules, span
from .predicates import is_kn_closed, is_n_absorbing, is_quasi_prime, is_semiprime, spectrum
from .ring import ZModRing
from .zint import CyclicZSubmodule, tkn_condition, zint_ideal_is_kn_closed, zint_is_kn_closed

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2
TICK, CROSS = "✓", "✗"


class UsageError(Exception):
    pass


# -- argument parsing helpers ---------------------------------------------------

def _parse_ring(text: str) -> ZModRing:
    kind, _, value = text.partition(":")
    if kind != "zmod" or not value.strip().isdigit() or int(value) < 1:
        raise UsageError(f"--ring expects zmod:m with m >= 1, got {text!r}")
    return ZModRing(int(value))


def _parse_factors(text: str | None, R: ZModRing) -> list[int]:
    if text is None:
        return [R.m]
    try:
        return [int(d) for d in text.split(",") if d.strip()]
    except ValueError:
        raise UsageError(f"--factors expects comma-separated integers, got {text!r}") from None


def _module(args):
    R = _parse_ring(args.ring)
    return build_module(R, _parse_factors(args.factors, R))


# -- rendering ------------------------------------------------------------------

def _mark(ok: bool, witness: dict | None = None) -> str:
    if ok:
        return TICK
    if not witness:
        return CROSS
    return CROSS + " " + " ".join(f"{k}={_flat(v)}" for k, v in witness.items())


def _flat(v) -> str:
    if isinstance(v, list):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(c) for c in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(out)


def _csv(headers: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(headers)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _document(command, inputs, result, witnesses, started) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "witnesses": witnesses,
        "timing": {"seconds": round(time.perf_counter() - started, 6)},
    }


def _emit(fmt: str, doc: dict, headers: list[str], rows: list[list], title: str | None = None):
    if fmt == "json":
        print(json.dumps(doc, ensure_ascii=False, indent=2))
    elif fmt == "csv":
        print(_csv(headers, rows))
    else:
        if title:
            print(title)
        print(_table(headers, rows))


# -- commands -----------------------------------------------------------------

def cmd_spectrum(args) -> int:
    started = time.perf_counter()
    M = _module(args)
    N = span(M, parse_generators(args.gens))
    if not N.is_proper():
        raise UsageError("submodule not proper: the generators span the whole module")
    K = args.kmax
    spect = spectrum(N, K)
    grid, witnesses = [], {}
    for k in range(1, K + 1):
        row = []
        for n in range(1, K + 1):
            v = is_kn_closed(N, k, n)
            row.append(v.holds)
            if not v.holds:
                witnesses[f"{k},{n}"] = v.witness
        grid.append(row)
    prime, prime_w = is_prime_submodule(N)
    summary = {
        "prime": prime,
        "semiprime": is_semiprime(N).holds,
        "quasi-prime": is_quasi_prime(N).holds,
        **{f"semi-{n}-absorbing": spect.holds(n, n) for n in range(1, K + 1)},
    }
    doc = _document(
        "spectrum",
        {"ring": args.ring, "factors": _parse_factors(args.factors, N.ring), "gens": args.gens, "kmax": K},
        {"submodule": N.describe(), "module": str(M), "residual": str(N.residual), "grid": grid,
         "fingerprint": spect.fingerprint(), "predicates": summary},
        witnesses,
        started,
    )
    headers = ["k\\n"] + [str(n) for n in range(1, K + 1)]
    rows = [[k] + [_mark(grid[k - 1][n - 1], witnesses.get(f"{k},{n}")) for n in range(1, K + 1)]
            for k in range(1, K + 1)]
    title = f"N = {N}, (N:M) = {N.residual}\n" + "  ".join(
        f"{name} {_mark(ok)}" for name, ok in summary.items()) + "\n"
    _emit(args.format, doc, headers, rows, title)
    return EXIT_OK


def cmd_classify(args) -> int:
    started = time.perf_counter()
    M = _module(args)
    K, nmax = args.kmax, args.nabs_max
    headers = ["generators", "|N|", "(N:M)", "prime", "semiprime", "quasi-prime"]
    headers += [f"{n}-absorbing" for n in range(1, nmax + 1)] + ["fingerprint"]
    rows, records = [], []
    for N in proper_submodules(M):
        spect = spectrum(N, K)
        flags = [is_prime_submodule(N)[0], is_semiprime(N).holds, is_quasi_prime(N).holds]
        flags += [is_n_absorbing(N, n, nmax).holds for n in range(1, nmax + 1)]
        rows.append([N.describe(), N.size, str(N.residual), *[_mark(f) for f in flags], spect.fingerprint()])
        records.append(dict(zip(headers, [N.describe(), N.size, str(N.residual), *flags, spect.fingerprint()])))
    doc = _document(
        "classify",
        {"ring": args.ring, "factors": _parse_factors(args.factors, M.ring), "kmax": K, "nabs_max": nmax},
        {"module": str(M), "rows": records},
        {},
        started,
    )
    _emit(args.format, doc, headers, rows, f"{M}: {len(rows)} proper submodules\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .harness import load_catalog, run_suite

    started = time.perf_counter()
    catalog = load_catalog(args.catalog)
    report = run_suite(catalog, kmax=args.kmax, nabs_max=args.nabs_max, tier=args.tier, jobs=args.jobs)
    witnesses = {t.name: t.witnesses for t in report.tallies if t.fails}
    doc = _document(
        "verify",
        {"catalog": args.catalog or "default", "kmax": args.kmax, "nabs_max": args.nabs_max,
         "tier": args.tier, "jobs": args.jobs},
        report.to_json(),
        witnesses,
        started,
    )
    headers = ["property", "tier", "holds", "fails", "vacuous", "first witness"]
    rows = []
    for t in report.tallies:
        first = t.witnesses[0] if t.witnesses else None
        note = "" if first is None else f"{first['instance']}: {_mark(False, first['witness'])}"
        rows.append([t.name, t.tier, t.holds, t.fails, t.vacuous, note])
    audit = report.vacuity_audit()
    title = f"catalog {report.fingerprint}, status {report.status}, {report.wall_time:.1f}s\n"
    _emit(args.format, doc, headers, rows, title)
    if args.format == "table":
        if audit["missing"]:
            print("\nno non-vacuous instance: " + ", ".join(audit["missing"]))
        for name, why in audit["whitelisted"].items():
            print(f"\nvacuous by design: {name} ({why})")
    return EXIT_COUNTEREXAMPLE if report.status == "FAIL" else EXIT_OK


def cmd_hunt(args) -> int:
    from .harness import hunt

    started = time.perf_counter()
    try:
        res = hunt(args.property, bound=args.bound, space=args.space, n=args.n, k=args.k)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]) if exc.args else "unknown property") from None
    doc = _document(
        "hunt",
        {"property": args.property, "bound": args.bound, "space": res.space, "n": args.n, "k": args.k},
        {"found": res.found, "searched": res.searched},
        res.witness or {},
        started,
    )
    if args.format == "table":
        print(f"{args.property} [{res.space}], {res.searched} candidates searched")
        print(_mark(False, res.witness) if res.found else "none within bound")
    else:
        _emit(args.format, doc, ["property", "found", "witness"],
              [[args.property, res.found, json.dumps(res.witness)]])
    return EXIT_OK


def cmd_zint(args) -> int:
    started = time.perf_counter()
    if args.c < 2:
        raise UsageError(f"--c must be at least 2, got {args.c}")
    k = args.k if args.k is not None else args.n
    if k is None or args.n is None:
        raise UsageError("--n is required (and --k, except for semi-n)")
    if args.predicate == "kn-closed":
        v = zint_is_kn_closed(args.c, k, args.n)
        holds, witness = v.holds, v.witness
    elif args.predicate == "semi-n":
        v = zint_is_kn_closed(args.c, args.n, args.n)
        holds, witness = v.holds, v.witness
    elif args.predicate == "ideal-kn":
        v = zint_ideal_is_kn_closed(args.c, k, args.n)
        holds, witness = v.holds, v.witness
    else:
        N = CyclicZSubmodule.of(args.c)
        if not N.c.is_prime_power():
            raise UsageError("tkn-condition needs c a prime power")
        holds, witness = tkn_condition(N.caps[0], k, args.n), None
    doc = _document(
        "zint",
        {"c": args.c, "k": k, "n": args.n, "predicate": args.predicate},
        {"holds": holds},
        witness or {},
        started,
    )
    _emit(args.format, doc, ["c", "k", "n", "predicate", "holds"],
          [[args.c, k, args.n, args.predicate, _mark(holds, witness)]])
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knsub", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, kmax=4):
        sp.add_argument("--format", choices=["table", "json", "csv"], default="table")
        sp.add_argument("--kmax", type=_positive, default=kmax)

    def module_args(sp):
        sp.add_argument("--ring", required=True, help="zmod:m")
        sp.add_argument("--factors", help="cyclic orders d1,d2,...; default: m")

    sp = sub.add_parser("spectrum", help="closure grid of one submodule")
    module_args(sp)
    sp.add_argument("--gens", default="", help='generators "a,b;c,d"; empty string = zero submodule')
    common(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("classify", help="one row per proper submodule")
    module_args(sp)
    sp.add_argument("--nabs-max", type=_positive, default=3)
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="run the theorem suite over a catalog")
    sp.add_argument("--catalog", help="catalog JSON; default: the shipped catalog")
    sp.add_argument("--tier", choices=["verified", "scrutiny", "all"], default="all")
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--nabs-max", type=_positive, default=3)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("hunt", help="search for the first counterexample")
    sp.add_argument("--property", required=True)
    sp.add_argument("--bound", type=_positive)
    sp.add_argument("--space")
    sp.add_argument("--n", type=_positive)
    sp.add_argument("--k", type=_positive)
    sp.add_argument("--format", choices=["table", "json", "csv"], default="table")
    sp.set_defaults(func=cmd_hunt)

    sp = sub.add_parser("zint", help="query the cZ engine")
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--k", type=_positive)
    sp.add_argument("--n", type=_positive)
    sp.add_argument("--predicate", choices=["kn-closed", "semi-n", "ideal-kn", "tkn-condition"],
                    default="kn-closed")
    sp.add_argument("--format", choices=["table", "json", "csv"], default="table")
    sp.set_defaults(func=cmd_zint)
    return p


def main(argv=None) -> int:
    from .harness import CatalogError

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ModuleError, CatalogError, ValueError) as exc:
        print(f"knsub {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
