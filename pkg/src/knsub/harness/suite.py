"""Running the catalog: per-property tallies, tier gating, the vacuity audit."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .catalog import Catalog
from .core import (
    HOLDS_STATUS,
    SCRUTINY,
    TIERS,
    VACUOUS_STATUS,
    VERIFIED,
    SuiteContext,
    all_properties,
    get_property,
    run_property,
)

MAX_WITNESSES = 5
PASS, FAIL = "PASS", "FAIL"


@dataclass
class PropertyTally:
    name: str
    tier: str
    statement: str
    holds: int = 0
    fails: int = 0
    vacuous: int = 0
    witnesses: list = field(default_factory=list)
    vacuity_ok: str | None = None

    @property
    def total(self) -> int:
        return self.holds + self.fails + self.vacuous

    @property
    def non_vacuous(self) -> int:
        return self.holds + self.fails

    def record(self, result):
        if result.status == HOLDS_STATUS:
            self.holds += 1
        elif result.status == VACUOUS_STATUS:
            self.vacuous += 1
        else:
            self.fails += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append({"instance": result.instance, "witness": result.witness})

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "tier": self.tier,
            "statement": self.statement,
            "holds": self.holds,
            "fails": self.fails,
            "vacuous": self.vacuous,
            "witnesses": self.witnesses,
        }


@dataclass
class SuiteReport:
    tallies: list[PropertyTally]
    fingerprint: str
    wall_time: float
    bounds: dict

    @property
    def verified_failures(self) -> list[PropertyTally]:
        return [t for t in self.tallies if t.tier == VERIFIED and t.fails]

    @property
    def scrutiny_findings(self) -> list[PropertyTally]:
        return [t for t in self.tallies if t.tier == SCRUTINY and t.fails]

    @property
    def status(self) -> str:
        return FAIL if self.verified_failures else PASS

    def vacuity_audit(self) -> dict:
        """Properties with no non-vacuous instance, split by whether that is expected."""
        missing, whitelisted = [], {}
        for t in self.tallies:
            if t.non_vacuous:
                continue
            if t.vacuity_ok:
                whitelisted[t.name] = t.vacuity_ok
            else:
                missing.append(t.name)
        return {"missing": missing, "whitelisted": whitelisted}

    def tally(self, name: str) -> PropertyTally:
        for t in self.tallies:
            if t.name == name:
                return t
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "fingerprint": self.fingerprint,
            "bounds": self.bounds,
            "properties": [t.to_json() for t in self.tallies],
            "vacuity_audit": self.vacuity_audit(),
        }


def _select(tier: str, names) -> list:
    if tier not in (*TIERS, "all"):
        raise ValueError(f"unknown tier {tier!r}")
    props = [get_property(n) for n in names] if names else all_properties()
    return [p for p in props if tier == "all" or p.tier == tier]


def _run_one(name: str, catalog: Catalog, kmax: int, nabs_max: int) -> PropertyTally:
    prop = get_property(name)
    ctx = SuiteContext(catalog.modules(), kmax, nabs_max, catalog.symbolic)
    tally = PropertyTally(prop.name, prop.tier, prop.statement, vacuity_ok=prop.vacuity_ok)
    for case in prop.cases(ctx):
        tally.record(run_property(case))
    return tally


def run_suite(
    catalog: Catalog,
    kmax: int = 4,
    nabs_max: int = 3,
    tier: str = "all",
    jobs: int = 1,
    properties=None,
) -> SuiteReport:
    """Run every selected property over the catalog.

    With ``jobs > 1`` properties are farmed out to worker processes; the
    report is assembled in registry order either way, so it is identical.
    """
    start = time.perf_counter()
    props = _select(tier, properties)
    names = [p.name for p in props]
    if not catalog.entries and catalog.symbolic is None:
        names = []
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_one, n, catalog, kmax, nabs_max) for n in names]
            tallies = [f.result() for f in futures]
    else:
        tallies = [_run_one(n, catalog, kmax, nabs_max) for n in names]
    bounds = {"kmax": kmax, "nabs_max": nabs_max, "tier": tier}
    return SuiteReport(
        tallies,
        catalog.fingerprint(kmax=kmax, nabs_max=nabs_max),
        time.perf_counter() - start,
        bounds,
    )
