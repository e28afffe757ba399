"""Property cases, their evaluation, and the property registry."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from ..modules import FiniteModule, ModuleError, proper_submodules
from ..predicates import HOLDS, PredicateVerdict

VERIFIED = "verified"
SCRUTINY = "scrutiny"
TIERS = (VERIFIED, SCRUTINY)

HOLDS_STATUS = "holds"
FAILS_STATUS = "fails"
VACUOUS_STATUS = "vacuous"


class MalformedCaseError(ValueError):
    pass


@dataclass(frozen=True)
class PropertyCase:
    name: str
    tier: str
    instance: str
    hypothesis: Callable[[], bool]
    conclusion: Callable[[], PredicateVerdict]


@dataclass(frozen=True)
class CaseResult:
    name: str
    instance: str
    status: str
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"instance": self.instance, "status": self.status, "witness": self.witness}


def run_property(case: PropertyCase) -> CaseResult:
    """Hypothesis first; the conclusion is only evaluated on non-vacuous instances."""
    if case.tier not in TIERS:
        raise MalformedCaseError(f"unknown tier {case.tier!r} for {case.name}")
    try:
        if not case.hypothesis():
            return CaseResult(case.name, case.instance, VACUOUS_STATUS)
        verdict = case.conclusion()
    except ModuleError as exc:
        raise MalformedCaseError(f"{case.name} on {case.instance}: {exc}") from exc
    if verdict.holds:
        return CaseResult(case.name, case.instance, HOLDS_STATUS)
    return CaseResult(case.name, case.instance, FAILS_STATUS, verdict.witness)


def expect(ok: bool, **witness) -> PredicateVerdict:
    return HOLDS if ok else PredicateVerdict(False, witness)


def first_failure(verdicts) -> PredicateVerdict:
    """The first failing verdict of an iterable, or HOLDS."""
    for v in verdicts:
        if not v.holds:
            return v
    return HOLDS


@dataclass
class SuiteContext:
    modules: list[FiniteModule]
    kmax: int = 4
    nabs_max: int = 3
    symbolic: dict | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def examples(self) -> bool:
        return self.symbolic is not None

    def grid(self):
        K = self.kmax
        return [(k, n) for k in range(1, K + 1) for n in range(1, K + 1)]

    def proper(self, M: FiniteModule):
        return proper_submodules(M)

    def memo(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]


CaseGenerator = Callable[[SuiteContext], Iterator[PropertyCase]]


@dataclass(frozen=True)
class Property:
    name: str
    tier: str
    statement: str
    generate: CaseGenerator
    vacuity_ok: str | None = None  # reason a fully vacuous run is acceptable

    def cases(self, ctx: SuiteContext) -> Iterator[PropertyCase]:
        return self.generate(ctx)


REGISTRY: dict[str, Property] = {}


def register(name: str, tier: str, statement: str, vacuity_ok: str | None = None):
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}")

    def deco(gen: CaseGenerator) -> CaseGenerator:
        if name in REGISTRY:
            raise ValueError(f"property {name} registered twice")
        REGISTRY[name] = Property(name, tier, statement, gen, vacuity_ok)
        return gen

    return deco


def get_property(name: str) -> Property:
    from . import properties  # noqa: F401  (populates the registry)

    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown property {name!r}") from None


def all_properties() -> list[Property]:
    from . import properties  # noqa: F401

    return list(REGISTRY.values())
