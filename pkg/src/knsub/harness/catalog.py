"""Catalog files: which modules (and which symbolic ranges) a suite run covers.

Accepted shapes::

    [ {"ring": {"zmod": 12}, "factors": [12], "origin": "..."}, ... ]
    {"modules": [ ...same entries... ], "symbolic": {"cmax": 1000, "tmax": 12}}

The bare list covers modules only.  The object form may add a ``symbolic``
block, which switches on the cZ-in-Z properties and the worked examples.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..modules import FiniteModule, ModuleError, build_module
from ..ring import ZModRing


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    m: int
    factors: tuple[int, ...]
    origin: str

    def build(self) -> FiniteModule:
        try:
            return build_module(ZModRing(self.m), self.factors, origin=self.origin)
        except (ModuleError, ValueError) as exc:
            raise CatalogError(f"catalog module {self.origin!r}: {exc}") from exc

    def to_json(self) -> dict:
        return {"ring": {"zmod": self.m}, "factors": list(self.factors), "origin": self.origin}


@dataclass(frozen=True)
class Catalog:
    entries: tuple[CatalogEntry, ...] = ()
    symbolic: dict | None = field(default=None)

    def modules(self) -> list[FiniteModule]:
        return [e.build() for e in self.entries]

    def to_json(self) -> dict:
        doc = {"modules": [e.to_json() for e in self.entries]}
        if self.symbolic is not None:
            doc["symbolic"] = dict(self.symbolic)
        return doc

    def fingerprint(self, **bounds) -> str:
        blob = json.dumps({"catalog": self.to_json(), "bounds": bounds}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __len__(self):
        return len(self.entries)


def _entry(raw) -> CatalogEntry:
    try:
        m = int(raw["ring"]["zmod"])
        factors = tuple(int(d) for d in raw["factors"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"malformed catalog entry {raw!r}") from exc
    origin = raw.get("origin") or f"{'×'.join(f'Z_{d}' for d in factors) or '0'} over Z_{m}"
    return CatalogEntry(m, factors, origin)


def parse_catalog(doc) -> Catalog:
    if isinstance(doc, list):
        return Catalog(tuple(_entry(r) for r in doc))
    if not isinstance(doc, dict) or "modules" not in doc:
        raise CatalogError("catalog must be a list of modules or an object with a 'modules' list")
    symbolic = doc.get("symbolic")
    if symbolic is not None:
        try:
            symbolic = {"cmax": int(symbolic["cmax"]), "tmax": int(symbolic["tmax"])}
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogError(f"malformed symbolic block {doc['symbolic']!r}") from exc
    return Catalog(tuple(_entry(r) for r in doc["modules"]), symbolic)


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Read a catalog file; ``None`` gives the catalog shipped with the package."""
    if path is None:
        text = resources.files("knsub.data").joinpath("default_catalog.json").read_text("utf-8")
    else:
        try:
            text = Path(path).read_text("utf-8")
        except OSError as exc:
            raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog {path or 'default'} is not valid JSON: {exc}") from exc
    return parse_catalog(doc)
