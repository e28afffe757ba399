"""Executable theorem catalog over finite modules and the cZ family."""
from .catalog import Catalog, CatalogEntry, CatalogError, load_catalog, parse_catalog
from .core import (
    SCRUTINY,
    TIERS,
    VERIFIED,
    CaseResult,
    MalformedCaseError,
    Property,
    PropertyCase,
    SuiteContext,
    all_properties,
    get_property,
    run_property,
)
from .hunt import HuntResult, hunt, hunt_names
from .suite import PropertyTally, SuiteReport, run_suite

__all__ = [
    "Catalog",
    "CatalogEntry",
    "CatalogError",
    "CaseResult",
    "HuntResult",
    "MalformedCaseError",
    "Property",
    "PropertyCase",
    "PropertyTally",
    "SCRUTINY",
    "SuiteContext",
    "SuiteReport",
    "TIERS",
    "VERIFIED",
    "all_properties",
    "get_property",
    "hunt",
    "hunt_names",
    "load_catalog",
    "parse_catalog",
    "run_property",
    "run_suite",
]
