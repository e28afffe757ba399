"""Finite-module toolkit for (k,n)-closed submodules over Z_m and the cZ family in Z."""
from .constructions import (
    DirectSum,
    LocalizedModule,
    NotMultiplicationModuleError,
    QuotientModule,
    all_homs,
    complement_of_prime,
    direct_sum,
    is_multiplication,
    is_secondary,
    localize,
    localize_module,
    m_radical,
    product,
    quotient,
    rad_module,
    submodule_as_module,
)
from .modules import (
    CapExceededError,
    CoordinateModule,
    FiniteModule,
    ImproperSubmoduleError,
    ModuleError,
    ModuleHom,
    Submodule,
    TableModule,
    build_module,
    enumerate_submodules,
    intersect,
    is_prime_submodule,
    make_hom,
    proper_submodules,
    reduce_integer_scalars,
    residual_element,
    residual_module,
    span,
    sum_,
    whole,
    zero_submodule,
)
from .predicates import (
    ClosureSpectrum,
    PredicateVerdict,
    colon_test,
    is_kn_closed,
    is_n_absorbing,
    is_quasi_prime,
    is_semi_n_absorbing,
    is_semiprime,
    is_strongly_kn_closed,
    is_strongly_semi_n_absorbing,
    spectrum,
)
from .ring import (
    FactoredNat,
    MultiplicativeSet,
    RingIdeal,
    ZModRing,
    factorize,
    is_kn_closed_ideal,
    is_semi_n_absorbing_ideal,
    mult_closure,
)
from .zint import (
    CyclicZSubmodule,
    factorization_condition,
    tkn_condition,
    zint_ideal_is_kn_closed,
    zint_is_kn_closed,
    zint_is_n_absorbing,
    zint_is_semi_n_absorbing,
    zint_spectrum,
)

__all__ = [
    "DirectSum",
    "LocalizedModule",
    "NotMultiplicationModuleError",
    "QuotientModule",
    "all_homs",
    "complement_of_prime",
    "direct_sum",
    "is_multiplication",
    "is_secondary",
    "localize",
    "localize_module",
    "m_radical",
    "product",
    "quotient",
    "rad_module",
    "submodule_as_module",
    "CapExceededError",
    "CoordinateModule",
    "FiniteModule",
    "ImproperSubmoduleError",
    "ModuleError",
    "ModuleHom",
    "Submodule",
    "TableModule",
    "build_module",
    "enumerate_submodules",
    "intersect",
    "is_prime_submodule",
    "make_hom",
    "proper_submodules",
    "reduce_integer_scalars",
    "residual_element",
    "residual_module",
    "span",
    "sum_",
    "whole",
    "zero_submodule",
    "ClosureSpectrum",
    "PredicateVerdict",
    "colon_test",
    "is_kn_closed",
    "is_n_absorbing",
    "is_quasi_prime",
    "is_semi_n_absorbing",
    "is_semiprime",
    "is_strongly_kn_closed",
    "is_strongly_semi_n_absorbing",
    "spectrum",
    "FactoredNat",
    "MultiplicativeSet",
    "RingIdeal",
    "ZModRing",
    "factorize",
    "is_kn_closed_ideal",
    "is_semi_n_absorbing_ideal",
    "mult_closure",
    "CyclicZSubmodule",
    "factorization_condition",
    "tkn_condition",
    "zint_ideal_is_kn_closed",
    "zint_is_kn_closed",
    "zint_is_n_absorbing",
    "zint_is_semi_n_absorbing",
    "zint_spectrum",
]

__version__ = "0.1.0"
