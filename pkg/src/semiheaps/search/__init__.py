"""Exhaustive enumeration, canonical forms, isomorphism and warp equivalence."""

from .enumeration import (
    MAX_EXHAUSTIVE_N,
    enumerate_endomaps,
    enumerate_monoids,
    enumerate_semigroups,
    enumerate_semiheaps,
    monoids,
    raw_ternary_tables,
    semigroups,
    semiheaps,
)
from .isomorphism import CanonicalForm, canonical_form, element_invariants, is_canonical, relabel, ternar_isomorphic
from .warps import (
    CompositionSearch,
    SearchLimitReached,
    WarpPath,
    all_endomaps,
    bijective_warps,
    enumerate_switches,
    enumerate_warps,
    find_warp_composition_counterexample,
    switch_mask,
    warp_closure,
    warp_equivalent,
    warp_mask,
)

__all__ = [
    "MAX_EXHAUSTIVE_N",
    "enumerate_endomaps",
    "enumerate_monoids",
    "enumerate_semigroups",
    "enumerate_semiheaps",
    "monoids",
    "raw_ternary_tables",
    "semigroups",
    "semiheaps",
    "CanonicalForm",
    "canonical_form",
    "element_invariants",
    "is_canonical",
    "relabel",
    "ternar_isomorphic",
    "CompositionSearch",
    "SearchLimitReached",
    "WarpPath",
    "all_endomaps",
    "bijective_warps",
    "enumerate_switches",
    "enumerate_warps",
    "find_warp_composition_counterexample",
    "switch_mask",
    "warp_closure",
    "warp_equivalent",
    "warp_mask",
]
