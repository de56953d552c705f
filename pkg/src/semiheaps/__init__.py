"""Finite semiheaps, biunit pairs and switch monoids on explicit carriers."""

from .biunits import (
    BiunitPairReport,
    Classification,
    biunit_pair_product_closure,
    biunit_pairs,
    classify,
    currying_group,
    partner_involution,
    two_pair_isomorphism,
)
from .correspondence import (
    SwitchMonoid,
    biunit_isomorphism,
    check_switch_monoid_laws,
    involuted_monoid_of_biunit,
    lambda_corr,
    omega,
)
from .laws import (
    check_semiheap,
    curry_binary,
    is_abelian,
    is_semiheap,
    is_switch,
    is_twist,
    is_warp,
    reverse,
    semiheap_from_switch,
    shift,
    switch_bracket,
    twist,
)
from .tables import (
    AlgebraError,
    BinaryTable,
    CarrierMismatch,
    ElementError,
    Endomap,
    LawReport,
    PreconditionError,
    TernaryTable,
    ValidationError,
)

__version__ = "0.1.0"
