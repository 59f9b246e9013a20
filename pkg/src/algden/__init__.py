"""Denominators of algebraic numbers.

Everything is exact.  The package covers the integer invariants attached to a
minimal polynomial and the primes where an algebraic number has poles over
each subfield, up to finite generating sets for those primes.
"""

__version__ = "0.1.0"

from .classgroup import ClassGroup, class_group, is_principal
from .denominators import (
    GammaContext,
    compute_xy,
    cross_field_check,
    denominator_section,
    kernel_ideal,
    local_classify,
    membership,
    membership_oracle,
    ring_description,
    same_denominator,
)
from .genset import generating_set, verify_generating_set
from .nf import FractionalIdeal, NumberField, PrimeIdeal, SubfieldView, cached_field
from .parse import parse_element, parse_field, parse_poly
from .poly import MinimalPolynomial, invariants, normalize
from .tuples import TupleQuery, atlas, construct_witness, is_realizable

__all__ = [
    "ClassGroup",
    "FractionalIdeal",
    "GammaContext",
    "MinimalPolynomial",
    "NumberField",
    "PrimeIdeal",
    "SubfieldView",
    "TupleQuery",
    "__version__",
    "atlas",
    "cached_field",
    "class_group",
    "compute_xy",
    "construct_witness",
    "cross_field_check",
    "denominator_section",
    "generating_set",
    "invariants",
    "is_principal",
    "is_realizable",
    "kernel_ideal",
    "local_classify",
    "membership",
    "membership_oracle",
    "normalize",
    "parse_element",
    "parse_field",
    "parse_poly",
    "ring_description",
    "same_denominator",
    "verify_generating_set",
]
