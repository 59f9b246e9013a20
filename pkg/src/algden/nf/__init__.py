"""Explicit number fields: maximal orders, primes, ideals, subfields."""

from .field import FieldElement, FieldError, NumberField
from .ideals import FractionalIdeal, IdealError, factor_element, product_of_primes
from .newton import NewtonPolygon, newton_polygon
from .primes import PrimeIdeal, factor_prime
from .subfield import (
    SubfieldError,
    SubfieldView,
    adjoin,
    adjoin_square_root,
    cached_field,
    prime_below,
    primes_above_in,
    subfields,
)

__all__ = [
    "FieldElement",
    "FieldError",
    "FractionalIdeal",
    "IdealError",
    "NewtonPolygon",
    "NumberField",
    "PrimeIdeal",
    "SubfieldError",
    "SubfieldView",
    "adjoin",
    "adjoin_square_root",
    "cached_field",
    "factor_element",
    "factor_prime",
    "newton_polygon",
    "prime_below",
    "primes_above_in",
    "product_of_primes",
    "subfields",
]
