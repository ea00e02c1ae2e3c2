"""Folded Reed-Solomon and multiplicity codes with executable list-decoding checks."""

from .codes import (
    FRS,
    MULT,
    CodeSpec,
    corollary_params,
    encode,
    hamming_distance,
    make_appropriate_alphas,
    make_spec,
    radius_bound,
    singleton_bound,
    validate_spec,
)
from .field_poly import Field, Poly, find_generator, hasse_derivative, poly_eval
from .verify import VerifyReport, search_worst, verify_list_decodability

__version__ = "0.1.0"

__all__ = [
    "FRS",
    "MULT",
    "CodeSpec",
    "Field",
    "Poly",
    "VerifyReport",
    "corollary_params",
    "encode",
    "find_generator",
    "hamming_distance",
    "hasse_derivative",
    "make_appropriate_alphas",
    "make_spec",
    "poly_eval",
    "radius_bound",
    "search_worst",
    "singleton_bound",
    "validate_spec",
    "verify_list_decodability",
]
