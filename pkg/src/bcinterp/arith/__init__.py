"""Exact arithmetic: Laurent polynomials, rational functions, substitutions."""

from .field import DivisionByZero, RationalFunction, one_minus, rf
from .laurent import ExponentOverflow, LaurentPolynomial, NotDivisible, poly, prod
from .serialize import ParseError, deserialize, parse, parse_poly, serialize, to_json, to_text
from .specialize import IllFormedSpec, SpecializationSpec, check_generic, parse_spec, substitute

__all__ = [
    "DivisionByZero",
    "ExponentOverflow",
    "IllFormedSpec",
    "LaurentPolynomial",
    "NotDivisible",
    "ParseError",
    "RationalFunction",
    "SpecializationSpec",
    "check_generic",
    "deserialize",
    "one_minus",
    "parse",
    "parse_poly",
    "parse_spec",
    "poly",
    "prod",
    "rf",
    "serialize",
    "substitute",
    "to_json",
    "to_text",
]
