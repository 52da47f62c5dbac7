"""Exact constructions of BC-type interpolation Macdonald polynomials."""

__version__ = "0.1.0"
