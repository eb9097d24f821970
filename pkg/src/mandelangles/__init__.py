"""Exact external-angle combinatorics for real quadratic polynomials."""

from .angle import Angle, binary_expansion, fmt, parse_angle, word_value
from .errors import DomainError
from .intervals import IntervalSet, boxcount_dimension
from .realslice import Opening, cover_R, enumerate_openings, in_R, in_R_depth, openings_length_sum

__all__ = [
    "Angle",
    "DomainError",
    "IntervalSet",
    "Opening",
    "binary_expansion",
    "boxcount_dimension",
    "cover_R",
    "enumerate_openings",
    "fmt",
    "in_R",
    "in_R_depth",
    "openings_length_sum",
    "parse_angle",
    "word_value",
]
