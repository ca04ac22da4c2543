"""Exact patching of modules and torsors along equalizer categories.

Subpackages are imported on demand; the most common entry points are
re-exported here.
"""
from .errors import EqPatchError
from .rings import Laurent, LocalAtZero, Poly, PrimeField, RationalFunctions, Rationals, field_by_name

__version__ = "0.1.0"

__all__ = [
    "EqPatchError",
    "Laurent",
    "LocalAtZero",
    "Poly",
    "PrimeField",
    "RationalFunctions",
    "Rationals",
    "field_by_name",
]
