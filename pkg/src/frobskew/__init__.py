"""Exact computation in Frobenius skew-polynomial rings and Cartier crystals."""

from .errors import FrobSkewError
from .fields import GF, FieldSpec, PolyRing, ProductRing, QuotientRing, RationalFunctionField
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FieldSpec",
    "FrobSkewError",
    "GF",
    "PolyRing",
    "ProductRing",
    "QuotientRing",
    "RationalFunctionField",
]
