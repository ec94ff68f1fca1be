"""Exact characters of affine quiver representations and the bases they generate."""

from .laurent import LaurentPoly
from .quiver import Quiver, affine_a, classify_affine, euler_form, kronecker, parse_quiver

__all__ = ["LaurentPoly", "Quiver", "affine_a", "classify_affine", "euler_form", "kronecker", "parse_quiver"]
__version__ = "0.1.0"
