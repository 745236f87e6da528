"""Exact tools for linear higher-order cellular automata over Z_m."""

from .laurent import LaurentPoly
from .lmatrix import FrobeniusSpec, LaurentMatrix

__version__ = "0.1.0"

__all__ = ["LaurentPoly", "LaurentMatrix", "FrobeniusSpec", "__version__"]
