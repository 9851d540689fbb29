"""Exact linear algebra for framed sheaves on P2 and P1xP1."""

from .ratla import RationalMatrix
from .surface import NumericalClass, get_surface
from .cohomology import LineBundleComplex, hypercohomology
from .quiver import Representation, preset
from .adhm import ADHMDatum, monad_from_adhm

__all__ = [
    "RationalMatrix", "NumericalClass", "get_surface", "LineBundleComplex", "hypercohomology",
    "Representation", "preset", "ADHMDatum", "monad_from_adhm",
]
__version__ = "0.1.0"
