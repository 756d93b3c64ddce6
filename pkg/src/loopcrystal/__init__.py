"""Crystals B(infinity) and B(lambda) for quantum groups attached to quivers with loops."""
from .cartan import QuiverDatum, load_quiver, parse_quiver
from .errors import InputError, LatticeError, LoopCrystalError, QuiverParseError, TheoryViolation
from .extract import crystal_binf, crystal_module, extract_crystal
from .freealg import FormParams, FreeAlgebra

__version__ = "0.1.0"

__all__ = [
    "QuiverDatum", "load_quiver", "parse_quiver",
    "InputError", "LatticeError", "LoopCrystalError", "QuiverParseError", "TheoryViolation",
    "crystal_binf", "crystal_module", "extract_crystal",
    "FormParams", "FreeAlgebra",
]
