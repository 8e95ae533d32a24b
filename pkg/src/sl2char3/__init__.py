"""Exact tensor-product decompositions of irreducible sl(2)-modules in
characteristic 3, computed two independent ways and cross-verified."""

__version__ = "0.1.0"

from .gf import make_field
from .modules import ModuleParams, make_standard, make_T, make_Ttilde
from .tensorops import tensor
from .engine import decompose, decompose_with_lift
from .oracle import classify, predict

__all__ = [
    "make_field", "ModuleParams", "make_standard", "make_T", "make_Ttilde",
    "tensor", "decompose", "decompose_with_lift", "classify", "predict",
]
