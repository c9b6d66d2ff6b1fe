"""Structural witnesses for braided rig categories, compiled to exact matrices."""

from .backends import (
    FINSET, BackendConfig, ConcreteMorphism, compile_term, def1_union,
    def2_union, denote, graded, mor_eq,
)
from .shapes import ONE, ZERO, Atom, Env, Prod, Sum, Var, parse_shape
from .witnesses import (
    Comp, Copair, Gen, Id, ProdM, SumM, invert, parse_term, seq, typecheck,
)

__version__ = "0.1.0"

__all__ = [
    "FINSET", "BackendConfig", "ConcreteMorphism", "compile_term", "def1_union",
    "def2_union", "denote", "graded", "mor_eq",
    "ONE", "ZERO", "Atom", "Env", "Prod", "Sum", "Var", "parse_shape",
    "Comp", "Copair", "Gen", "Id", "ProdM", "SumM", "invert", "parse_term", "seq", "typecheck",
]
