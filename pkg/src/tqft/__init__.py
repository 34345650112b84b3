"""Exact evaluation of colored ribbon diagrams and the quantum invariants built on them."""

from .scalars import CycloScalar, FloatScalar, CycloField, FloatField, embed_complex

__all__ = ["CycloScalar", "FloatScalar", "CycloField", "FloatField", "embed_complex"]
__version__ = "0.1.0"
