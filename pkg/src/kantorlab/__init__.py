"""Exact computations with Kantor pairs, their graded Lie envelopes and BC2 Weyl images."""
from .exact_linalg import QQ, Field
from .pairs import MINUS, PLUS, TrilinearPair
from .lie import GradedLieAlgebra

__all__ = ["QQ", "Field", "MINUS", "PLUS", "TrilinearPair", "GradedLieAlgebra"]
