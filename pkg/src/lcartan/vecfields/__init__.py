"""Lie algebras of polynomial vector fields W(n), S(n), H(n)."""

from .vfield import VField, bracket, divergence, d_ij, d_h, sigma, prime
from .algebra import (AlgebraKind, NotInAlgebra, Letter, GradedLieAlgebra, get_algebra, basis_of_degree,
                      is_member, field_weight, TriangularData, triangular, G0Data, g0_data, g0_structure_check,
                      exceptional_weights, algebra_suite)
from .pbw import Envelope

__all__ = [
    "VField", "bracket", "divergence", "d_ij", "d_h", "sigma", "prime",
    "AlgebraKind", "NotInAlgebra", "Letter", "GradedLieAlgebra", "get_algebra", "basis_of_degree",
    "is_member", "field_weight", "TriangularData", "triangular", "G0Data", "g0_data", "g0_structure_check",
    "exceptional_weights", "algebra_suite", "Envelope",
]
