"""Exact rationals, sparse polynomials and exact sparse linear algebra."""

from .rational import Rat, as_rat, rat_to_str, rat_from_str
from .poly import Mono, Poly, monomials, mono_index, dim_R, grlex_key, poly_mul, poly_partial, graded_component
from .sparse import SparseMat, Vec, vec_axpy, vec_add, vec_scale
from .linalg import (IntEchelon, Subspace, LinalgReport, rref, rank, kernel, image, solve, inverse,
                     linalg_suite)
from ._kernels import backend_name

__all__ = [
    "Rat", "as_rat", "rat_to_str", "rat_from_str",
    "Mono", "Poly", "monomials", "mono_index", "dim_R", "grlex_key", "poly_mul", "poly_partial",
    "graded_component",
    "SparseMat", "Vec", "vec_axpy", "vec_add", "vec_scale",
    "IntEchelon", "Subspace", "LinalgReport", "rref", "rank", "kernel", "image", "solve", "inverse",
    "linalg_suite", "backend_name",
]
