"""Finite-dimensional representations of g₀ = gl(n), sl(n), sp(2r)."""

from .module import (
    G0Module,
    ModuleCheck,
    build_simple,
    check_module,
    decompose_semisimple,
    direct_sum,
    exterior_power,
    generated_subspace,
    is_irreducible,
    natural_module,
    submodule,
    tensor,
    trivial_module,
)
from .weights import (
    Weight,
    check_dominant,
    dominant_rep,
    freudenthal_multiplicities,
    gl_representative,
    height,
    is_dominant,
    positive_roots,
    rho,
    simple_roots,
    weyl_dimension,
    weyl_orbit,
)

__all__ = [
    "G0Module", "ModuleCheck", "build_simple", "check_module", "decompose_semisimple",
    "direct_sum", "exterior_power", "generated_subspace", "is_irreducible", "natural_module",
    "submodule", "tensor", "trivial_module",
    "Weight", "check_dominant", "dominant_rep", "freudenthal_multiplicities", "gl_representative",
    "height", "is_dominant", "positive_roots", "rho", "simple_roots", "weyl_dimension", "weyl_orbit",
]
