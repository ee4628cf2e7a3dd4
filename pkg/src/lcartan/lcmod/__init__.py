"""Windowed graded modules in category O and Lie-Cartan modules."""

from .base import ExplicitModule, GradedLCModule, Window, theta_poly
from .modules import (
    DeltaModule,
    DirectSumModule,
    ProlongationModule,
    ShiftedModule,
    SwappedThetaModule,
    TensorRModule,
    build_delta,
    direct_sum,
    prolong_v_lambda,
    prolongation_terms,
    r_multiplication_map,
    shift,
    tensor_with_R,
)
from .ops import (
    HomBasis,
    annihilator_gminus1,
    check_hom,
    compose,
    depth_submodule,
    extend_hom,
    freeness_check,
    generate,
    generate_upward,
    hom_dimension,
    hom_solver,
    irreducible_lc_check,
    is_surjective,
    lc_axiom_check,
    lie_action_check,
    lift_through_surjection,
    radical_lc,
)

__all__ = [
    "ExplicitModule", "GradedLCModule", "Window", "theta_poly",
    "DeltaModule", "DirectSumModule", "ProlongationModule", "ShiftedModule", "SwappedThetaModule",
    "TensorRModule", "build_delta", "direct_sum", "prolong_v_lambda", "prolongation_terms", "r_multiplication_map", "shift",
    "tensor_with_R",
    "HomBasis", "annihilator_gminus1", "check_hom", "compose", "depth_submodule", "extend_hom",
    "freeness_check", "generate", "generate_upward", "hom_dimension", "hom_solver",
    "irreducible_lc_check", "is_surjective", "lc_axiom_check", "lie_action_check",
    "lift_through_surjection", "radical_lc",
]
