"""Cochain complexes: Koszul strands, Chevalley–Eilenberg, windowed ULC, resolution differentials."""

from .complexes import (Strand, GradedComplex, CohomologyReport, FiniteLieAlgebra, g0_lie_algebra, ce_complex,
                        wedge_sort)
from .koszul import koszul_complex, koszul_differential, composition_accounting, graded_character, omega
from .ulc import ulc_cochain_complex, ulc_cohomology_windowed, wedges_with_load
from .resolution import Resolution, resolution_differential

__all__ = [
    "Strand", "GradedComplex", "CohomologyReport", "FiniteLieAlgebra", "g0_lie_algebra", "ce_complex",
    "wedge_sort", "koszul_complex", "koszul_differential", "composition_accounting", "graded_character", "omega",
    "ulc_cochain_complex", "ulc_cohomology_windowed", "wedges_with_load", "Resolution",
    "resolution_differential",
]
