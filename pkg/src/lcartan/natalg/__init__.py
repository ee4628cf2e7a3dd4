"""The naturalized algebra: R tensor U(g) with the smash-product multiplication."""

from .core import WindowOverflow, NatAlgebra, NatElement, unity_omega, axiom_suite

__all__ = ["WindowOverflow", "NatAlgebra", "NatElement", "unity_omega", "axiom_suite"]
