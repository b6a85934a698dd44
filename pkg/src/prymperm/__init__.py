"""Permutation groups of Prym fixed points on Weierstrass Prym eigenforms in
genus three, computed from exact flat geometry."""

from .cylinders import CylinderDecomposition, cylinder_decomposition
from .errors import PrymError
from .invariants import fr_classes, hlk_invariant
from .permgroup import MarkedPermutation, SubgroupClass, classify, closure
from .prototypes import Prototype, admissible_range, locus_status, reduced_prototypes
from .qfield import QuadNum
from .surface import SurfaceSpec, TranslationSurface, build_surface, validate_surface
from .twists import multitwist, twist_permutation
from .verify import appendixA_check, compute_group, verify_range

__all__ = [
    "CylinderDecomposition", "MarkedPermutation", "Prototype", "PrymError", "QuadNum",
    "SubgroupClass", "SurfaceSpec", "TranslationSurface", "admissible_range",
    "appendixA_check", "build_surface", "classify", "closure", "compute_group",
    "cylinder_decomposition", "fr_classes", "hlk_invariant", "locus_status",
    "multitwist", "reduced_prototypes", "twist_permutation", "validate_surface",
    "verify_range",
]
__version__ = "0.1.0"
