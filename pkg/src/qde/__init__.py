"""Exact arithmetic for real quadratic irrationals and related invariants.

The package computes, entirely in exact integer arithmetic: canonical forms
and periodic continued fractions of real quadratic irrationals, fundamental
units, endomorphism orders of pseudo-lattices Z + theta*Z, class numbers and
class groups of real quadratic orders, K0 descriptors of the associated
crossed products, rank and Shafarevich-Tate predictions, and a validation
harness that checks curve data against |Sha| = (1 + rank)**2.
"""

from .classgroup import (
    DEFAULT_MAX_DISC,
    AbelianGroupStructure,
    BinaryQuadraticForm,
    class_group_structure,
    class_number_maximal,
    class_number_order,
    compose,
    galois_group_Kab,
    reduce_cycle,
    unit_index,
)
from .errors import (
    CurveDataError,
    DependentGeneratorsError,
    DiscriminantBoundError,
    FieldMismatchError,
    InvariantError,
    ParseError,
    QdeError,
    RationalValueError,
)
from .harness import CurveRecord, ValidationReport, parse_curves, validate
from .ktheory import (
    FiniteGroupTower,
    KTheoryDescriptor,
    af_k0_truncated,
    crossed_product_k0,
    group_algebra_decomposition,
)
from .lattice import (
    PseudoLattice,
    QuadraticOrder,
    companion_tori,
    endomorphism_ring,
    normalize_pseudolattice,
)
from .predict import Prediction, predict, sha_doubling
from .quadratic import (
    ContinuedFraction,
    QuadraticInteger,
    QuadraticIrrational,
    cf_expand,
    cf_value,
    fundamental_unit,
    gl2z_equivalent,
    kronecker,
    parse_theta,
    squarefree_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupStructure",
    "BinaryQuadraticForm",
    "ContinuedFraction",
    "CurveDataError",
    "CurveRecord",
    "DEFAULT_MAX_DISC",
    "DependentGeneratorsError",
    "DiscriminantBoundError",
    "FieldMismatchError",
    "FiniteGroupTower",
    "InvariantError",
    "KTheoryDescriptor",
    "ParseError",
    "Prediction",
    "PseudoLattice",
    "QdeError",
    "QuadraticInteger",
    "QuadraticIrrational",
    "QuadraticOrder",
    "RationalValueError",
    "ValidationReport",
    "af_k0_truncated",
    "cf_expand",
    "cf_value",
    "class_group_structure",
    "class_number_maximal",
    "class_number_order",
    "companion_tori",
    "compose",
    "crossed_product_k0",
    "endomorphism_ring",
    "fundamental_unit",
    "galois_group_Kab",
    "gl2z_equivalent",
    "group_algebra_decomposition",
    "kronecker",
    "normalize_pseudolattice",
    "parse_curves",
    "parse_theta",
    "predict",
    "reduce_cycle",
    "sha_doubling",
    "squarefree_decompose",
    "unit_index",
    "validate",
]
