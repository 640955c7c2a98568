"""Exact-arithmetic invariants of quivers with potential and hypersurface
singularities: truncated noncommutative series, Groebner quotients, Jacobi
algebras, graded differential constructions with their homology, finite-
dimensional algebra invariants, and Milnor/Tyurina data, cross-checked on
matched families from both sides.
"""

from ._kernel import active_kernel
from .ncpoly import (
    AlgebraMorphismData,
    NCSeries,
    PathWord,
    Quiver,
    compose_morphisms,
    multiply,
    parse_quiver,
    parse_series,
    substitute,
)
from .ncgroebner import (
    QuotientCertificate,
    ReductionSystem,
    groebner,
    normal_form,
    quotient_algebra,
)
from .potential import (
    CanonicalClass,
    Potential,
    WeightVector,
    apply_right_equivalence,
    canonical_class,
    cyclic_derivative,
    is_weighted_homogeneous,
    jacobi_algebra,
    mather_yau_compare,
    saito_test,
)
from .findim import (
    FinDimAlgebra,
    FrobeniusForm,
    commutator_quotient,
    fingerprint,
    is_self_injective,
    radical,
    symmetric_form,
)

__version__ = "0.1.0"
