"""Liftings of numerical semigroups: toric ideals, tangent cones, Betti numbers."""

__version__ = "0.1.0"

from .errors import (
    BoundTooSmall,
    GcdNotOne,
    KNotCoprime,
    LiftlabError,
    M1NotMultiplicity,
    NoLiftableFactorization,
    NonPositive,
    NotCoprimeMonomials,
    NotMember,
    NotMinimal,
)
from .semigroup import (
    Factorization,
    NumericalSemigroup,
    is_valid_k,
    lift,
    lift_element,
    lift_factorization,
    minimalize,
)
from .toric import (
    Binomial,
    FiberGraph,
    betti1_degrees,
    degree_graph,
    fiber,
    indispensable_binomials,
    lift_binomial,
    lower_degree_membership,
    minimal_generators,
)
from .cm import CmReport, Witness, cm_threshold, critical_monomials, is_tangent_cone_cm
from .betti import (
    BettiTable,
    DivisorComplex,
    betti_table,
    divisor_complex,
    reduced_homology_ranks,
    strongly_indispensable,
)
from .tangent_cone import (
    InitialFormPiece,
    KoszulMode,
    PieceKind,
    Polynomial,
    TangentConeModel,
    hilbert_function,
    homogeneous_type,
    initial_form_piece,
    koszul_betti,
    project_pi,
    tc_minimal_generators,
)
