"""Finite association schemes, hypergroup harmonic analysis, clique-tree
graph deformations, product/join constructions, and random walks."""

from .scheme import (
    AssociationScheme,
    AxiomViolation,
    GeneralizedScheme,
    NotAGroup,
    NotASubgroup,
    NotUnimodular,
    RelationPartition,
    canonical_generalized,
    finite_rigidity_check,
    from_double_cosets,
    translation_property_check,
    verify_generalized,
    verify_scheme,
)
from .hypergroup import (
    CharacterTable,
    DegenerateSpectrum,
    FiniteHypergroup,
    NotASemicharacter,
    NotCommutative,
    characters,
    dual_convolution,
    fourier,
    from_generalized,
    from_scheme,
    haar,
    inverse_fourier,
    plancherel_invert,
    positive_definite_check,
    semicharacter_deform,
    semicharacters,
    verify_hypergroup,
)
from .dtgraph import (
    Ball,
    BallTooLarge,
    BoundaryRay,
    DTParams,
    DomainError,
    NonUniqueMinimizer,
    PolyHypergroup,
    QuadratureFailure,
    UnsupportedParams,
    build_ball,
    closed_form_eval,
    deform_ball_kernels,
    deformation_point,
    g_coeffs,
    gram_min_eig,
    haar_weight,
    ortho_measure_integrate,
    poly_eval,
    product_formula_residual,
    pushforward_vs_haar,
    special_points,
)
from .constructions import (
    JoinIndex,
    ProductIndex,
    direct_product,
    direct_product_scheme,
    join,
    join_scheme,
)
from .walks import (
    KernelFamily,
    ParameterMismatch,
    StepDistribution,
    SupportCap,
    WalkResult,
    WalkWouldExitBall,
    convolution_power,
    projection_check,
    propagate_and_project,
    simulate_walk,
    tv_distance,
)

__version__ = "0.1.0"
