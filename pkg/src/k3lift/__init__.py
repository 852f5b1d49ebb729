"""Exact-arithmetic toolkit for the constructive side of K3 lifting theory.

Truncated Witt-vector linear algebra over W(F_q)/p^n, eigenspace splitting
of tame lattice isometries, Hensel construction of isotropic vectors, the
period-domain parametrization by middle coordinates in pW, the local
Torelli map with its Newton inverse, liftability-certificate search along
the three proof branches, and the arithmetic constraint gates.  Everything
is computed exactly; there is no floating point anywhere.
"""

from .errors import (
    BadPairing,
    ContextMismatch,
    DegenerateForm,
    DimensionMismatch,
    HodgeLineNotEigen,
    IndependenceFailure,
    InputError,
    InsufficientResidueField,
    K3LiftError,
    NoConvergence,
    NonSimpleRoot,
    NonUnit,
    NonUnitPivot,
    NotEigenvector,
    NotNearIsotropic,
    NotSymplectic,
    NotTame,
    NotWeaklyTame,
    NoUnitPartner,
    OrderViolation,
    PreconditionError,
    PrecisionLoss,
    ProjectionCollapse,
    RankTooSmall,
    SymplecticInput,
    ValuationViolation,
)
from .witt import PadicScalar, RingContext, default_modulus, required_extension_degree
from .linalg import (
    RingMat,
    RingVec,
    independent_columns,
    inverse,
    is_unimodular,
    kernel,
    matrix_valuation,
    residue_rank,
    solve,
    solve_in_span,
)
from .lattice import (
    DiscriminantGroup,
    QuadLattice,
    bareiss_determinant,
    discriminant_group,
    integer_kernel,
    orthogonal_complement,
    signature,
    smith_normal_form,
    standard_lattice,
)
from .isometry import (
    EigenComponent,
    EigenSplit,
    Isometry,
    centered_coefficients,
    char_poly_coeffs,
    eigen_split,
    lift_eigenvector,
)
from .hensel import (
    hensel_root,
    poly_derivative,
    poly_eval,
    isotropic_combination,
    orthogonalize_against,
    orthogonalize_with_coefficient,
)
from .period import (
    FrobeniusStructure,
    PeriodFrame,
    PeriodLine,
    check_conditions,
    complete_period_line,
    coordinates_of,
    from_generator,
)
from .torelli import (
    ConnectionData,
    DeformationPoint,
    phi_invert,
    phi_line,
    phi_map,
    quadric_connection,
    transport,
    truncation_degree,
)
from .lifting import (
    LiftingCertificate,
    SlopeDecomposition,
    SupersingularInput,
    VerificationReport,
    lift_finite_height,
    lift_ss_nonsymplectic,
    lift_ss_symplectic,
    phi_rank_check,
    universal_line,
    verify_certificate,
)
from .constraints import (
    UNIQUENESS_ORDERS,
    euler_phi,
    is_prime,
    phi_bound_scan,
    primes_up_to,
    surface_thresholds,
    tameness,
    unique_order_check,
)
from .samples import (
    multiplicative_order,
    random_connection,
    random_deformation_point,
    random_isotropic_instance,
    random_period_coordinates,
    random_period_frame,
    random_scalar,
    random_symmetric_unimodular,
    random_tame_isometry,
    random_unimodular,
    random_unit,
)
from .serialize import (
    canonical_dumps,
    connection_from_json,
    frame_from_json,
    isometry_from_json,
    lattice_from_json,
    line_from_json,
    matrix_from_json,
    point_from_json,
    scalar_from_json,
    vector_from_json,
)

__version__ = "0.1.0"

__all__ = [
    "BadPairing",
    "ConnectionData",
    "ContextMismatch",
    "DeformationPoint",
    "DegenerateForm",
    "DimensionMismatch",
    "DiscriminantGroup",
    "EigenComponent",
    "EigenSplit",
    "FrobeniusStructure",
    "HodgeLineNotEigen",
    "IndependenceFailure",
    "InputError",
    "InsufficientResidueField",
    "Isometry",
    "K3LiftError",
    "LiftingCertificate",
    "NoConvergence",
    "NoUnitPartner",
    "NonSimpleRoot",
    "NonUnit",
    "NonUnitPivot",
    "NotEigenvector",
    "NotNearIsotropic",
    "NotSymplectic",
    "NotTame",
    "NotWeaklyTame",
    "OrderViolation",
    "PadicScalar",
    "PeriodFrame",
    "PeriodLine",
    "PrecisionLoss",
    "PreconditionError",
    "ProjectionCollapse",
    "QuadLattice",
    "RankTooSmall",
    "RingContext",
    "RingMat",
    "RingVec",
    "SlopeDecomposition",
    "SupersingularInput",
    "SymplecticInput",
    "UNIQUENESS_ORDERS",
    "ValuationViolation",
    "VerificationReport",
    "bareiss_determinant",
    "canonical_dumps",
    "centered_coefficients",
    "char_poly_coeffs",
    "check_conditions",
    "complete_period_line",
    "connection_from_json",
    "coordinates_of",
    "default_modulus",
    "discriminant_group",
    "eigen_split",
    "euler_phi",
    "frame_from_json",
    "from_generator",
    "hensel_root",
    "independent_columns",
    "integer_kernel",
    "inverse",
    "is_prime",
    "is_unimodular",
    "isometry_from_json",
    "isotropic_combination",
    "kernel",
    "lattice_from_json",
    "lift_eigenvector",
    "lift_finite_height",
    "lift_ss_nonsymplectic",
    "lift_ss_symplectic",
    "line_from_json",
    "matrix_from_json",
    "matrix_valuation",
    "multiplicative_order",
    "orthogonal_complement",
    "orthogonalize_against",
    "orthogonalize_with_coefficient",
    "phi_bound_scan",
    "phi_invert",
    "phi_line",
    "phi_map",
    "phi_rank_check",
    "point_from_json",
    "poly_derivative",
    "poly_eval",
    "primes_up_to",
    "quadric_connection",
    "random_connection",
    "random_deformation_point",
    "random_isotropic_instance",
    "random_period_coordinates",
    "random_period_frame",
    "random_scalar",
    "random_symmetric_unimodular",
    "random_tame_isometry",
    "random_unimodular",
    "random_unit",
    "required_extension_degree",
    "residue_rank",
    "scalar_from_json",
    "signature",
    "smith_normal_form",
    "solve",
    "solve_in_span",
    "standard_lattice",
    "surface_thresholds",
    "tameness",
    "transport",
    "truncation_degree",
    "unique_order_check",
    "universal_line",
    "vector_from_json",
    "verify_certificate",
]
