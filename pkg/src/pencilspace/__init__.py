"""Exact linearizations of quadratic two-parameter matrix polynomials.

The library builds the vector space of linear two-parameter pencils
attached to a quadratic Q(lam, mu), certifies which members are genuine
linearizations (explicit unimodular transformations or exact determinant
ratios), and linearizes pairs of quadratics into two-parameter eigenvalue
problems whose spectra and operator determinants it verifies at desk
scale.  All structural checks run over the Gaussian rationals; floating
point appears only in the polynomial root iteration.
"""

from .bipoly import BiPoly, UniPoly
from .construct import (
    AnsatzTransform,
    LinearizationCertificate,
    ProcedureResult,
    ansatz_transform,
    best_certificate,
    certify_det_ratio,
    certify_scaled_e1,
    certify_standard,
    condition_det_check,
    procedure_linearize,
)
from .errors import (
    ConditionUnsatisfiableError,
    ConvergenceError,
    DegreeError,
    HypothesisViolatedError,
    NonGenericSystemError,
    ParseError,
    ShapeError,
    ZeroAnsatzError,
)
from .matrices import Matrix, exact_det_scalar, kron
from .pencil import (
    CorrespondenceReport,
    Pencil2P,
    QuadPoly2P,
    apply_to_lambda,
    box_add,
    box_add_pencil,
    eigenvector_correspondence,
    lambda_kron_identity,
    standard_linearization,
)
from .polymatrix import PolyMatrix, exact_det_poly, poly_div_constant_ratio
from .qep import (
    DeltaOps,
    EigenpairReport,
    LinearSystem2P,
    QuadSystem2P,
    SpectrumPoint,
    SpectrumReport,
    delta_operators,
    linearize_system,
    singularity_check,
    spectrum_pencil,
    spectrum_quadratic,
    standard_blocks,
    verify_eigenpair,
    verify_spectral_equality,
)
from .resultants import sylvester_resultant
from .roots import durand_kerner, unipoly_roots
from .scalars import GaussianRational
from .space import (
    DimensionSummary,
    FreeBlocks,
    MembershipResult,
    SingleParamPencil,
    generate_member,
    kernel_member,
    membership,
    reduce_mu_zero,
    space_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzTransform",
    "BiPoly",
    "ConditionUnsatisfiableError",
    "ConvergenceError",
    "CorrespondenceReport",
    "DegreeError",
    "DeltaOps",
    "DimensionSummary",
    "EigenpairReport",
    "FreeBlocks",
    "GaussianRational",
    "HypothesisViolatedError",
    "LinearSystem2P",
    "LinearizationCertificate",
    "Matrix",
    "MembershipResult",
    "NonGenericSystemError",
    "ParseError",
    "Pencil2P",
    "PolyMatrix",
    "ProcedureResult",
    "QuadPoly2P",
    "QuadSystem2P",
    "ShapeError",
    "SingleParamPencil",
    "SpectrumPoint",
    "SpectrumReport",
    "UniPoly",
    "ZeroAnsatzError",
    "ansatz_transform",
    "apply_to_lambda",
    "best_certificate",
    "box_add",
    "box_add_pencil",
    "certify_det_ratio",
    "certify_scaled_e1",
    "certify_standard",
    "condition_det_check",
    "delta_operators",
    "durand_kerner",
    "eigenvector_correspondence",
    "exact_det_poly",
    "exact_det_scalar",
    "generate_member",
    "kernel_member",
    "kron",
    "lambda_kron_identity",
    "linearize_system",
    "membership",
    "poly_div_constant_ratio",
    "procedure_linearize",
    "reduce_mu_zero",
    "singularity_check",
    "space_dimension",
    "spectrum_pencil",
    "spectrum_quadratic",
    "standard_blocks",
    "standard_linearization",
    "sylvester_resultant",
    "unipoly_roots",
    "verify_eigenpair",
    "verify_spectral_equality",
]
