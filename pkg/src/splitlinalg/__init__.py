"""Matrix decompositions over the double (split-complex) and double-complex numbers.

A double matrix is stored as a pair ``[A, B]`` of real or complex matrices
(see :mod:`splitlinalg.matrices`); most decompositions reduce to familiar
real ones on the components.
"""

from .decompositions import (
    ldl_double,
    ldu_via_double,
    polar,
    qr_components,
    qr_gram_schmidt,
    qr_householder,
    svd_lr,
)
from .errors import (
    ClusterAmbiguity,
    DegenerateColumn,
    DimensionMismatch,
    DomainError,
    InvalidParam,
    LinalgError,
    NilpotentBlock,
    NotHermitian,
    PivotFailure,
    PivotZeroDivisor,
    RankMismatch,
    ReconstructionFailure,
    Singular,
    ZeroDivisor,
    ZeroDivisorNorm,
)
from .jordan_svd import (
    JordanSVD,
    in_half_plane,
    jordan_svd,
    normalize_half_plane,
    penrose_check,
    pinv,
    uniqueness_probe,
)
from .matrices import DoubleMatrix, from_complex, from_real
from .pivoted import PermPair, bkp_double, lup_general, lup_restricted, rrqr_double
from .real_linalg import jordan_form, principal_sqrt
from .scalars import DoubleComplexScalar, DoubleScalar, j

__version__ = "0.1.0"

__all__ = [
    "bkp_double",
    "ClusterAmbiguity",
    "DegenerateColumn",
    "DimensionMismatch",
    "DomainError",
    "DoubleComplexScalar",
    "DoubleMatrix",
    "DoubleScalar",
    "from_complex",
    "from_real",
    "in_half_plane",
    "InvalidParam",
    "j",
    "jordan_form",
    "jordan_svd",
    "JordanSVD",
    "ldl_double",
    "ldu_via_double",
    "LinalgError",
    "lup_general",
    "lup_restricted",
    "NilpotentBlock",
    "normalize_half_plane",
    "NotHermitian",
    "penrose_check",
    "PermPair",
    "pinv",
    "PivotFailure",
    "PivotZeroDivisor",
    "polar",
    "principal_sqrt",
    "qr_components",
    "qr_gram_schmidt",
    "qr_householder",
    "RankMismatch",
    "ReconstructionFailure",
    "rrqr_double",
    "Singular",
    "svd_lr",
    "uniqueness_probe",
    "ZeroDivisor",
    "ZeroDivisorNorm",
]
