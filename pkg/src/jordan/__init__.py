"""
Real Jordan decompositions with polynomial witnesses.

Every component returned here is an explicit polynomial in the input matrix,
built from spectral projector polynomials over exact rational, Gaussian and
radical scalars, with a numeric fallback for spectra that do not split.

>>> from jordan import SquareMatrix, additive_jordan
>>> d = additive_jordan(SquareMatrix([[1, 1], [-1, 1]]))
>>> d.E, d.H
(SquareMatrix([[0, 1], [-1, 0]]), SquareMatrix([[1, 0], [0, 1]]))
"""

from .decompose import (
    AdditiveDecomposition,
    MultiplicativeDecomposition,
    additive_jordan,
    multiplicative_jordan,
    verify_additive,
    verify_multiplicative,
)
from .errors import (
    ClusterAmbiguity,
    DegenerateInput,
    ExactModeUnavailable,
    InconsistentInput,
    InternalError,
    JordanError,
    NotInvertible,
    NotMember,
    NotNilpotent,
    NotSemisimple,
    NotUnipotent,
    ShapeError,
    SingularLocalInverse,
    SizeLimit,
)
from .exactmat import (
    SpectralLog,
    SquareMatrix,
    characteristic_polynomial,
    commutes,
    eval_poly_at_matrix,
    kron,
    matrix_exp_nilpotent,
    matrix_log_unipotent,
    minimal_polynomial,
)
from .lie import (
    Ad_operator,
    Ad_spectrum_check,
    LieStructure,
    ad_operator,
    ad_spectrum_check,
    algebra_membership,
    closure_check_algebra,
    closure_check_group,
    group_membership,
)
from .polyring import (
    Poly,
    conjugate_poly,
    mod_reduce,
    poly_extended_gcd,
    poly_gcd,
    poly_lcm,
    series_inverse_at,
    squarefree_decomposition,
)
from .projectors import ProjectorSet, build_projectors, verify_projector_identities
from .scalars import Scalar, format_scalar, parse_scalar, sqrt_exact
from .spectral import (
    ClassificationReport,
    Root,
    SpectralData,
    classify_operator,
    factor_minimal_polynomial,
)
from .verification import Check, VerificationReport

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
