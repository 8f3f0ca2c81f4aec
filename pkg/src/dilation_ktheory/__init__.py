"""Exact K-theory of Cuntz-Li algebras attached to integer dilation matrices."""

from .errors import (
    DimensionError,
    DomainError,
    InternalConsistencyError,
    KTheoryError,
    NotADilationError,
    ParseError,
    SingularMatrixError,
)
from .exact_linalg import (
    FinAbGroup,
    IntMatrix,
    SmithDecomposition,
    cokernel,
    det,
    groups_isomorphic,
    invariant_factors,
    is_unimodular,
    smith_normal_form,
)
from .exterior import (
    SubsetBasis,
    b_matrix,
    b_tilde_matrix,
    complement_matrix,
    exterior_power,
    hodge_matrix,
    subset_basis,
    subset_sign,
)
from .ktheory import (
    ColimitGroup,
    KTheoryReport,
    bezout_witness,
    cokernel_table,
    cross_check,
    gamma_group,
    gamma_membership,
    group_algebra_k,
    k_groups,
    k_groups_via_b,
    stabilization_check,
    tau_action,
)
from .spectral import DilationReport, IntPolynomial, RejectionReason, certify_dilation, char_poly, det_sign

__version__ = "0.1.0"
