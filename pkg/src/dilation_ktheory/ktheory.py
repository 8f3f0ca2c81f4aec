"""K-groups of the Cuntz-Li algebra of an integer dilation matrix.

Two independent presentations are assembled from per-degree cokernels:

* the exterior-power form, from coker(1 - eps*A_n) with eps = sign(det A);
* the complement-minor form, from coker(1 - B_n).

They must agree, and :func:`cross_check` verifies that degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import DimensionError, InternalConsistencyError, NotADilationError
from .exact_linalg import (
    FinAbGroup,
    IntMatrix,
    direct_sum,
    groups_isomorphic,
    in_image,
    invariant_factors,
    smith_normal_form,
)
from .exterior import b_matrix, exterior_power
from .spectral import DilationReport, IntPolynomial, certify_dilation

DEFAULT_LEVEL_CAP = 64


@dataclass(frozen=True)
class ColimitGroup:
    """Stationary inductive limit of (Z^rank, transition), kept symbolic."""

    rank: int
    transition: IntMatrix
    degree: int


@dataclass(frozen=True)
class DegreeTerm:
    n: int
    matrix: IntMatrix
    invariant_factors: tuple[int, ...]
    cokernel: FinAbGroup


@dataclass(frozen=True)
class KTheoryReport:
    dimension: int
    det: int
    eps: int
    per_degree: tuple[DegreeTerm, ...]
    k0: FinAbGroup
    k1: FinAbGroup
    presentation: str  # "A" (exterior powers) or "B" (complement minors)
    extra_free_summand_location: str | None  # "K0", "K1" or None
    dilation: DilationReport | None = None


def _certified(a: IntMatrix) -> DilationReport:
    report = certify_dilation(a)
    if not report.is_dilation:
        raise NotADilationError(report)
    return report


def gamma_group(a: IntMatrix, n: int) -> ColimitGroup:
    _certified(a)
    t = exterior_power(a, n)
    return ColimitGroup(rank=t.rows, transition=t, degree=n)


def gamma_membership(g: ColimitGroup, v: Sequence, level_cap: int = DEFAULT_LEVEL_CAP):
    """Smallest r <= level_cap with transition^r v integral, as ``(r, w)``; else None."""
    if len(v) != g.rank:
        raise DimensionError(f"vector of length {len(v)} for a rank-{g.rank} group")
    w = [Fraction(x) for x in v]
    for r in range(level_cap + 1):
        if all(x.denominator == 1 for x in w):
            return r, [int(x) for x in w]
        w = g.transition.apply(w)
    return None


def group_algebra_k(a: IntMatrix) -> tuple[list[ColimitGroup], list[ColimitGroup]]:
    """Colimit groups of every degree split by parity: (even, odd)."""
    _certified(a)
    groups = [ColimitGroup(comb(a.rows, n), exterior_power(a, n), n) for n in range(a.rows + 1)]
    return [g for g in groups if g.degree % 2 == 0], [g for g in groups if g.degree % 2 == 1]


def rational_inverse(m: IntMatrix) -> list[list[Fraction]]:
    """Exact inverse over Q by Gauss-Jordan."""
    k = m.rows
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(m.to_rows())]
    for c in range(k):
        piv = next((i for i in range(c, k) if aug[i][c] != 0), None)
        if piv is None:
            raise InternalConsistencyError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(k):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[k:] for row in aug]


def tau_action(a: IntMatrix, n: int) -> list[list[Fraction]]:
    """Action of the shift on the degree-n colimit group: the inverse of A_n."""
    _certified(a)
    return rational_inverse(exterior_power(a, n))


def _matrix_poly(p: IntPolynomial, m: IntMatrix) -> IntMatrix:
    acc = IntMatrix.zeros(m.rows, m.cols)
    ident = IntMatrix.identity(m.rows)
    for c in reversed(p.coefficients):
        acc = acc @ m + c * ident
    return acc


def _matrix_power(m: IntMatrix, r: int) -> IntMatrix:
    out = IntMatrix.identity(m.rows)
    for _ in range(r):
        out = out @ m
    return out


def bezout_witness(a: IntMatrix, n: int, r: int, eps: int = 1) -> IntPolynomial:
    """p_r(x) = 1 + x + ... + x^(r-1), verified against the degree-n matrix.

    Checks p_r(eps*A_n)(1 - eps*A_n) + (eps*A_n)^r = 1 exactly before returning.
    """
    if r < 0:
        raise ValueError("level must be nonnegative")
    p = IntPolynomial((1,) * r)
    t = eps * exterior_power(a, n)
    ident = IntMatrix.identity(t.rows)
    lhs = _matrix_poly(p, t) @ (ident - t) + _matrix_power(t, r)
    if lhs != ident:
        raise InternalConsistencyError(f"geometric-sum identity failed at n={n}, r={r}")
    return p


def stabilization_check(a: IntMatrix, n: int, eps: int) -> bool:
    """Whether A_n acts as eps on coker(1 - eps*A_n), generator by generator."""
    _certified(a)
    t = exterior_power(a, n)
    m = IntMatrix.identity(t.rows) - eps * t
    snf = smith_normal_form(m)
    for i in range(t.rows):
        x = list(t.column(i))
        x[i] -= eps
        if not in_image(m, x, snf):
            return False
    return True


def _degree_terms(mats: Sequence[IntMatrix]) -> list[DegreeTerm]:
    out = []
    for n, m in enumerate(mats):
        inv = invariant_factors(m)
        out.append(DegreeTerm(n, m, inv, FinAbGroup.from_orders(inv)))
    return out


def cokernel_table(a: IntMatrix, eps: int) -> list[tuple[int, FinAbGroup]]:
    """coker(1 - eps*A_n) for n = 0..d; any eps is allowed for diagnostics."""
    _certified(a)
    return [(t.n, t.cokernel) for t in _a_terms(a, eps)]


def _a_terms(a: IntMatrix, eps: int) -> list[DegreeTerm]:
    mats = []
    for n in range(a.rows + 1):
        t = exterior_power(a, n)
        mats.append(IntMatrix.identity(t.rows) - eps * t)
    return _degree_terms(mats)


def _b_terms(a: IntMatrix) -> list[DegreeTerm]:
    mats = []
    for n in range(a.rows + 1):
        b = b_matrix(a, n)
        mats.append(IntMatrix.identity(b.rows) - b)
    return _degree_terms(mats)


def _parity_sum(terms: Sequence[DegreeTerm], parity: int) -> FinAbGroup:
    return direct_sum(t.cokernel for t in terms if t.n % 2 == parity)


def k_groups(a: IntMatrix) -> KTheoryReport:
    """K_0 and K_1 from the cokernels of 1 - eps*A_n."""
    report = _certified(a)
    d, eps = a.rows, report.det_sign
    terms = _a_terms(a, eps)
    z = FinAbGroup(free_rank=1)
    even, odd = _parity_sum(terms, 0), _parity_sum(terms, 1)
    extra = None
    if d % 2 == 0:
        k0, k1 = even, odd
        if eps > 0:
            k1, extra = k1 + z, "K1"
    else:
        k0, k1 = odd, even
        if eps > 0:
            k0, extra = k0 + z, "K0"
    return KTheoryReport(d, report.det, eps, tuple(terms), k0, k1, "A", extra, report)


def k_groups_via_b(a: IntMatrix) -> KTheoryReport:
    """K_0 and K_1 from the cokernels of 1 - B_n."""
    report = _certified(a)
    d, eps = a.rows, report.det_sign
    terms = _b_terms(a)
    k0, k1 = _parity_sum(terms, 0), _parity_sum(terms, 1)
    extra = None
    if eps > 0:
        if d % 2 == 0:
            k1, extra = k1 + FinAbGroup(free_rank=1), "K1"
        else:
            k0, extra = k0 + FinAbGroup(free_rank=1), "K0"
    return KTheoryReport(d, report.det, eps, tuple(terms), k0, k1, "B", extra, report)


def reports_agree(ra: KTheoryReport, rb: KTheoryReport) -> bool:
    """Total groups match and 1 - B_n pairs with 1 - eps*A_(d-n) in every degree."""
    if not (groups_isomorphic(ra.k0, rb.k0) and groups_isomorphic(ra.k1, rb.k1)):
        return False
    d = ra.dimension
    return all(rb.per_degree[n].invariant_factors == ra.per_degree[d - n].invariant_factors
               for n in range(d + 1))


def cross_check(a: IntMatrix) -> bool:
    return reports_agree(k_groups(a), k_groups_via_b(a))
