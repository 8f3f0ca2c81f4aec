"""Matrices induced on exterior powers of Z^d.

Basis vectors of the degree-n exterior power are indexed by strictly
increasing n-subsets of {1, ..., d}, always in lexicographic order, so every
matrix built here lives in the same coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import DimensionError, DomainError, SingularMatrixError
from .exact_linalg import IntMatrix, bareiss_det, det

Subset = tuple[int, ...]


@dataclass(frozen=True)
class SubsetBasis:
    d: int
    n: int
    subsets: tuple[Subset, ...]

    def __len__(self) -> int:
        return len(self.subsets)

    def index(self, subset: Subset) -> int:
        return self.subsets.index(tuple(subset))


def _check_degree(d: int, n: int) -> None:
    if d < 0 or not 0 <= n <= d:
        raise DomainError(f"degree {n} out of range for dimension {d}")


def subset_basis(d: int, n: int) -> SubsetBasis:
    """All n-subsets of {1..d}, 1-based, in lexicographic order."""
    _check_degree(d, n)
    return SubsetBasis(d, n, tuple(combinations(range(1, d + 1), n)))


def complement(subset: Subset, d: int) -> Subset:
    s = set(subset)
    return tuple(i for i in range(1, d + 1) if i not in s)


def subset_sign(k_subset: Subset, d: int) -> int:
    """Sign of the permutation listing ``k_subset`` then its complement."""
    k = tuple(k_subset)
    if any(not 1 <= x <= d for x in k) or any(a >= b for a, b in zip(k, k[1:])):
        raise DomainError(f"{k!r} is not a strictly increasing subset of 1..{d}")
    # inversions come only from pairs (k_i, c) with c < k_i in the complement
    inversions = sum(x - 1 - i for i, x in enumerate(k))
    return -1 if inversions % 2 else 1


def _minor_matrix(a: IntMatrix, rows_of, cols_of, n: int) -> IntMatrix:
    # entry (J, K) is det of a restricted to rows_of(J), cols_of(K)
    basis = subset_basis(a.rows, n).subsets
    grid = a.to_rows()
    row_sets = [[x - 1 for x in rows_of(s)] for s in basis]
    col_sets = [[x - 1 for x in cols_of(s)] for s in basis]
    out = []
    for ri in row_sets:
        sub_rows = [grid[i] for i in ri]
        for cj in col_sets:
            out.append(bareiss_det([[r[j] for j in cj] for r in sub_rows]))
    m = len(basis)
    return IntMatrix(m, m, tuple(out))


def _check_square(a: IntMatrix, n: int) -> None:
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.rows}x{a.cols}")
    _check_degree(a.rows, n)


def exterior_power(a: IntMatrix, n: int) -> IntMatrix:
    """Compound matrix: entry (J, K) is the minor of ``a`` on rows J, columns K."""
    _check_square(a, n)
    if n == 0:
        return IntMatrix.identity(1)
    if n == 1:
        return a
    if n == a.rows:
        return IntMatrix(1, 1, (det(a),))
    return _minor_matrix(a, lambda s: s, lambda s: s, n)


def complement_matrix(a: IntMatrix, n: int) -> IntMatrix:
    """Entry (K, L) is the minor of ``a`` on the complementary rows K', columns L'."""
    _check_square(a, n)
    d = a.rows
    return _minor_matrix(a, lambda s: complement(s, d), lambda s: complement(s, d), n)


def sign_diagonal(d: int, n: int) -> IntMatrix:
    return IntMatrix.diagonal([subset_sign(s, d) for s in subset_basis(d, n).subsets])


def b_tilde_matrix(a: IntMatrix, n: int) -> IntMatrix:
    c = complement_matrix(a, n)
    signs = [subset_sign(s, a.rows) for s in subset_basis(a.rows, n).subsets]
    m = len(signs)
    return IntMatrix(m, m, tuple(signs[i] * signs[j] * c[i, j]
                                 for i in range(m) for j in range(m)))


def b_matrix(a: IntMatrix, n: int) -> IntMatrix:
    """sign(det a) times :func:`b_tilde_matrix`."""
    _check_square(a, n)
    dt = det(a)
    if dt == 0:
        raise SingularMatrixError("b_matrix needs a nonsingular matrix")
    bt = b_tilde_matrix(a, n)
    return bt if dt > 0 else -bt


def hodge_matrix(d: int, n: int) -> IntMatrix:
    """0/1 matrix sending e_I (degree n) to e_I' (degree d - n).

    Shape is binomial(d, d-n) x binomial(d, n); its inverse is its transpose.
    """
    _check_degree(d, n)
    src = subset_basis(d, n).subsets
    dst = subset_basis(d, d - n)
    rows, cols = comb(d, d - n), comb(d, n)
    out = [0] * (rows * cols)
    for j, s in enumerate(src):
        out[dst.index(complement(s, d)) * cols + j] = 1
    return IntMatrix(rows, cols, tuple(out))
