"""Exact certification that an integer matrix is expanding.

A matrix is an integer dilation matrix when every eigenvalue has modulus > 1.
The decision never touches floating point:

1. a zero determinant rejects outright;
2. a nonconstant gcd of the characteristic polynomial p and its reversal p*
   means some root pairs with its reciprocal (unit-circle roots included);
3. otherwise p* is mapped to a polynomial h in w by z = (w + 1)/(w - 1)
   and the Hurwitz determinants of h decide whether every root of p* lies
   in the open unit disk.

Approximate eigenvalues are attached to the report for display only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .errors import DimensionError, SingularMatrixError
from .exact_linalg import IntMatrix, _require_square, det


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree, trailing zeros stripped."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def reversed(self, degree: int | None = None) -> IntPolynomial:
        """z^degree * p(1/z); ``degree`` defaults to deg p."""
        if degree is None:
            degree = self.degree
        c = list(self.coefficients) + [0] * (degree + 1 - len(self.coefficients))
        return IntPolynomial(tuple(reversed(c)))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


class RejectionReason(str, enum.Enum):
    SINGULAR = "singular"
    RECIPROCAL_PAIR = "eigenvalue on unit circle or reciprocal pair"
    INSIDE_DISK = "eigenvalue inside disk"


@dataclass(frozen=True)
class DilationReport:
    is_dilation: bool
    det: int
    det_sign: int
    char_poly: IntPolynomial
    rejection_reason: RejectionReason | None = None
    # float approximations, for display only
    approx_eigenvalues: tuple[complex, ...] = field(default=(), compare=False)


def char_poly(a: IntMatrix) -> IntPolynomial:
    """det(z*I - a) by the Faddeev-LeVerrier recursion over the integers."""
    _require_square(a)
    d = a.rows
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    m = IntMatrix.zeros(d, d)
    ident = IntMatrix.identity(d)
    for k in range(1, d + 1):
        m = a @ m + coeffs[d - k + 1] * ident
        t = (a @ m).trace()
        # Newton's identities make this division exact
        assert t % k == 0
        coeffs[d - k] = -t // k
    return IntPolynomial(tuple(coeffs))


def det_sign(a: IntMatrix) -> int:
    dt = det(a)
    if dt == 0:
        raise SingularMatrixError("determinant is zero")
    return 1 if dt > 0 else -1


def _poly_gcd_degree(p: Sequence[int], q: Sequence[int]) -> int:
    """Degree of gcd(p, q) over Q; ascending coefficient lists, both nonzero."""
    a = [Fraction(x) for x in p]
    b = [Fraction(x) for x in q]
    while b:
        # a <- a mod b
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= f * c
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def mobius_transform(q: IntPolynomial, degree: int) -> IntPolynomial:
    """(w - 1)^degree * q((w + 1)/(w - 1)).

    Maps roots in the open unit disk to the open left half-plane.
    """
    out = [0] * (degree + 1)
    for k, c in enumerate(q.coefficients):
        if not c:
            continue
        # (w + 1)^k (w - 1)^(degree - k)
        plus = [comb(k, i) for i in range(k + 1)]
        minus = [comb(degree - k, i) * (-1) ** (degree - k - i) for i in range(degree - k + 1)]
        for i, x in enumerate(plus):
            for j, y in enumerate(minus):
                out[i + j] += c * x * y
    return IntPolynomial(tuple(out))


def hurwitz_minors(h: IntPolynomial) -> list[int]:
    """Leading principal minors of the Hurwitz matrix of ``h``.

    ``h`` is normalised to a positive leading coefficient first.
    """
    n = h.degree
    desc = list(reversed(h.coefficients))  # a_0 w^n + a_1 w^(n-1) + ...
    if desc[0] < 0:
        desc = [-x for x in desc]

    def coef(k):
        return desc[k] if 0 <= k <= n else 0

    hm = [[coef(2 * (j + 1) - (i + 1)) for j in range(n)] for i in range(n)]
    return [det(IntMatrix.from_rows([r[:k] for r in hm[:k]], k)) for k in range(1, n + 1)]


def is_hurwitz_stable(h: IntPolynomial) -> bool:
    """All roots in the open left half-plane (Hurwitz criterion)."""
    if h.degree < 1:
        return True
    return all(m > 0 for m in hurwitz_minors(h))


def approx_eigenvalues(p: IntPolynomial) -> tuple[complex, ...]:
    if p.degree < 1:
        return ()
    roots = np.roots([float(c) for c in reversed(p.coefficients)])
    return tuple(sorted((complex(r) for r in roots), key=lambda z: (-abs(z), z.real, z.imag)))


def certify_dilation(a: IntMatrix) -> DilationReport:
    _require_square(a)
    if a.rows == 0:
        raise DimensionError("empty matrix")
    p = char_poly(a)
    d = a.rows
    dt = det(a)
    sign = (dt > 0) - (dt < 0)
    approx = approx_eigenvalues(p)

    def reject(reason):
        return DilationReport(False, dt, sign, p, reason, approx)

    if dt == 0:
        return reject(RejectionReason.SINGULAR)
    p_rev = p.reversed(d)
    if _poly_gcd_degree(p.coefficients, p_rev.coefficients) > 0:
        return reject(RejectionReason.RECIPROCAL_PAIR)
    # p(1) != 0 here (1 is its own reciprocal), so the transform keeps degree d
    h = mobius_transform(p_rev, d)
    if not is_hurwitz_stable(h):
        return reject(RejectionReason.INSIDE_DISK)
    return DilationReport(True, dt, sign, p, None, approx)
