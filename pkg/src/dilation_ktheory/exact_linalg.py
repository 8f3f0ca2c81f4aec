"""Exact integer linear algebra: matrices, determinants, Smith normal form,
and finitely generated abelian groups.

Everything is Python ``int`` so nothing overflows; matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major matrix of arbitrary-precision integers."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, k: int) -> IntMatrix:
        return cls(k, k, tuple(int(i == j) for i in range(k) for j in range(k)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> IntMatrix:
        k = len(values)
        return cls(k, k, tuple(values[i] if i == j else 0 for i in range(k) for j in range(k)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j]
                               for j in range(self.cols) for i in range(self.rows)))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> IntMatrix:
        c = self.cols
        e = self.entries
        return IntMatrix(len(row_idx), len(col_idx),
                         tuple(e[i * c + j] for i in row_idx for j in col_idx))

    def trace(self) -> int:
        _require_square(self)
        return sum(self.entries[i * self.cols + i] for i in range(self.rows))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        b_cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(x * y for x, y in zip(r, col)) for col in b_cols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return IntMatrix(self.rows, self.cols,
                         tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __rmul__(self, scalar: int) -> IntMatrix:
        if not isinstance(scalar, int):
            return NotImplemented
        return IntMatrix(self.rows, self.cols, tuple(scalar * x for x in self.entries))

    def apply(self, vector: Sequence) -> list:
        """Matrix-vector product; works for any numeric entry type in ``vector``."""
        if len(vector) != self.cols:
            raise DimensionError(f"vector of length {len(vector)} for {self.shape} matrix")
        return [sum(x * v for x, v in zip(self.row(i), vector)) for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


def _require_square(m: IntMatrix) -> None:
    if not m.is_square:
        raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    _require_square(m)
    return bareiss_det(m.to_rows())


def bareiss_det(a: list[list[int]]) -> int:
    """Bareiss determinant of a square list-of-rows; ``a`` is consumed."""
    return _bareiss(a)[0]


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Return (det, a nonzero-if-det-is (k-1)-minor); ``a`` is consumed.

    The second value is the last-but-one Bareiss pivot, i.e. the leading
    (k-1) x (k-1) minor of the row-permuted input (1 when k <= 1).
    """
    k = len(a)
    if k == 0:
        return 1, 1
    sign = 1
    prev = 1
    for t in range(k - 1):
        if a[t][t] == 0:
            for i in range(t + 1, k):
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0, 0
        p = a[t][t]
        rt = a[t]
        for i in range(t + 1, k):
            ri = a[i]
            q = ri[t]
            for j in range(t + 1, k):
                # exact division: Sylvester's identity
                ri[j] = (p * ri[j] - q * rt[j]) // prev
            ri[t] = 0
        prev = p
    return sign * a[k - 1][k - 1], prev


def is_unimodular(m: IntMatrix) -> bool:
    _require_square(m)
    return abs(det(m)) == 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``u @ m @ v == s`` with ``u``, ``v`` unimodular and ``s`` in Smith form."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    invariant_factors: tuple[int, ...]


def _min_nonzero(a: list[list[int]], t: int) -> tuple[int, int] | None:
    # row-major scan, first minimal entry wins
    best = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
                if best_abs == 1:
                    return best
    return best


def _smith_reduce(a: list[list[int]], ncols: int, u: list[list[int]],
                  v: list[list[int]]) -> list[int]:
    """Bring ``a`` to Smith form in place, recording row ops in ``u`` and column ops in ``v``.

    Returns the diagonal.
    """
    m = len(a)
    n = ncols
    steps = min(m, n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q, start):
        # row[dst] += q * row[src]
        rd, rs = a[dst], a[src]
        for j in range(start, n):
            if rs[j]:
                rd[j] += q * rs[j]
        ud, us = u[dst], u[src]
        for j in range(len(ud)):
            ud[j] += q * us[j]

    def add_col(dst, src, q, start):
        for i in range(start, m):
            r = a[i]
            if r[src]:
                r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(steps):
        pos = _min_nonzero(a, t)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            if i0 != t:
                swap_rows(t, i0)
            if j0 != t:
                swap_cols(t, j0)
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p), t)
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p), t)
            clean = (all(a[i][t] == 0 for i in range(t + 1, m))
                     and all(a[t][j] == 0 for j in range(t + 1, n)))
            if clean:
                bad = None
                for i in range(t + 1, m):
                    row = a[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1, t)
            pos = _min_nonzero(a, t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return [a[i][i] for i in range(steps)]


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular certificates ``u``, ``v``.

    Pivots on the smallest nonzero entry of the working submatrix.
    """
    a = m.to_rows()
    u = IntMatrix.identity(m.rows).to_rows()
    v = IntMatrix.identity(m.cols).to_rows()
    diag = _smith_reduce(a, m.cols, u, v)
    s = IntMatrix.from_rows(a, m.cols) if m.rows else IntMatrix.zeros(0, m.cols)
    return SmithDecomposition(
        u=IntMatrix.from_rows(u, m.rows) if m.rows else IntMatrix.zeros(0, 0),
        s=s,
        v=IntMatrix.from_rows(v, m.cols) if m.cols else IntMatrix.zeros(0, 0),
        invariant_factors=tuple(diag),
    )


def divisor_chain(orders: Iterable[int]) -> list[int]:
    """Rewrite cyclic orders (Z/o_1 + Z/o_2 + ...) as an invariant factor chain.

    Zeros stand for infinite cyclic summands and are put last.  Units are kept,
    so the output has the same length as the input.
    """
    orders = [abs(o) for o in orders]
    zeros = orders.count(0)
    fin = sorted(o for o in orders if o)
    for i in range(len(fin)):
        for j in range(i + 1, len(fin)):
            a, b = fin[i], fin[j]
            g = gcd(a, b)
            fin[i], fin[j] = g, a // g * b
    return fin + [0] * zeros


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


def _unit_pivot_step(a: list[list[int]], t: int, modulus: int) -> bool:
    """Clear row and column t using a pivot that is a unit mod ``modulus``.

    Over Z/modulus every invertible row or column operation preserves the
    cokernel, so one modular inverse replaces the gcd steps.  Returns False
    (leaving ``a`` untouched) when the working submatrix has no unit.
    """
    m = len(a)
    n = len(a[0])
    pos = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            if row[j] and gcd(row[j], modulus) == 1:
                pos = (i, j)
                break
        if pos:
            break
    if pos is None:
        return False
    i0, j0 = pos
    a[t], a[i0] = a[i0], a[t]
    if j0 != t:
        for r in a:
            r[t], r[j0] = r[j0], r[t]
    rt = a[t]
    inv = pow(rt[t], -1, modulus)
    # scale the pivot row to make the pivot 1
    tail = [x * inv % modulus for x in rt[t + 1:]]
    for i in range(t + 1, m):
        ri = a[i]
        q = ri[t]
        if q:
            for j, x in enumerate(tail, start=t + 1):
                if x:
                    ri[j] = (ri[j] - q * x) % modulus
            ri[t] = 0
    # with column t cleared below the pivot, column ops only touch row t
    rt[t] = 1
    for j in range(t + 1, n):
        rt[j] = 0
    return True


def _diagonalize(a: list[list[int]], modulus: int = 0) -> list[int]:
    """Reduce ``a`` in place to a diagonal matrix with the same cokernel.

    Uses extended-gcd row and column combinations; the diagonal is *not*
    put into divisor-chain order.  With ``modulus`` > 0 entries are kept
    reduced mod it (valid when the modulus annihilates the cokernel).
    """
    m = len(a)
    n = len(a[0]) if a else 0
    diag = []

    def red(x):
        return x % modulus if modulus else x

    for t in range(min(m, n)):
        if modulus and _unit_pivot_step(a, t, modulus):
            diag.append(1)
            continue
        piv = next((i for i in range(t, m) if a[i][t]), None)
        if piv is None:
            # column empty: bring in any nonzero column
            j = next((j for j in range(t + 1, n) if any(a[i][j] for i in range(t, m))), None)
            if j is None:
                diag.extend([0] * (min(m, n) - t))
                break
            for r in a:
                r[t], r[j] = r[j], r[t]
            piv = next(i for i in range(t, m) if a[i][t])
        a[t], a[piv] = a[piv], a[t]
        while True:
            rt = a[t]
            for i in range(t + 1, m):
                ri = a[i]
                b = ri[t]
                if not b:
                    continue
                p = rt[t]
                if b % p == 0:
                    q = b // p
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] = red(ri[j] - q * rt[j])
                else:
                    g, x, y = xgcd(p, b)
                    pg, bg = p // g, b // g
                    for j in range(t, n):
                        u, w = rt[j], ri[j]
                        rt[j] = red(x * u + y * w)
                        ri[j] = red(pg * w - bg * u)
            p = rt[t]
            if all(rt[j] % p == 0 for j in range(t + 1, n)):
                for j in range(t + 1, n):
                    rt[j] = 0
                break
            for j in range(t + 1, n):
                b = rt[j]
                if not b:
                    continue
                p = rt[t]
                if b % p == 0:
                    q = b // p
                    for i in range(t, m):
                        r = a[i]
                        if r[t]:
                            r[j] = red(r[j] - q * r[t])
                else:
                    g, x, y = xgcd(p, b)
                    pg, bg = p // g, b // g
                    for i in range(t, m):
                        r = a[i]
                        u, w = r[t], r[j]
                        r[t] = red(x * u + y * w)
                        r[j] = red(pg * w - bg * u)
            if all(a[i][t] == 0 for i in range(t + 1, m)):
                break
        diag.append(a[t][t])
    return diag


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Smith invariant factors of ``m`` (length ``min(rows, cols)``).

    Agrees with :func:`smith_normal_form` but skips the certificates.  For a
    square nonsingular ``m`` with determinant D, Bareiss also yields a
    (k-1)-minor; s_(k-1) divides N = gcd(D, minor), so reducing modulo N gives
    s_1 .. s_(k-1) exactly and s_k = D / (s_1 ... s_(k-1)).  N is usually tiny.
    """
    k = min(m.rows, m.cols)
    if k == 0:
        return ()
    if m.is_square:
        d, minor = _bareiss(m.to_rows())
        d = abs(d)
        if d:
            if k == 1:
                return (d,)
            n = gcd(d, minor)
            if n == 1:
                return (1,) * (k - 1) + (d,)
            a = [[x % n for x in row] for row in m.to_rows()]
            chain = divisor_chain(gcd(x, n) for x in _diagonalize(a, n))
            head = chain[:-1]
            rest = d
            for x in head:
                rest //= x
            return tuple(head) + (rest,)
    return tuple(divisor_chain(_diagonalize(m.to_rows())))


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free_rank + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... and every t_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion coefficient {t} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisor chain")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> FinAbGroup:
        """Canonical form of a direct sum of cyclic groups; 0 means Z, 1 is dropped."""
        chain = divisor_chain(orders)
        return cls(free_rank=chain.count(0), torsion=tuple(t for t in chain if t > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def torsion_order(self) -> int:
        o = 1
        for t in self.torsion:
            o *= t
        return o

    def __add__(self, other: FinAbGroup) -> FinAbGroup:
        if not isinstance(other, FinAbGroup):
            return NotImplemented
        return FinAbGroup.from_orders(
            [0] * (self.free_rank + other.free_rank) + list(self.torsion) + list(other.torsion)
        )

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " (+) ".join(parts) if parts else "0"


def direct_sum(groups: Iterable[FinAbGroup]) -> FinAbGroup:
    total = FinAbGroup()
    for g in groups:
        total = total + g
    return total


def cokernel(m: IntMatrix) -> FinAbGroup:
    """Z^k / m(Z^k) for a square ``m``."""
    _require_square(m)
    return FinAbGroup.from_orders(invariant_factors(m))


def groups_isomorphic(g: FinAbGroup, h: FinAbGroup) -> bool:
    return g.free_rank == h.free_rank and g.torsion == h.torsion


def in_image(m: IntMatrix, x: Sequence[int], snf: SmithDecomposition | None = None) -> bool:
    """Whether the integer vector ``x`` lies in the column lattice of ``m``."""
    if len(x) != m.rows:
        raise DimensionError(f"vector of length {len(x)} for {m.shape} matrix")
    if snf is None:
        snf = smith_normal_form(m)
    y = snf.u.apply(x)
    # m y' = x  <=>  s (v^-1 y') = u x
    for i, yi in enumerate(y):
        si = snf.invariant_factors[i] if i < len(snf.invariant_factors) else 0
        if si == 0:
            if yi != 0:
                return False
        elif yi % si:
            return False
    return True
