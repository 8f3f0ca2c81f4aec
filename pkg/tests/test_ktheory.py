from fractions import Fraction

import pytest

from dilation_ktheory import (
    DimensionError,
    FinAbGroup,
    IntMatrix,
    IntPolynomial,
    NotADilationError,
    bezout_witness,
    cokernel,
    cokernel_table,
    cross_check,
    det,
    exterior_power,
    gamma_group,
    gamma_membership,
    group_algebra_k,
    groups_isomorphic,
    invariant_factors,
    k_groups,
    k_groups_via_b,
    stabilization_check,
    tau_action,
)
from dilation_ktheory.ktheory import rational_inverse, reports_agree

from oracles import random_dilation, random_unimodular, seeded, unimodular_inverse

M = IntMatrix.from_rows
TWO_ID = 2 * IntMatrix.identity(2)
SWAP2 = M([[0, 1], [2, 0]])
ROT = M([[1, 1], [-1, 1]])

Z = FinAbGroup(1)
TRIVIAL = FinAbGroup()


def cyc(*t):
    return FinAbGroup(0, t)


def test_gamma_group_examples():
    g = gamma_group(SWAP2, 0)
    assert (g.rank, g.transition) == (1, M([[1]]))
    g = gamma_group(TWO_ID, 2)
    assert (g.rank, g.transition) == (1, M([[4]]))
    g = gamma_group(SWAP2, 1)
    assert (g.rank, g.transition) == (2, SWAP2)


def test_gamma_group_requires_dilation():
    with pytest.raises(NotADilationError) as info:
        gamma_group(M([[2, 1], [1, 1]]), 1)
    assert info.value.report.is_dilation is False


def test_gamma_membership_examples():
    g = gamma_group(M([[2]]), 1)
    assert gamma_membership(g, [5]) == (0, [5])
    assert gamma_membership(g, [Fraction(3, 4)]) == (2, [3])
    assert gamma_membership(g, [Fraction(1, 3)], level_cap=8) is None
    with pytest.raises(DimensionError):
        gamma_membership(g, [1, 2])


def test_gamma_membership_round_trip():
    # v = A^-r w lands back on w at level <= r
    g = gamma_group(SWAP2, 1)
    inv = tau_action(SWAP2, 1)
    w = [3, 5]
    v = [Fraction(x) for x in w]
    for _ in range(3):
        v = [sum(a * b for a, b in zip(row, v)) for row in inv]
    r, got = gamma_membership(g, v)
    assert r <= 3
    back = [Fraction(x) for x in got]
    for _ in range(r):
        back = [sum(a * b for a, b in zip(row, back)) for row in inv]
    assert back == v


def test_group_algebra_k_examples():
    even, odd = group_algebra_k(M([[2]]))
    assert [g.transition for g in even] == [M([[1]])]
    assert [g.transition for g in odd] == [M([[2]])]
    even, odd = group_algebra_k(TWO_ID)
    assert [g.degree for g in even] == [0, 2] and [g.degree for g in odd] == [1]
    a = random_dilation(seeded(0), 4)
    even, odd = group_algebra_k(a)
    assert len(even) + len(odd) == 5


def test_tau_action_examples():
    assert tau_action(SWAP2, 0) == [[Fraction(1)]]
    assert tau_action(TWO_ID, 2) == [[Fraction(1, 4)]]
    assert tau_action(SWAP2, 1) == [[0, Fraction(1, 2)], [1, 0]]


def test_rational_inverse_is_inverse():
    a = random_dilation(seeded(1), 3)
    inv = rational_inverse(a)
    rows = a.to_rows()
    prod = [[sum(rows[i][k] * inv[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == [[int(i == j) for j in range(3)] for i in range(3)]


def test_bezout_witness_examples():
    assert bezout_witness(TWO_ID, 1, 0) == IntPolynomial()
    assert bezout_witness(TWO_ID, 1, 1) == IntPolynomial((1,))
    assert bezout_witness(TWO_ID, 1, 3) == IntPolynomial((1, 1, 1))


def test_bezout_witness_both_signs():
    a = random_dilation(seeded(2), 3)
    for n in range(4):
        for r in range(6):
            bezout_witness(a, n, r, eps=1)
            bezout_witness(a, n, r, eps=-1)


def test_stabilization_examples():
    assert stabilization_check(M([[2]]), 1, 1)
    assert stabilization_check(TWO_ID, 2, 1)
    assert stabilization_check(M([[-2]]), 1, -1)


def test_cokernel_table_examples():
    assert cokernel_table(TWO_ID, 1) == [(0, Z), (1, TRIVIAL), (2, cyc(3))]
    assert cokernel_table(SWAP2, -1) == [(0, cyc(2)), (1, TRIVIAL), (2, TRIVIAL)]
    assert cokernel_table(M([[2]]), 1) == [(0, Z), (1, TRIVIAL)]


@pytest.mark.parametrize("a, k0, k1, extra", [
    (M([[2]]), Z, Z, "K0"),
    (TWO_ID, FinAbGroup(1, (3,)), Z, "K1"),
    (SWAP2, cyc(2), TRIVIAL, None),
    (ROT, Z, Z, "K1"),
    (M([[-2]]), TRIVIAL, cyc(2), None),
])
def test_k_groups_examples(a, k0, k1, extra):
    ra = k_groups(a)
    assert (ra.k0, ra.k1) == (k0, k1)
    assert ra.extra_free_summand_location == extra
    assert ra.presentation == "A"
    assert [t.n for t in ra.per_degree] == list(range(a.rows + 1))
    rb = k_groups_via_b(a)
    assert (rb.k0, rb.k1) == (k0, k1)
    assert rb.presentation == "B"
    assert cross_check(a)


def test_k_groups_three_dimensional_scalar():
    # A = 2*Id_3, eps = +1, d odd: K0 = coker(1-2I) + coker(1-8) + Z, K1 = coker(0) + coker(1-4I)
    a = 2 * IntMatrix.identity(3)
    ra = k_groups(a)
    assert ra.k0 == FinAbGroup(1, (7,))
    assert ra.k1 == FinAbGroup(1, (3, 3, 3))
    assert cross_check(a)


def test_k_groups_rejects_non_dilation():
    with pytest.raises(NotADilationError):
        k_groups(M([[1, 0], [0, 2]]))
    with pytest.raises(NotADilationError):
        k_groups_via_b(M([[1, 2], [2, 4]]))


def test_degree_zero_bookkeeping():
    rng = seeded(3)
    for _ in range(10):
        a = random_dilation(rng, rng.randint(1, 4))
        ra = k_groups(a)
        zero = ra.per_degree[0].cokernel
        assert zero == (Z if ra.eps == 1 else cyc(2))


def test_theorem_consistency_random_suite():
    rng = seeded(4)
    for _ in range(25):
        a = random_dilation(rng, rng.randint(1, 4))
        ra, rb = k_groups(a), k_groups_via_b(a)
        assert reports_agree(ra, rb)
        for n in range(a.rows + 1):
            assert stabilization_check(a, n, ra.eps)


def test_cokernel_transfer_to_inverse_form():
    # coker(1 - eps A_n) and coker(eps A_n - 1) share invariant factors
    rng = seeded(5)
    for _ in range(15):
        a = random_dilation(rng, rng.randint(1, 4))
        eps = 1 if det(a) > 0 else -1
        for n in range(1, a.rows + 1):
            t = exterior_power(a, n)
            ident = IntMatrix.identity(t.rows)
            lhs = ident - eps * t
            assert invariant_factors(lhs) == invariant_factors(eps * t - ident)
            assert cokernel(lhs).torsion_order == abs(det(lhs))


def test_k_groups_invariant_under_conjugation():
    rng = seeded(6)
    for _ in range(15):
        d = rng.randint(1, 4)
        a = random_dilation(rng, d)
        p = random_unimodular(rng, d)
        b = p @ a @ unimodular_inverse(p)
        ra, rb = k_groups(a), k_groups(b)
        assert groups_isomorphic(ra.k0, rb.k0) and groups_isomorphic(ra.k1, rb.k1)
