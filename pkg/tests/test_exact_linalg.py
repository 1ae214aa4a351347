"""Elimination over the p-local integers, checked against minor-gcd oracles."""

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rostcalc.exact_linalg import (
    ExactLinalgError,
    FpPolyMatrix,
    PLocalMatrix,
    det_int,
    fp_divmod,
    fp_from_string,
    fp_mul,
    is_prime,
    kernel_basis,
    laurent_normalize,
    membership,
    pvaluation,
    snf_fp_poly,
    snf_p_local,
    unit_part,
)

PRIMES = (2, 3, 5)


def minor_valuations(rows, p):
    """Expected SNF valuations via gcds of k-by-k minors (the classical oracle)."""
    nr, nc = len(rows), len(rows[0]) if rows else 0
    vals = []
    prev = 0
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rset in itertools.combinations(range(nr), k):
            for cset in itertools.combinations(range(nc), k):
                sub = [[rows[i][j] for j in cset] for i in rset]
                g = math.gcd(g, det_int(sub))
        if g == 0:
            break
        v = pvaluation(g, p)
        vals.append(v - prev)
        prev = v
    return tuple(vals)


def random_matrix(rng, max_dim=5, lo=-9, hi=9):
    nr = rng.randint(1, max_dim)
    nc = rng.randint(1, max_dim)
    return [[rng.randint(lo, hi) for _ in range(nc)] for _ in range(nr)]


def test_pvaluation_and_units():
    assert pvaluation(24, 2) == 3
    assert pvaluation(24, 3) == 1
    assert unit_part(24, 2) == 3
    assert unit_part(-8, 2) == -1
    with pytest.raises(ExactLinalgError):
        pvaluation(0, 2)


def test_is_prime_small():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_snf_known_example():
    M = PLocalMatrix.from_rows(2, [[2, 4], [6, 8]])
    res = snf_p_local(M)
    assert res.exponents == (1, 2)
    assert res.cokernel() == (0, (1, 2))


def test_snf_rectangular_and_zero():
    res = snf_p_local(PLocalMatrix.from_rows(3, [[0, 0], [0, 0], [0, 0]]))
    assert res.rank == 0
    assert res.cokernel() == (3, ())  # three generators, no relations
    res = snf_p_local(PLocalMatrix.from_rows(3, [[3, 0, 0]]))
    assert res.exponents == (1,)


def test_snf_units_are_invisible():
    # entries coprime to p act as units, so 7 is invertible 2-locally
    res = snf_p_local(PLocalMatrix.from_rows(2, [[7, 0], [0, 14]]))
    assert res.exponents == (0, 1)
    assert res.cokernel() == (0, (1,))


def test_snf_oracle_random_batch():
    rng = random.Random(20240823)
    checked = 0
    for _ in range(210):
        rows = random_matrix(rng)
        p = rng.choice(PRIMES)
        res = snf_p_local(PLocalMatrix.from_rows(p, rows))
        assert res.exponents == minor_valuations(rows, p), (rows, p)
        checked += 1
    assert checked >= 200


@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.randoms(use_true_random=False),
    st.sampled_from(PRIMES),
)
def test_snf_matches_minor_oracle(nr, nc, rng, p):
    rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
    res = snf_p_local(PLocalMatrix.from_rows(p, rows))
    assert res.exponents == minor_valuations(rows, p)


@given(st.randoms(use_true_random=False), st.sampled_from(PRIMES))
def test_snf_invariant_under_unimodular_rows(rng, p):
    rows = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
    before = snf_p_local(PLocalMatrix.from_rows(p, rows)).exponents
    # an elementary row operation keeps the module presented by the columns
    i, k = rng.sample(range(3), 2)
    c = rng.randint(-4, 4)
    rows[i] = [a + c * b for a, b in zip(rows[i], rows[k])]
    after = snf_p_local(PLocalMatrix.from_rows(p, rows)).exponents
    assert before == after


def test_membership_exact_solution():
    M = PLocalMatrix.from_rows(3, [[3, 0], [0, 9]])
    sol = membership(M, [6, 9])
    assert sol is not None
    # verify the certificate reconstructs b
    cols = [M.column(j) for j in range(2)]
    for i in range(2):
        assert sum(Fraction(cols[j][i]) * sol[j] for j in range(2)) == [6, 9][i]


def test_membership_p_local_denominators_allowed():
    # 2 generates the same 3-local module as 1 does
    M = PLocalMatrix.from_rows(3, [[2]])
    sol = membership(M, [1])
    assert sol == (Fraction(1, 2),)


def test_membership_failure():
    M = PLocalMatrix.from_rows(3, [[3]])
    assert membership(M, [1]) is None
    assert membership(M, [3]) is not None


@given(st.randoms(use_true_random=False), st.sampled_from(PRIMES))
def test_membership_of_column_combinations(rng, p):
    rows = [[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)]
    M = PLocalMatrix.from_rows(p, rows)
    coeffs = [rng.randint(-3, 3) for _ in range(3)]
    b = [sum(rows[i][j] * coeffs[j] for j in range(3)) for i in range(3)]
    sol = membership(M, b)
    assert sol is not None
    for i in range(3):
        assert sum(Fraction(rows[i][j]) * sol[j] for j in range(3)) == b[i]


def test_kernel_basis_annihilates():
    M = PLocalMatrix.from_rows(2, [[1, 2, 3], [2, 4, 6]])
    basis = kernel_basis(M)
    assert basis  # rank 1, so a 2-dimensional kernel
    for vec in basis:
        for i in range(2):
            assert sum(M.entries[i][j] * vec[j] for j in range(3)) == 0


def test_det_int():
    assert det_int([[2, 1], [1, 2]]) == 3
    assert det_int([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


# --- polynomial matrices over F_p -----------------------------------------


def test_fp_poly_parsing_and_arithmetic():
    a = fp_from_string("v^2+1", 2)
    assert a == (1, 0, 1)
    assert fp_mul(a, (1, 1), 2) == (1, 1, 1, 1)
    q, r = fp_divmod((1, 0, 1), (1, 1), 2)
    assert r == ()  # v^2+1 = (v+1)^2 over F_2
    assert q == (1, 1)
    _, r = fp_divmod((1, 0, 1), (1, 1), 3)
    assert r == (2,)  # irreducible over F_3, so a nonzero remainder


def test_fp_poly_snf_example():
    M = FpPolyMatrix.from_rows(2, [[(0, 1), (1,)], [(), (0, 1)]])
    assert snf_fp_poly(M) == ((1,), (0, 0, 1))  # diag(1, v^2)


def test_fp_poly_snf_diagonal_reorder():
    M = FpPolyMatrix.from_rows(3, [[(0, 0, 1), ()], [(), (0, 1)]])
    assert snf_fp_poly(M) == ((0, 1), (0, 0, 1))


def test_laurent_powers_of_v_are_units():
    assert laurent_normalize((0, 0, 1), 5) == (1,)
    M = FpPolyMatrix.from_rows(2, [[(0, 1)]], laurent=True)
    assert snf_fp_poly(M) == ((1,),)
