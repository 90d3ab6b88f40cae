import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_mubs.gf2 import (
    DimensionError,
    Gf2Matrix,
    Gf2Poly,
    IndexNotFoundError,
    SingularMatrixError,
    char_poly,
    fibonacci_index,
    fibonacci_poly,
    in_polynomial_span,
    mat_inverse,
    monic_polys,
    nullspace,
    poly_eval_at_matrix,
    semigroup_a_condition,
)

from conftest import gf2_matrices

X = Gf2Poly.x()
ONE = Gf2Poly.one()


# -- oracles --------------------------------------------------------------

def det_poly_laplace(entries):
    """Determinant of a square matrix of Gf2Poly entries by cofactor expansion."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    total = Gf2Poly(0)
    for j in range(n):
        if entries[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        total = total + entries[0][j] * det_poly_laplace(minor)
    return total


def char_poly_oracle(m):
    n = m.nrows
    return det_poly_laplace(
        [[(X if i == j else Gf2Poly(0)) + (ONE if m[i, j] else Gf2Poly(0)) for j in range(n)] for i in range(n)]
    )


def span_rank(m):
    """Rank as log2 of the number of distinct row combinations."""
    rows = m.rows
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return len(span).bit_length() - 1


def fib_index_oracle(p, limit=200):
    for j in range(1, limit):
        if p.divides(fibonacci_poly(j)):
            return j
    return None


# -- matrices -------------------------------------------------------------

def test_from_list_roundtrip_and_access():
    m = Gf2Matrix.from_list([[1, 0, 1], [0, 1, 1]])
    assert m.shape == (2, 3)
    assert m[0, 2] == 1 and m[1, 0] == 0
    assert m.row(1) == (0, 1, 1)
    assert m.column(2) == (1, 1)
    assert m.to_list() == [[1, 0, 1], [0, 1, 1]]
    assert np.array_equal(m.to_array(), np.array([[1, 0, 1], [0, 1, 1]]))
    assert Gf2Matrix.from_array(m.to_array()) == m


def test_from_list_rejects_ragged_and_non_binary():
    with pytest.raises((DimensionError, ValueError)):
        Gf2Matrix.from_list([[1, 0], [1]])
    with pytest.raises(ValueError):
        Gf2Matrix.from_list([[2, 0], [0, 1]])


def test_matmul_matches_integer_product_mod_2():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = rng.integers(0, 2, (4, 5))
        b = rng.integers(0, 2, (5, 3))
        got = Gf2Matrix.from_array(a) @ Gf2Matrix.from_array(b)
        assert np.array_equal(got.to_array(), (a @ b) % 2)


def test_matmul_vector_returns_tuple():
    m = Gf2Matrix.from_list([[1, 1], [0, 1]])
    assert m @ (1, 1) == (0, 1)


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        Gf2Matrix.identity(2) @ Gf2Matrix.identity(3)
    with pytest.raises(DimensionError):
        Gf2Matrix.identity(2) + Gf2Matrix.identity(3)


def test_block_and_stacks():
    i2, z2 = Gf2Matrix.identity(2), Gf2Matrix.zeros(2)
    j = Gf2Matrix.block([[z2, i2], [i2, z2]])
    assert j.to_list() == [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    assert Gf2Matrix.vstack([i2, z2]).shape == (4, 2)
    assert Gf2Matrix.hstack([i2, z2]).shape == (2, 4)
    assert j.submatrix(0, 2, 2, 4) == i2


def test_singular_inverse_reports_rank():
    with pytest.raises(SingularMatrixError) as info:
        mat_inverse(Gf2Matrix.from_list([[1, 1], [1, 1]]))
    assert info.value.rank == 1


def test_json_roundtrip_both_forms():
    m = Gf2Matrix.from_list([[0, 1], [1, 1]])
    assert Gf2Matrix.from_json(json.loads(json.dumps(m.to_json()))) == m
    assert Gf2Matrix.from_json([[0, 1], [1, 1]]) == m


@given(gf2_matrices(max_n=6))
def test_rank_matches_span_count(m):
    assert m.rank() == span_rank(m)


@given(gf2_matrices(max_n=6))
def test_inverse_is_two_sided(m):
    if m.is_invertible():
        inv = m.inverse()
        eye = Gf2Matrix.identity(m.nrows)
        assert m @ inv == eye and inv @ m == eye
    else:
        with pytest.raises(SingularMatrixError):
            m.inverse()


@given(gf2_matrices(max_n=6))
def test_nullspace_dimension_and_kernel(m):
    ns = nullspace(m)
    assert len(ns) == m.ncols - m.rank()
    for v in ns:
        bits = tuple((v >> j) & 1 for j in range(m.ncols))
        assert not any(m @ bits)


@given(gf2_matrices(max_n=5), gf2_matrices(max_n=5))
def test_transpose_reverses_products(a, b):
    if a.ncols == b.nrows:
        assert (a @ b).T == b.T @ a.T


@given(gf2_matrices(max_n=4), st.integers(0, 6))
def test_power_matches_repeated_product(m, k):
    acc = Gf2Matrix.identity(m.nrows)
    for _ in range(k):
        acc = acc @ m
    assert m ** k == acc


def test_permute_is_conjugation_by_permutation():
    m = Gf2Matrix.from_list([[1, 1, 0], [0, 0, 1], [1, 0, 0]])
    perm = (2, 0, 1)
    P = Gf2Matrix.from_list([[int(perm[j] == i) for j in range(3)] for i in range(3)])
    assert m.permute(perm) == P @ m @ P.T


# -- polynomials ----------------------------------------------------------

def test_poly_arithmetic():
    p = Gf2Poly.from_coeffs([1, 1, 0, 1])  # 1 + x + x^3
    assert p.degree == 3
    assert str(p) == "x^3 + x + 1"
    assert (p * p) == Gf2Poly.from_coeffs([1, 0, 1, 0, 0, 0, 1])  # Frobenius
    q, r = divmod(p * (X + ONE) + X, p)
    assert q == X + ONE and r == X
    assert Gf2Poly(0).degree is None


@given(st.integers(1, 2**12), st.integers(1, 2**8))
def test_divmod_identity(a, b):
    pa, pb = Gf2Poly(a), Gf2Poly(b)
    q, r = divmod(pa, pb)
    assert q * pb + r == pa
    assert r.is_zero() or r.degree < pb.degree


def test_fibonacci_polys_first_terms():
    # 0, 1, x, x^2 + 1, x^3, x^4 + x^2 + 1
    assert [fibonacci_poly(j).bits for j in range(6)] == [0, 1, 0b10, 0b101, 0b1000, 0b10101]


@given(st.integers(1, 60))
def test_fibonacci_recurrence(j):
    assert fibonacci_poly(j + 1) == X * fibonacci_poly(j) + fibonacci_poly(j - 1)


def test_fibonacci_index_of_full_cubic():
    assert fibonacci_index(Gf2Poly.from_coeffs([1, 1, 0, 1])) == 9


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5])
def test_fibonacci_index_matches_naive_divisibility(degree):
    for p in monic_polys(degree):
        naive = fib_index_oracle(p, limit=(1 << (degree + 2)) + 1)
        if naive is None:
            with pytest.raises(IndexNotFoundError):
                fibonacci_index(p)
        else:
            assert fibonacci_index(p) == naive


def test_fibonacci_index_rejects_constants():
    with pytest.raises(ValueError):
        fibonacci_index(ONE)


def test_monic_polys_count_and_degree():
    polys = list(monic_polys(3))
    assert len(polys) == 8 and all(p.degree == 3 for p in polys)


@settings(max_examples=60)
@given(gf2_matrices(max_n=6))
def test_char_poly_matches_laplace_expansion(m):
    assert char_poly(m) == char_poly_oracle(m)


@settings(max_examples=40)
@given(gf2_matrices(max_n=6))
def test_cayley_hamilton(m):
    assert poly_eval_at_matrix(char_poly(m), m).is_zero()


def test_poly_call_is_matrix_evaluation():
    b = Gf2Matrix.from_list([[1, 1, 1], [1, 1, 0], [1, 0, 0]])
    p = X * X + ONE
    assert p(b) == b @ b + Gf2Matrix.identity(3)


def test_polynomial_span():
    b = Gf2Matrix.from_list([[1, 1, 1], [1, 1, 0], [1, 0, 0]])
    assert in_polynomial_span(Gf2Matrix.identity(3), b)
    assert in_polynomial_span(b @ b, b)
    antidiag = Gf2Matrix.from_list([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert not in_polynomial_span(antidiag, b)


def test_semigroup_condition_oracle():
    """Compare against an explicit enumeration of q(B) R + D."""
    b = Gf2Matrix.from_list([[1, 1, 1], [1, 1, 0], [1, 0, 0]])
    r = b
    reachable = set()
    for coeffs in itertools.product((0, 1), repeat=3):
        q = Gf2Poly.from_coeffs(coeffs)(b) @ r
        for diag in itertools.product((0, 1), repeat=3):
            reachable.add(q + Gf2Matrix.diagonal(diag))
    for bits in range(1 << 9):
        a = Gf2Matrix.from_list([[(bits >> (3 * i + j)) & 1 for j in range(3)] for i in range(3)])
        assert semigroup_a_condition(a, b, r) == (a not in reachable)
