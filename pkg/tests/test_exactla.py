import numpy as np
import pytest
from hypothesis import given, strategies as st

from coringlab.exactla import (GF, QQ, apply_block, parse_scalar,
                               quotient_matrices)

import oracles

FIELDS = [GF(2), GF(3), GF(7), QQ]


def small_matrix(max_rows=5, max_cols=5, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
@given(rows=small_matrix())
def test_rank_matches_reference_elimination(F, rows):
    p = getattr(F, "p", None)
    assert F.rank(F.array(rows)) == oracles.rank(rows, p)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
@given(rows=small_matrix())
def test_kernel_is_complement_of_rank(F, rows):
    A = F.array(rows)
    N = F.kernel(A)
    assert N.shape[1] + F.rank(A) == A.shape[1]
    assert F.is_zero(F.dot(A, N))
    assert F.rank(N) == N.shape[1]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
@given(rows=small_matrix(), coeffs=st.lists(st.integers(-2, 2), min_size=5, max_size=5))
def test_solve_recovers_consistent_systems(F, rows, coeffs):
    A = F.array(rows)
    x0 = F.array(coeffs[:A.shape[1]])
    b = F.dot(A, x0)
    x = F.solve(A, b)
    assert x is not None and F.equal(F.dot(A, x), b)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
@given(rows=small_matrix())
def test_rref_is_idempotent(F, rows):
    A = F.array(rows)
    first = F.rref(A)
    second = F.rref(first.matrix)
    assert F.equal(first.matrix, second.matrix)
    assert first.pivots == second.pivots and first.rank == F.rank(A)


@given(n=st.integers(1, 4), seed=st.integers(0, 10 ** 6))
def test_inverse_over_rationals(n, seed):
    rng = np.random.default_rng(seed)
    A = QQ.array(rng.integers(-3, 4, size=(n, n)).tolist())
    if QQ.rank(A) < n:
        return
    assert QQ.equal(QQ.dot(QQ.inverse(A), A), QQ.eye(n))


def test_rational_products_with_fractions():
    A = QQ.array([["1/2", "1/3"], ["-2/5", "7"]])
    B = QQ.array([["3", "0"], ["1/7", "-1"]])
    expected = [[QQ("3/2") + QQ("1/21"), QQ("-1/3")], [QQ("-6/5") + QQ(1), QQ(-7)]]
    assert QQ.equal(QQ.dot(A, B), QQ.array(expected))


def test_parse_scalar_forms():
    assert parse_scalar("3/2") == QQ("3/2")
    assert GF(5).coerce("1/2") == 3
    assert GF(2).coerce("1 mod 2") == 1
    with pytest.raises(TypeError):
        GF(3).coerce("1 mod 2")
    with pytest.raises(TypeError):
        QQ.coerce("1 mod 2")
    with pytest.raises(ValueError):
        parse_scalar("one half")


@given(d1=st.integers(1, 3), d2=st.integers(1, 3), d3=st.integers(1, 3), seed=st.integers(0, 999))
def test_apply_block_equals_kron(d1, d2, d3, seed):
    F = GF(5)
    rng = np.random.default_rng(seed)
    A = F.array(rng.integers(0, 5, size=(2, d2)).tolist())
    X = F.eye(d1 * d2 * d3)
    Z, dims = apply_block(F, X, [d1, d2, d3], 1, 2, A)
    assert dims == [d1, 2, d3]
    assert F.equal(Z, F.kron(F.kron(F.eye(d1), A), F.eye(d3)))


def test_apply_block_handles_empty_factors():
    F = QQ
    Z, dims = apply_block(F, F.zeros(0, 3), [2, 0], 1, 2, F.zeros(0, 0))
    assert Z.shape == (0, 3) and dims == [2, 0]


def test_quotient_section_splits_projection():
    F = GF(3)
    rel = F.array([[1, 1, 0, 0], [0, 0, 1, 2]])
    proj, sec = quotient_matrices(F, rel, 4)
    assert proj.shape == (2, 4)
    assert F.equal(F.dot(proj, sec), F.eye(2))
    assert F.is_zero(F.dot(proj, rel.T))


def test_format_array_aligns_entries():
    assert QQ.format_array(QQ.array([["1/2", "-3"], ["0", "7"]])) == "[1/2  -3]\n[  0   7]"
    assert GF(5).format_array(GF(5).array([1, 4])) == "[1 4]"
