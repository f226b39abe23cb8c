import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qinfoloc.zdlinalg import (
    ColumnOp,
    DegenerateInputError,
    RightSolver,
    ZdMatrix,
    count_homogeneous,
    ext_gcd,
    inv_mod,
    is_unit,
    matmul_mod,
    row_span,
    smith_normal_form,
    solve_right,
    unit_normalizer,
)


@st.composite
def zd_matrices(draw, max_rows=4, max_cols=4, moduli=(2, 3, 4, 5, 6, 8, 9, 10, 12)):
    D = draw(st.sampled_from(moduli))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    data = draw(st.lists(st.lists(st.integers(0, D - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return ZdMatrix(data, D)


def apply_column_ops(ops, size, D):
    w = np.eye(size, dtype=np.int64)
    for op in ops:
        if op.kind == "add":
            w[:, op.a] = (w[:, op.a] + op.factor * w[:, op.b]) % D
        elif op.kind == "swap":
            w[:, [op.a, op.b]] = w[:, [op.b, op.a]]
        else:
            w[:, op.a] = (w[:, op.a] * op.factor) % D
    return w


def brute_solutions(T, u):
    D = T.modulus
    sols = []
    for x in itertools.product(range(D), repeat=T.rows):
        if np.array_equal(matmul_mod(np.array([x]), T.data, D)[0], np.mod(u, D)):
            sols.append(x)
    return sols


# --- scalar helpers ---------------------------------------------------------


@pytest.mark.parametrize("a,b", [(12, 18), (0, 5), (7, 0), (35, 64), (1, 1)])
def test_ext_gcd_bezout(a, b):
    g, u, v = ext_gcd(a, b)
    assert g == math.gcd(a, b)
    assert u * a + v * b == g


def test_ext_gcd_rejects_zero_pair():
    with pytest.raises(DegenerateInputError):
        ext_gcd(0, 0)


@pytest.mark.parametrize("D", [2, 3, 4, 6, 9, 12])
def test_inverse_and_units_exhaustive(D):
    for a in range(D):
        assert is_unit(a, D) == (math.gcd(a, D) == 1)
        if is_unit(a, D):
            assert (a * inv_mod(a, D)) % D == 1
        else:
            with pytest.raises(ValueError):
                inv_mod(a, D)


@pytest.mark.parametrize("D", [2, 4, 6, 8, 12, 30])
def test_unit_normalizer_exhaustive(D):
    for a in range(D):
        g, u = unit_normalizer(a, D)
        assert is_unit(u, D)
        assert g == (D if a == 0 else math.gcd(a, D))
        assert (u * g) % D == a


def test_modulus_bounds():
    with pytest.raises(ValueError):
        ZdMatrix([[1]], 1)
    with pytest.raises(ValueError):
        ZdMatrix([[1]], 2**20)


def test_matmul_mod_large_modulus_no_overflow():
    D = 2**15
    a = np.full((1, 50), D - 1, dtype=np.int64)
    b = np.full((50, 1), D - 1, dtype=np.int64)
    assert matmul_mod(a, b, D)[0, 0] == (50 * (D - 1) ** 2) % D


# --- determinant --------------------------------------------------------------


@pytest.mark.parametrize("D", [4, 6])
def test_determinant_matches_leibniz_2x2_exhaustive(D):
    for a, b, c, d in itertools.product(range(D), repeat=4):
        M = ZdMatrix([[a, b], [c, d]], D)
        assert M.determinant() == (a * d - b * c) % D


@pytest.mark.parametrize("D", [4, 6])
def test_invertible_iff_inverse_exists_exhaustive(D):
    mats = [np.array(m).reshape(2, 2) for m in itertools.product(range(D), repeat=4)]
    eye = np.eye(2, dtype=np.int64)
    for m in mats:
        has_inverse = any(np.array_equal(matmul_mod(m, x, D), eye) for x in mats)
        assert ZdMatrix(m, D).is_invertible() == has_inverse


# --- Smith normal form ---------------------------------------------------------


def test_smith_golden_example():
    f = ZdMatrix([[4, 3, 3], [0, 3, 3]], 6)
    snf = smith_normal_form(f)
    assert snf.s.tolist() == [[2, 0, 0], [0, 3, 0]]
    assert snf.diag == (2, 3) and snf.rank == 2
    assert snf.column_ops == (ColumnOp("add", 2, 1, 5),)
    assert (snf.v @ f @ snf.w) == snf.s


@settings(max_examples=300, deadline=None)
@given(zd_matrices())
def test_smith_invariants(f):
    D = f.modulus
    snf = smith_normal_form(f)
    assert (snf.v @ f @ snf.w) == snf.s
    assert (snf.v @ snf.v_inv).is_identity() and (snf.v_inv @ snf.v).is_identity()
    assert (snf.w @ snf.w_inv).is_identity() and (snf.w_inv @ snf.w).is_identity()
    s = snf.s.data
    off = s.copy()
    np.fill_diagonal(off, 0)
    assert not off.any()
    assert all(D % d == 0 for d in snf.diag if d)
    assert all(d for d in snf.diag[: snf.rank]) and not any(snf.diag[snf.rank :])
    assert np.array_equal(apply_column_ops(snf.column_ops, f.cols, D), snf.w.data)


@settings(max_examples=200, deadline=None)
@given(zd_matrices(max_rows=3, max_cols=3, moduli=(2, 3, 4, 6)))
def test_smith_preserves_row_group_order(f):
    # |row span of f| = prod over nonzero diagonal entries of D / d
    D = f.modulus
    snf = smith_normal_form(f)
    size = len(row_span(f.tolist(), D))
    assert size == math.prod(D // d for d in snf.diag if d)
    # row operations keep the span; the column transform maps it onto the span of s
    span_fw = {tuple(int(v) for v in matmul_mod(np.array([r]), snf.w.data, D)[0]) for r in row_span(f.tolist(), D)}
    assert span_fw == row_span(snf.s.tolist(), D)


def test_smith_zero_matrix():
    snf = smith_normal_form(ZdMatrix.zeros(2, 3, 6))
    assert snf.rank == 0 and snf.diag == (0, 0) and snf.column_ops == ()


def test_smith_rejects_empty():
    with pytest.raises(ValueError):
        smith_normal_form(ZdMatrix(np.zeros((0, 3)), 4))


# --- linear systems -----------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(zd_matrices(max_rows=3, max_cols=3, moduli=(2, 3, 4, 6)), st.data())
def test_solver_matches_brute_force(T, data):
    D = T.modulus
    u = np.array(data.draw(st.lists(st.integers(0, D - 1), min_size=T.cols, max_size=T.cols)))
    sols = brute_solutions(T, u)
    result = solve_right(T, u)
    assert result.solvable == bool(sols)
    if sols:
        assert tuple(int(v) for v in result.particular) in set(sols)
        assert result.count == len(sols)
    assert count_homogeneous(T) == len(brute_solutions(T, np.zeros(T.cols, dtype=np.int64)))


@pytest.mark.parametrize("D", [4, 6])
def test_solvable_mask_over_all_right_hand_sides(D):
    T = ZdMatrix([[2, 0, 3], [0, 3, 1]], D)
    solver = RightSolver(T)
    rhs = np.array(list(itertools.product(range(D), repeat=3)))
    mask = solver.solvable_mask(rhs)
    reachable = {tuple(int(v) for v in matmul_mod(np.array([x]), T.data, D)[0])
                 for x in itertools.product(range(D), repeat=2)}
    assert {tuple(r) for r, ok in zip(rhs.tolist(), mask) if ok} == reachable


def test_solver_rejects_wrong_length():
    with pytest.raises(ValueError):
        solve_right(ZdMatrix([[1, 2]], 3), [1, 2, 3])


def test_row_span_cyclic():
    assert len(row_span([[2, 4]], 6)) == 3
    assert row_span([], 6) == set()
