"""Brute-force cross-checks for the Z/m Smith machinery."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anomalab.linalg import (
    QuotientModM,
    SmithSolver,
    coker_mod,
    kernel_mod,
    row_echelon_mod,
    smith_mod,
    solve_once,
    span_members,
    xgcd,
)


def brute_kernel(A, m):
    r, c = A.shape
    out = set()
    for x in itertools.product(range(m), repeat=c):
        v = np.array(x, np.int64)
        if not ((A @ v) % m).any():
            out.add(x)
    return out


def brute_colspan(A, m):
    return span_members(np.mod(A, m), m)


small_matrix = st.tuples(
    st.integers(1, 4), st.integers(1, 4), st.integers(2, 12), st.integers(0, 10**6)
)


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g >= 0
    assert x * a + y * b == g
    if a or b:
        assert a % g == 0 and b % g == 0


def _random_matrix(r, c, m, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, m, size=(r, c), dtype=np.int64)


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_smith_transforms(params):
    r, c, m, seed = params
    A = _random_matrix(r, c, m, seed)
    S = smith_mod(A, m, want_u=True, want_uinv=True, want_v=True)
    D = (S.U @ A @ S.V) % m
    expect = np.zeros((r, c), np.int64)
    for i, d in enumerate(S.diag):
        expect[i, i] = d % m
    assert np.array_equal(D, expect)
    assert np.array_equal((S.U @ S.Uinv) % m, np.eye(r, dtype=np.int64))
    # divisibility chain, all dividing m
    for d in S.diag:
        assert m % d == 0
    for a, b in zip(S.diag, S.diag[1:]):
        assert b % a == 0


@settings(max_examples=40, deadline=None)
@given(small_matrix)
def test_kernel_matches_bruteforce(params):
    r, c, m, seed = params
    A = _random_matrix(r, c, m, seed)
    gens = kernel_mod(A, m)
    assert not ((A @ gens) % m).any()
    assert span_members(gens, m) == brute_kernel(A, m)


@settings(max_examples=40, deadline=None)
@given(small_matrix, st.integers(0, 10**6))
def test_solver_matches_bruteforce(params, bseed):
    r, c, m, seed = params
    A = _random_matrix(r, c, m, seed)
    b = _random_matrix(r, 1, m, bseed)[:, 0]
    solver = SmithSolver(A, m)
    x = solver.solve(b)
    solvable = any(
        np.array_equal((A @ np.array(v, np.int64)) % m, b)
        for v in itertools.product(range(m), repeat=c)
    )
    if x is None:
        assert not solvable
    else:
        assert np.array_equal((A @ x) % m, b)
    # the carry-based one-shot solver must agree on solvability
    x2 = solve_once(A, b, m)
    assert (x2 is None) == (x is None)
    if x2 is not None:
        assert np.array_equal((A @ x2) % m, b)


@settings(max_examples=40, deadline=None)
@given(small_matrix)
def test_coker_matches_bruteforce(params):
    r, c, m, seed = params
    A = _random_matrix(r, c, m, seed)
    Q = coker_mod(A, m)
    span = brute_colspan(A, m)
    assert Q.order * len(span) == m**r
    # basis columns have the stated orders and unit coordinates
    for j, f in enumerate(Q.factors):
        col = Q.basis[:, j]
        coords = Q.coordinates(col)
        assert coords[j] == 1
        assert all(v == 0 for i, v in enumerate(coords) if i != j)
        for k in range(1, f):
            assert tuple((k * col) % m) not in span
        assert tuple((f * col) % m) in span
    # columns of A are trivial in the quotient
    for j in range(c):
        assert Q.is_trivial(A[:, j])
    # coordinates are additive
    rng = np.random.default_rng(seed + 1)
    y1 = rng.integers(0, m, size=r, dtype=np.int64)
    y2 = rng.integers(0, m, size=r, dtype=np.int64)
    c1 = np.array(Q.coordinates(y1))
    c2 = np.array(Q.coordinates(y2))
    c12 = np.array(Q.coordinates((y1 + y2) % m))
    f = np.array(Q.factors, np.int64) if Q.factors else np.zeros(0, np.int64)
    assert np.array_equal(c12, (c1 + c2) % f) if Q.factors else True


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.integers(1, 6), st.integers(0, 10**6))
def test_echelon_preserves_rowspan(m, c, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, m, size=(rng.integers(1, 9), c), dtype=np.int64)
    E = row_echelon_mod([A], c, m)
    assert brute_colspan(A.T, m) == brute_colspan(E.T, m)


def test_echelon_chunked_large():
    m = 12
    rng = np.random.default_rng(7)
    A = rng.integers(0, m, size=(700, 40), dtype=np.int64)
    # make it rank deficient
    A[1::2] = (3 * A[::2]) % m
    chunks = [A[i : i + 128] for i in range(0, 700, 128)]
    E1 = row_echelon_mod(chunks, 40, m)
    E2 = row_echelon_mod([A], 40, m)
    # same span: every row of each reduces to zero against the other
    S1 = smith_mod(np.vstack([E1, E2]), m).diag
    S2 = smith_mod(E1, m).diag
    assert [d for d in S1 if d > 1] == [d for d in S2 if d > 1]
    ker1 = kernel_mod(E1, m)
    assert not ((E2 @ ker1) % m).any()


def test_degenerate_modulus_one():
    A = np.array([[1, 2], [3, 4]])
    assert kernel_mod(A, 1).shape == (2, 0)
    assert coker_mod(A, 1).factors == []


def test_zero_matrix():
    A = np.zeros((3, 2), np.int64)
    gens = kernel_mod(A, 6)
    assert len(span_members(gens, 6)) == 36
    Q = coker_mod(A, 6)
    assert Q.factors == [6, 6, 6]


@pytest.mark.parametrize("m", [2, 4, 6, 8, 9, 12])
def test_known_diagonal(m):
    A = np.diag([1, 2, 3])
    S = smith_mod(A, m, want_u=True, want_v=True)
    prod = 1
    for d in S.diag:
        prod *= d
    # |coker| * |image| = m^3
    span = brute_colspan(A, m)
    Q = coker_mod(A, m)
    assert Q.order == m**3 // len(span)
