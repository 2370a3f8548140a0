"""Batched exact arithmetic for matrices over Z[zeta_N].

Matrices of cyclotomic integers are stored as int64 arrays whose last
axis holds power-basis coefficients.  Products are contractions against
the ring's structure tensor; everything stays integral, and magnitude
bounds are asserted so int64 (and the float64 BLAS inside numpy) never
silently overflows.
"""

from fractions import Fraction

import numpy as np

from .cyclotomic import CycloNumber, galois_matrix, mult_tensor, lift_matrix, phi
from .errors import ConsistencyError

_SAFE = 2**61


def _maxabs(a: np.ndarray) -> int:
    return 0 if a.size == 0 else int(np.abs(a).max())


def check_room(*arrays, factor=1):
    bound = factor
    for a in arrays:
        bound *= max(_maxabs(a), 1)
    if bound >= _SAFE:
        raise ConsistencyError("int64 headroom exhausted in cyclotomic tensors")


def mat_mult(A: np.ndarray, B: np.ndarray, level: int) -> np.ndarray:
    """(A @ B) for matrices of cyclotomic integers; last axis = coefficients."""
    T = mult_tensor(level)
    d = phi(level)
    k = A.shape[1]
    check_room(A, B, T, factor=k * d * d)
    out = np.zeros((A.shape[0], B.shape[1], d), np.int64)
    for a in range(d):
        Aa = A[:, :, a]
        if not Aa.any():
            continue
        for b in range(d):
            Bb = B[:, :, b]
            if not Bb.any():
                continue
            row = T[a, b]
            prod = Aa @ Bb
            for c in range(d):
                if row[c]:
                    out[:, :, c] += int(row[c]) * prod
    return out


def pair_contract(XA: np.ndarray, XB: np.ndarray, level: int) -> np.ndarray:
    """S[m, n] = sum_p XA[m, p] * XB[n, p] over cyclotomic integers."""
    T = mult_tensor(level)
    d = phi(level)
    check_room(XA, XB, T, factor=XA.shape[1] * d * d)
    out = np.zeros((XA.shape[0], XB.shape[0], d), np.int64)
    for a in range(d):
        Aa = XA[:, :, a]
        if not Aa.any():
            continue
        for b in range(d):
            Bb = XB[:, :, b]
            if not Bb.any():
                continue
            row = T[a, b]
            prod = Aa @ Bb.T
            for c in range(d):
                if row[c]:
                    out[:, :, c] += int(row[c]) * prod
    return out


def entry_mult(A: np.ndarray, B: np.ndarray, level: int) -> np.ndarray:
    """Entrywise product; A and B broadcast over all but the last axis."""
    T = mult_tensor(level)
    d = phi(level)
    check_room(A, B, T, factor=d * d)
    out = np.zeros(np.broadcast_shapes(A.shape[:-1], B.shape[:-1]) + (d,), np.int64)
    for a in range(d):
        Aa = A[..., a]
        if not Aa.any():
            continue
        for b in range(d):
            Bb = B[..., b]
            if not Bb.any():
                continue
            row = T[a, b]
            prod = Aa * Bb
            for c in range(d):
                if row[c]:
                    out[..., c] += int(row[c]) * prod
    return out


def apply_galois(A: np.ndarray, n: int, level: int) -> np.ndarray:
    M = galois_matrix(n % level, level)
    check_room(A, M, factor=phi(level))
    return np.tensordot(A, M.T, axes=([-1], [0]))


def conjugate(A: np.ndarray, level: int) -> np.ndarray:
    if level <= 2:
        return A.copy()
    return apply_galois(A, level - 1, level)


def lift_level(A: np.ndarray, level: int, target: int) -> np.ndarray:
    if level == target:
        return A.copy()
    M = lift_matrix(level, target)
    check_room(A, M, factor=phi(level))
    return np.tensordot(A, M.T, axes=([-1], [0]))


def scalar_vector(value: int, level: int) -> np.ndarray:
    v = np.zeros(phi(level), np.int64)
    v[0] = value
    return v


def to_cyclo(vec: np.ndarray, level: int, denom: int = 1) -> CycloNumber:
    return CycloNumber(level, [Fraction(int(c), denom) for c in vec])


def from_cyclo(z: CycloNumber, level: int) -> np.ndarray:
    z = z.lift(level)
    out = np.zeros(phi(level), np.int64)
    for i, c in enumerate(z.coeffs):
        if c.denominator != 1:
            raise ConsistencyError("expected a cyclotomic integer")
        out[i] = int(c)
    return out
