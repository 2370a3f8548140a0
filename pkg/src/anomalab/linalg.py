"""Exact linear algebra over Z/m by Smith reduction.

All matrices here represent maps between free Z/m-modules.  The Smith
reduction uses only operations invertible mod m: row/column swaps,
adding an integer multiple of one row/column to another, 2x2 unimodular
gcd combinations, and scaling by a unit of Z/m.  Realising gcd(a, m) at
a pivot by a unit scaling is the same move as adjoining m*identity
columns to the integer lift and running integer Smith reduction; folding
it into the arithmetic keeps every entry in [0, m).

Entries stay below the modulus, so int64 never overflows (the modulus is
capped) and large reductions can be batched through float64 BLAS, which
is exact below 2**53.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from .caps import check_cap
from .errors import ConsistencyError, DomainError


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def _unit_scaling(a: int, m: int) -> int:
    """A unit s of Z/m with (s*a) % m == gcd(a, m), for a % m != 0."""
    a %= m
    g = gcd(a, m)
    m1 = m // g
    a1 = (a // g) % m1
    # invert a1 mod m1, then lift to a unit mod m
    _, s0, _ = xgcd(a1, m1)
    s0 %= m1
    for k in range(g):
        s = s0 + k * m1
        if gcd(s, m) == 1:
            return s
    raise ConsistencyError(f"no unit scaling for a={a}, m={m}")


@dataclass
class SmithModM:
    """U @ A @ V == diag (mod m) with U, V invertible mod m.

    diag entries divide m; the value m encodes a zero diagonal slot.
    Requested transforms are None when not tracked.
    """

    m: int
    shape: tuple[int, int]
    diag: list[int]
    U: np.ndarray | None = None
    Uinv: np.ndarray | None = None
    V: np.ndarray | None = None
    carry: np.ndarray | None = None

    def diag_full_rows(self) -> list[int]:
        """diag padded with m to the number of rows."""
        r = self.shape[0]
        d = list(self.diag) + [self.m] * (r - len(self.diag))
        return d[:r]

    def diag_full_cols(self) -> list[int]:
        c = self.shape[1]
        d = list(self.diag) + [self.m] * (c - len(self.diag))
        return d[:c]


def _as_mod_array(A, m: int) -> np.ndarray:
    M = np.array(A, dtype=np.int64)
    if M.ndim != 2:
        raise DomainError("expected a 2-d matrix")
    return np.mod(M, m)


def smith_mod(A, m: int, *, want_u=False, want_uinv=False, want_v=False,
              carry=None) -> SmithModM:
    """Smith reduction of A over Z/m.

    `carry`, when given, is a matrix with the same number of rows as A;
    it receives exactly the row operations applied to A (i.e. comes back
    left-multiplied by U) without U being materialized.
    """
    if m < 1:
        raise DomainError("modulus must be >= 1")
    check_cap("modulus", m)
    M = _as_mod_array(A, m)
    r, c = M.shape
    if carry is not None:
        carry = _as_mod_array(carry, m)
        if carry.shape[0] != r:
            raise DomainError("carry must have the same number of rows")
    if m == 1:
        return SmithModM(
            1, (r, c), [1] * min(r, c),
            np.zeros((r, r), np.int64) if want_u else None,
            np.zeros((r, r), np.int64) if want_uinv else None,
            np.zeros((c, c), np.int64) if want_v else None,
            carry,
        )
    U = np.eye(r, dtype=np.int64) if (want_u or want_uinv) else None
    Uinv = np.eye(r, dtype=np.int64) if want_uinv else None
    V = np.eye(c, dtype=np.int64) if want_v else None
    C = carry

    def swap_rows(i, j):
        if i == j:
            return
        M[[i, j]] = M[[j, i]]
        if U is not None:
            U[[i, j]] = U[[j, i]]
        if Uinv is not None:
            Uinv[:, [i, j]] = Uinv[:, [j, i]]
        if C is not None:
            C[[i, j]] = C[[j, i]]

    def swap_cols(i, j):
        if i == j:
            return
        M[:, [i, j]] = M[:, [j, i]]
        if V is not None:
            V[:, [i, j]] = V[:, [j, i]]

    def scale_row(i, s):
        M[i, :] = (M[i, :] * s) % m
        if U is not None:
            U[i, :] = (U[i, :] * s) % m
        if Uinv is not None:
            _, sinv, _ = xgcd(s, m)
            Uinv[:, i] = (Uinv[:, i] * (sinv % m)) % m
        if C is not None:
            C[i, :] = (C[i, :] * s) % m

    def gcd_combine_rows(i, j, col, start=0):
        a, b = int(M[i, col]), int(M[j, col])
        g, x, y = xgcd(a, b)
        ri = (x * M[i, start:] + y * M[j, start:]) % m
        rj = (-(b // g) * M[i, start:] + (a // g) * M[j, start:]) % m
        M[i, start:], M[j, start:] = ri, rj
        if U is not None:
            ui = (x * U[i, :] + y * U[j, :]) % m
            uj = (-(b // g) * U[i, :] + (a // g) * U[j, :]) % m
            U[i, :], U[j, :] = ui, uj
        if Uinv is not None:
            # inverse transform [[a/g, -y], [b/g, x]] applied to columns
            ci = ((a // g) * Uinv[:, i] + (b // g) * Uinv[:, j]) % m
            cj = (-y * Uinv[:, i] + x * Uinv[:, j]) % m
            Uinv[:, i], Uinv[:, j] = ci, cj
        if C is not None:
            ci = (x * C[i, :] + y * C[j, :]) % m
            cj = (-(b // g) * C[i, :] + (a // g) * C[j, :]) % m
            C[i, :], C[j, :] = ci, cj

    def gcd_combine_cols(i, j, row, start=0):
        a, b = int(M[row, i]), int(M[row, j])
        g, x, y = xgcd(a, b)
        ci = (x * M[start:, i] + y * M[start:, j]) % m
        cj = (-(b // g) * M[start:, i] + (a // g) * M[start:, j]) % m
        M[start:, i], M[start:, j] = ci, cj
        if V is not None:
            vi = (x * V[:, i] + y * V[:, j]) % m
            vj = (-(b // g) * V[:, i] + (a // g) * V[:, j]) % m
            V[:, i], V[:, j] = vi, vj

    def add_rows_block(k, q):
        # rows below k: row_i -= q_i * row_k; columns < k are already zero
        M[k + 1:, k:] = (M[k + 1:, k:] - q[:, None] * M[k, k:]) % m
        if U is not None:
            U[k + 1:, :] = (U[k + 1:, :] - q[:, None] * U[k, :]) % m
        if Uinv is not None:
            Uinv[:, k] = (Uinv[:, k] + Uinv[:, k + 1:] @ q) % m
        if C is not None:
            C[k + 1:, :] = (C[k + 1:, :] - q[:, None] * C[k, :]) % m

    def add_cols_block(k, q):
        M[k:, k + 1:] = (M[k:, k + 1:] - M[k:, k][:, None] * q[None, :]) % m
        if V is not None:
            V[:, k + 1:] = (V[:, k + 1:] - V[:, k][:, None] * q[None, :]) % m

    rank = 0
    for k in range(min(r, c)):
        sub = M[k:, k:]
        nzr, nzc = np.nonzero(sub)
        if nzr.size == 0:
            break
        vals = sub[nzr, nzc]
        gcds = np.gcd(vals, m)
        order = np.lexsort((nzc, nzr, vals, gcds))
        bi = int(order[0])
        swap_rows(k, int(nzr[bi]) + k)
        swap_cols(k, int(nzc[bi]) + k)
        while True:
            a = int(M[k, k])
            g = gcd(a, m)
            if a != g:
                scale_row(k, _unit_scaling(a, m))
            p = int(M[k, k])
            dirty = False
            col = M[k + 1:, k]
            if col.any():
                add_rows_block(k, col // p)
            rem = np.nonzero(M[k + 1:, k])[0]
            if rem.size:
                gcd_combine_rows(k, int(rem[0]) + k + 1, k, start=k)
                dirty = True
                continue
            rowv = M[k, k + 1:]
            if rowv.any():
                add_cols_block(k, rowv // p)
            rem = np.nonzero(M[k, k + 1:])[0]
            if rem.size:
                gcd_combine_cols(k, int(rem[0]) + k + 1, k, start=k)
                dirty = True
            if not dirty and not M[k + 1:, k].any() and not M[k, k + 1:].any():
                break
        rank = k + 1

    # enforce the divisibility chain d_1 | d_2 | ... on nonzero pivots
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = int(M[i, i]), int(M[i + 1, i + 1])
            if b % a == 0:
                continue
            changed = True
            j = i + 1
            # row_i += row_j puts b next to a, then a 2x2 dance leaves gcd/lcm
            M[i, :] = (M[i, :] + M[j, :]) % m
            if U is not None:
                U[i, :] = (U[i, :] + U[j, :]) % m
            if Uinv is not None:
                Uinv[:, j] = (Uinv[:, j] - Uinv[:, i]) % m
            if C is not None:
                C[i, :] = (C[i, :] + C[j, :]) % m
            gcd_combine_cols(i, j, i)
            # clear the (j, i) residue; the new pivot divides it exactly
            g = int(M[i, i])
            q = int(M[j, i]) // g
            if int(M[j, i]) % g:
                raise ConsistencyError("divisibility fix left a bad residue")
            M[j, :] = (M[j, :] - q * M[i, :]) % m
            if U is not None:
                U[j, :] = (U[j, :] - q * U[i, :]) % m
            if Uinv is not None:
                Uinv[:, i] = (Uinv[:, i] + q * Uinv[:, j]) % m
            if C is not None:
                C[j, :] = (C[j, :] - q * C[i, :]) % m

    diag = []
    for i in range(min(r, c)):
        d = int(M[i, i])
        diag.append(d if d != 0 else m)
    return SmithModM(m, (r, c), diag, U, Uinv, V, C)


def solve_once(A, b, m: int) -> np.ndarray | None:
    """One solution of A x == b (mod m), without materializing U."""
    A = _as_mod_array(A, max(m, 1))
    r, c = A.shape
    if m == 1:
        return np.zeros(c, np.int64)
    b = np.mod(np.asarray(b, np.int64), m).reshape(r, 1)
    S = smith_mod(A, m, want_v=True, carry=b)
    z = S.carry[:, 0]
    d = S.diag_full_rows()
    w = np.zeros(c, np.int64)
    for i in range(r):
        zi = int(z[i])
        if zi % d[i]:
            return None
        if i < c:
            w[i] = zi // d[i]
    return (S.V @ w) % m


def row_echelon_mod(chunks, ncols: int, m: int, *, block: int = 96) -> np.ndarray:
    """Row span of the stacked chunks, as echelon rows over Z/m.

    `chunks` is an iterable of 2-d int arrays, each with `ncols` columns.
    Pivot values divide m.  The returned rows span exactly the same
    subgroup of (Z/m)^ncols as the input rows.
    """
    if m < 1:
        raise DomainError("modulus must be >= 1")
    check_cap("modulus", m)
    if m == 1:
        return np.zeros((0, ncols), np.int64)
    if block * m * m >= 2**52:
        block = max(1, 2**52 // (m * m))

    pivots: dict[int, int] = {}  # column -> index into rows
    rows: list[np.ndarray] = []

    def insert(v: np.ndarray) -> None:
        while True:
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return
            j = int(nz[0])
            if j not in pivots:
                a = int(v[j])
                g = gcd(a, m)
                if a != g:
                    v = (v * _unit_scaling(a, m)) % m
                pivots[j] = len(rows)
                rows.append(v)
                return
            rv = rows[pivots[j]]
            p = int(rv[j])
            a = int(v[j])
            if a % p == 0:
                v = (v - (a // p) * rv) % m
            else:
                g, x, y = xgcd(p, a)
                new_r = (x * rv + y * v) % m
                v = (-(a // g) * rv + (p // g) * v) % m
                rows[pivots[j]] = new_r

    def float_reduce(C):
        # blocked exact reduction of chunk rows against all current pivots
        order = sorted(pivots)
        Pf = np.stack([rows[pivots[j]] for j in order]).astype(np.float64)
        pv = np.array([int(rows[pivots[j]][j]) for j in order], np.float64)
        Cf = C.astype(np.float64)
        for b0 in range(0, len(order), block):
            b1 = min(b0 + block, len(order))
            cend = order[b1 - 1] + 1
            Q = np.empty((C.shape[0], b1 - b0))
            for t in range(b0, b1):
                j = order[t]
                q = np.floor_divide(Cf[:, j], pv[t])
                Q[:, t - b0] = np.mod(q, float(m))
                Cf[:, j:cend] -= np.outer(q, Pf[t, j:cend])
                # keep entries in [0, m): quotients stay bounded and the
                # float arithmetic stays exact
                np.mod(Cf[:, j:cend], float(m), out=Cf[:, j:cend])
            if cend < ncols:
                Cf[:, cend:] -= Q @ Pf[b0:b1, cend:]
                np.mod(Cf[:, cend:], float(m), out=Cf[:, cend:])
        C = Cf.astype(np.int64)
        np.mod(C, m, out=C)
        return C

    newbatch = 48
    for chunk in chunks:
        C = _as_mod_array(chunk, m)
        if C.shape[1] != ncols:
            raise DomainError("chunk has wrong width")
        while C.size:
            if rows:
                C = float_reduce(C)
            live = np.nonzero(C.any(axis=1))[0]
            if live.size == 0:
                break
            # install a few new pivots, then re-reduce the rest in bulk
            lead = np.argmax(C[live] != 0, axis=1)
            order_rows = live[np.argsort(lead, kind="stable")]
            for i in order_rows[:newbatch]:
                insert(C[i].copy())
            C = C[order_rows[newbatch:]]

    if not rows:
        return np.zeros((0, ncols), np.int64)
    order = sorted(pivots)
    return np.stack([rows[pivots[j]] for j in order])


def kernel_mod(A, m: int, *, pre_echelon: bool | None = None) -> np.ndarray:
    """Generator columns for {x in (Z/m)^c : A x == 0 mod m}."""
    M = _as_mod_array(A, max(m, 1))
    r, c = M.shape
    if m == 1 or c == 0:
        return np.zeros((c, 0), np.int64)
    if pre_echelon is None:
        pre_echelon = r > 2 * c and r > 64
    if pre_echelon:
        M = row_echelon_mod([M], c, m)
    S = smith_mod(M, m, want_v=True)
    d = S.diag_full_cols()
    gens = []
    for i in range(c):
        t = m // d[i]
        if t == m:
            continue
        gens.append((S.V[:, i] * t) % m)
    if not gens:
        return np.zeros((c, 0), np.int64)
    return np.stack(gens, axis=1)


class SmithSolver:
    """Solve A x == b (mod m) repeatedly for fixed A."""

    def __init__(self, A, m: int):
        self.m = m
        self.A = _as_mod_array(A, max(m, 1))
        self.r, self.c = self.A.shape
        if m > 1:
            self.S = smith_mod(self.A, m, want_u=True, want_v=True)
            self.drow = np.array(self.S.diag_full_rows(), np.int64)

    def solve(self, b) -> np.ndarray | None:
        b = np.mod(np.asarray(b, dtype=np.int64), max(self.m, 1))
        if b.shape != (self.r,):
            raise DomainError("rhs has wrong length")
        if self.m == 1:
            return np.zeros(self.c, np.int64)
        z = (self.S.U @ b) % self.m
        w = np.zeros(self.c, np.int64)
        nd = len(self.S.diag)
        for i in range(self.r):
            zi = int(z[i])
            if i < nd:
                d = self.S.diag[i]
                if zi % d:
                    return None
                if i < self.c:
                    w[i] = zi // d
            elif zi:
                return None
        return (self.S.V @ w) % self.m

    def solve_matrix(self, B) -> np.ndarray | None:
        B = np.asarray(B, dtype=np.int64)
        out = np.zeros((self.c, B.shape[1]), np.int64)
        for j in range(B.shape[1]):
            x = self.solve(B[:, j])
            if x is None:
                return None
            out[:, j] = x
        return out


@dataclass
class QuotientModM:
    """(Z/m)^n modulo the column span of a generator matrix.

    factors are the invariant factors (> 1, ascending divisibility);
    basis columns project to generators of the corresponding cyclic
    factors.
    """

    m: int
    n: int
    factors: list[int]
    basis: np.ndarray
    _U: np.ndarray
    _positions: list[int]

    def coordinates(self, y) -> tuple[int, ...]:
        y = np.mod(np.asarray(y, dtype=np.int64), self.m)
        if y.shape != (self.n,):
            raise DomainError("vector has wrong length")
        z = (self._U @ y) % self.m
        return tuple(int(z[p]) % f for p, f in zip(self._positions, self.factors))

    def is_trivial(self, y) -> bool:
        return all(v == 0 for v in self.coordinates(y))

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out


def coker_mod(A, m: int, *, pre_echelon: bool | None = None) -> QuotientModM:
    """Present (Z/m)^r / colspan(A)."""
    M = _as_mod_array(A, max(m, 1))
    r, g = M.shape
    if m == 1:
        return QuotientModM(1, r, [], np.zeros((r, 0), np.int64),
                            np.zeros((r, r), np.int64), [])
    if pre_echelon is None:
        pre_echelon = g > 2 * r and g > 64
    if pre_echelon:
        M = row_echelon_mod([M.T], r, m).T
    S = smith_mod(M, m, want_uinv=True)
    d = S.diag_full_rows()
    positions = [i for i in range(r) if d[i] > 1]
    factors = [d[i] for i in positions]
    basis = S.Uinv[:, positions] % m if positions else np.zeros((r, 0), np.int64)
    return QuotientModM(m, r, factors, basis, S.U, positions)


def span_members(gens: np.ndarray, m: int) -> set[tuple[int, ...]]:
    """All elements of the subgroup of (Z/m)^n spanned by generator columns.

    Brute-force closure; intended for tests and tiny inputs only.
    """
    n = gens.shape[0]
    seen = {tuple([0] * n)}
    frontier = [np.zeros(n, np.int64)]
    cols = [gens[:, j] % m for j in range(gens.shape[1])]
    while frontier:
        v = frontier.pop()
        for cvec in cols:
            w = (v + cvec) % m
            t = tuple(int(x) for x in w)
            if t not in seen:
                seen.add(t)
                frontier.append(w)
    return seen
