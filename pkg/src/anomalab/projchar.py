"""Exact irreducible projective characters of small finite groups.

Given a group C and a normalized 2-cocycle factor set with values in
Z/m (additively, v standing for exp(2 pi i v / m)), the twisted group
algebra is split over a prime field F_p with p = 1 mod L, where L is
large enough that F_p contains every eigenvalue of every basis unit.
Central idempotents are found from a seeded random central element, the
block traces are read off, and eigenvalue multiplicities are recovered
by a discrete Fourier count, which lifts each character value exactly
into Z[zeta].  The lift is certified over the cyclotomics: projective
orthogonality for the factor set, the regular character, and the
dimension sum must all hold exactly, else the engine retries with a new
random element.
"""

from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from . import cyctensor
from .cyclotomic import CycloNumber, phi, power_rows
from .errors import ConsistencyError, DomainError
from .groups import FiniteGroup


@dataclass(frozen=True)
class ProjectiveCharacter:
    """One irreducible character of the twisted group algebra of `group`."""

    group: FiniteGroup
    modulus: int
    factor: tuple  # additive factor set, row-major |C| x |C|
    values: tuple  # CycloNumber per element
    dim: int

    def value(self, x: int) -> CycloNumber:
        return self.values[x]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _primitive_root(p: int) -> int:
    fac = []
    n = p - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            fac.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        fac.append(n)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise ConsistencyError("no primitive root found")


def _nullspace_modp(A: np.ndarray, p: int) -> np.ndarray:
    """Column basis of {x : A x = 0 mod p}."""
    A = A.copy() % p
    rows, cols = A.shape
    piv_col_of_row = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if A[i, c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        A[[r, pivot]] = A[[pivot, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        piv_col_of_row.append(c)
        r += 1
    free = [c for c in range(cols) if c not in piv_col_of_row]
    basis = np.zeros((cols, len(free)), np.int64)
    for k, c in enumerate(free):
        basis[c, k] = 1
        for i, pc in enumerate(piv_col_of_row):
            basis[pc, k] = (-A[i, c]) % p
    return basis


def _unit_power_table(C: FiniteGroup, factor: np.ndarray, m: int):
    """For each x: (M_x, elements x^t, additive scalars s_t for u_x^t)."""
    out = []
    for x in C.elements():
        elems = [C.identity]
        scal = [0]
        cur, s = C.identity, 0
        t = 0
        while True:
            # u_x^(t+1) = theta(x^t, x) * u_(x^t x)
            s = (s + int(factor[cur, x])) % m
            cur = C.mul(cur, x)
            t += 1
            if cur == C.identity and s == 0:
                break
            elems.append(cur)
            scal.append(s)
            if t > C.order * m + 1:
                raise ConsistencyError("unit order runaway")
        out.append((t, elems, scal))
    return out


def projective_characters(
    C: FiniteGroup, factor, m: int, seed: int = 0
) -> tuple:
    """All irreducible projective characters for the given factor set.

    `factor` is an additive 2-cocycle table (|C| x |C|) with values in
    Z/m and factor[e, x] == factor[x, e] == 0.
    """
    n = C.order
    factor = np.mod(np.asarray(factor, np.int64), max(m, 1))
    if factor.shape != (n, n):
        raise DomainError("factor set table has wrong shape")
    e = C.identity
    if factor[e, :].any() or factor[:, e].any():
        raise DomainError("factor set is not normalized")
    # 2-cocycle condition
    for x in C.elements():
        for y in C.elements():
            for z in C.elements():
                lhs = factor[x, y] + factor[C.mul(x, y), z]
                rhs = factor[y, z] + factor[x, C.mul(y, z)]
                if (lhs - rhs) % m:
                    raise DomainError("factor set is not a 2-cocycle")

    powers = _unit_power_table(C, factor, m)
    L = m
    for M_x, _, _ in powers:
        L = lcm(L, M_x)
    # prime with all needed roots of unity and injective trace lifts
    p = L + 1
    while not (_is_prime(p) and p > 2 * n * m and n % p != 0):
        p += L
    omega = pow(_primitive_root(p), (p - 1) // L, p)

    # left regular matrices of the twisted algebra over F_p
    reg = np.zeros((n, n, n), np.int64)
    for h in C.elements():
        for x in C.elements():
            reg[h, C.mul(h, x), x] = pow(omega, int(factor[h, x]) * (L // m), p)

    # center: elements commuting with every basis unit
    eqs = []
    for h in C.elements():
        Rh = reg[h]
        comm = np.stack(
            [(Rh @ reg[x] - reg[x] @ Rh) % p for x in C.elements()], axis=2
        )
        eqs.append(comm.reshape(n * n, n))
    zbasis = _nullspace_modp(np.vstack(eqs) % p, p)
    r = zbasis.shape[1]

    rng = np.random.default_rng(seed)
    last_error = None
    for _attempt in range(64):
        coeffs = rng.integers(1, p, size=r, dtype=np.int64)
        zvec = (zbasis @ coeffs) % p
        Rz = np.zeros((n, n), np.int64)
        for x in C.elements():
            if zvec[x]:
                Rz = (Rz + int(zvec[x]) * reg[x]) % p
        try:
            chars = _split_and_lift(C, factor, m, p, L, omega, reg, Rz, r, powers)
        except _RetrySplit as exc:
            last_error = exc
            continue
        return chars
    raise ConsistencyError(f"character splitting failed to converge: {last_error}")


class _RetrySplit(Exception):
    pass


def _min_poly_modp(Rz: np.ndarray, e: int, p: int) -> list:
    """Monic minimal polynomial coefficients (ascending) of the algebra
    element represented by Rz, computed from its Krylov sequence at u_e."""
    n = Rz.shape[0]
    v = np.zeros(n, np.int64)
    v[e] = 1
    krylov = [v]
    # row-reduced copies for dependence detection
    R = []
    pivots = []

    def reduce(w):
        w = w.copy() % p
        for row, c in zip(R, pivots):
            if w[c]:
                w = (w - w[c] * row) % p
        return w

    while True:
        w = reduce(krylov[-1])
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            break
        c = int(nz[0])
        R.append((w * pow(int(w[c]), p - 2, p)) % p)
        pivots.append(c)
        krylov.append((Rz @ krylov[-1]) % p)
    t = len(krylov) - 1  # first dependent power
    V = np.stack(krylov[:t], axis=1)  # n x t
    # solve V a = krylov[t]
    aug = np.concatenate([V, krylov[t][:, None]], axis=1) % p
    sol = _solve_modp(aug[:, :t], aug[:, t], p)
    if sol is None:
        raise ConsistencyError("Krylov dependence solve failed")
    coeffs = [(-int(a)) % p for a in sol] + [1]
    return coeffs


def _solve_modp(A, b, p):
    A = A.copy() % p
    b = b.copy() % p
    rows, cols = A.shape
    piv = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if A[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        A[[r, pivot]] = A[[pivot, r]]
        b[[r, pivot]] = b[[pivot, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        b[r] = (b[r] * inv) % p
        for i in range(rows):
            if i != r and A[i, c]:
                b[i] = (b[i] - A[i, c] * b[r]) % p
                A[i] = (A[i] - A[i, c] * A[r]) % p
        piv.append(c)
        r += 1
    for i in range(r, rows):
        if b[i] % p:
            return None
    x = np.zeros(cols, np.int64)
    for i, c in enumerate(piv):
        x[c] = b[i]
    return x


def _split_and_lift(C, factor, m, p, L, omega, reg, Rz, r, powers):
    n = C.order
    e = C.identity
    minpoly = _min_poly_modp(Rz, e, p)
    if len(minpoly) - 1 != r:
        raise _RetrySplit("random central element does not separate blocks")
    # roots by scanning F_p
    xs = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, np.int64)
    for c in reversed(minpoly):
        vals = (vals * xs + c) % p
    roots = np.nonzero(vals == 0)[0]
    if roots.size != r:
        raise _RetrySplit("minimal polynomial does not split simply")

    # Lagrange idempotents evaluated on the algebra element z
    idems = []
    for lam in roots:
        poly = [1]
        denom = 1
        for mu in roots:
            if mu == lam:
                continue
            # multiply poly by (T - mu)
            new = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i] = (new[i] - int(mu) * c) % p
                new[i + 1] = (new[i + 1] + c) % p
            poly = new
            denom = denom * ((int(lam) - int(mu)) % p) % p
        dinv = pow(denom, p - 2, p)
        w = np.zeros(n, np.int64)
        for c in reversed(poly):
            w = (Rz @ w) % p
            w[e] = (w[e] + c) % p
        idems.append((w * dinv) % p)

    # block dimensions from regular traces
    dims = []
    invs = [C.inverse(x) for x in C.elements()]
    for w in idems:
        tr = (n * int(w[e])) % p  # Tr R(w) = n * coefficient of u_e
        d = int(np.sqrt(tr))
        while d * d < tr:
            d += 1
        if d * d != tr or d == 0 or d * d > n:
            raise _RetrySplit("block dimension is not a perfect square")
        dims.append(d)
    if sum(d * d for d in dims) != n:
        raise _RetrySplit("block dimensions do not fill the algebra")

    # F_p character table: chi_i(x) = n * (e_i u_x)[e] / dim
    fp_chi = np.zeros((r, n), np.int64)
    for i, w in enumerate(idems):
        dinv = pow(dims[i], p - 2, p)
        for x in C.elements():
            coef = int(w[invs[x]]) * pow(omega, int(factor[invs[x], x]) * (L // m), p)
            fp_chi[i, x] = n * coef % p * dinv % p

    # exact lift per entry by Fourier-counting eigenvalue multiplicities
    values = [[None] * n for _ in range(r)]
    for x in C.elements():
        M_x, elems, scal = powers[x]
        eta = pow(omega, L // M_x, p)
        eta_inv = pow(eta, p - 2, p)
        minv = pow(M_x, p - 2, p)
        rows = power_rows(M_x)
        for i in range(r):
            traces = [
                int(fp_chi[i, elems[t]]) * pow(omega, scal[t] * (L // m), p) % p
                for t in range(M_x)
            ]
            coeffvec = np.zeros(phi(M_x), np.int64)
            total = 0
            for j in range(M_x):
                cj = 0
                for t in range(M_x):
                    cj = (cj + traces[t] * pow(eta_inv, j * t, p)) % p
                cj = cj * minv % p
                if cj >= p - n:  # multiplicities are tiny; anything else is junk
                    raise _RetrySplit("negative multiplicity in Fourier count")
                if cj > dims[i]:
                    raise _RetrySplit("multiplicity exceeds the dimension")
                if cj:
                    coeffvec += cj * rows[j]
                total += cj
            if total != dims[i]:
                raise _RetrySplit("multiplicities do not sum to the dimension")
            values[i][x] = CycloNumber(M_x, [int(v) for v in coeffvec])

    chars = [
        ProjectiveCharacter(
            C, m, tuple(map(tuple, factor.tolist())), tuple(values[i]), dims[i]
        )
        for i in range(r)
    ]
    _verify_exact(C, factor, m, chars)
    chars.sort(key=_char_sort_key)
    return tuple(chars)


def _char_sort_key(ch: ProjectiveCharacter):
    lv = 1
    for v in ch.values:
        lv = lcm(lv, v.level)
    vecs = tuple(tuple(int(c) for c in v.lift(lv).coeffs) for v in ch.values)
    return (ch.dim, lv, vecs)


def _verify_exact(C: FiniteGroup, factor, m: int, chars) -> None:
    """Certify the lifted table over the cyclotomics, exactly."""
    n = C.order
    e = C.identity
    lv = m
    for ch in chars:
        for v in ch.values:
            lv = lcm(lv, v.level)
    d = phi(lv)
    r = len(chars)
    X = np.zeros((r, n, d), np.int64)
    for i, ch in enumerate(chars):
        for x in C.elements():
            X[i, x] = cyctensor.from_cyclo(ch.values[x], lv)
    # regular character: sum_i dim_i chi_i = n at e and 0 elsewhere
    regular = np.zeros((n, d), np.int64)
    for i, ch in enumerate(chars):
        regular += ch.dim * X[i]
    expect = np.zeros((n, d), np.int64)
    expect[e, 0] = n
    if not np.array_equal(regular, expect):
        raise _RetrySplit("regular character check failed")
    # projective orthogonality for this factor set:
    # (1/n) sum_x chi_i(x) chi_j(x^-1) / theta(x, x^-1) = delta_ij
    rowsL = power_rows(lv)
    XB = np.zeros((r, n, d), np.int64)
    for x in C.elements():
        xi = C.inverse(x)
        t = (-int(factor[x, xi]) * (lv // m)) % lv
        # multiply chi_j(x^-1) by zeta^t
        for j in range(r):
            vec = X[j, xi]
            out = np.zeros(d, np.int64)
            for a in range(d):
                if vec[a]:
                    out += int(vec[a]) * rowsL[(a + t) % lv]
            XB[j, x] = out
    gram = cyctensor.pair_contract(X, XB, lv)
    target = np.zeros((r, r, d), np.int64)
    for i in range(r):
        target[i, i, 0] = n
    if not np.array_equal(gram, target):
        raise _RetrySplit("projective orthogonality failed")
