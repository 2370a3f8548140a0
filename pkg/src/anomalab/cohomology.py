"""Bar-complex group cohomology with Z/m coefficients.

Cochains are normalized (zero whenever an argument is the identity) and
stored as dense tables over G^k in lexicographic order of element
indices.  The coefficient group Z/m models the m-torsion of the circle
written additively; a value v stands for the rotation v/m.

The kernel/image computation works on the reduced complex indexed by
non-identity tuples, via Smith reduction over Z/m (see linalg).  Classes
come out presented by invariant factors with explicit basis cocycles and
a coordinate solver, so "is this cocycle trivial, and if so why" is
always answerable with a witness.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from . import linalg
from .caps import check_cap
from .cyclotomic import GaloisTwist
from .errors import ConsistencyError, DomainError
from .groups import ExtensionData, FiniteGroup, Subgroup


# -- cochains ----------------------------------------------------------------


@dataclass(frozen=True)
class Cochain:
    """A normalized k-cochain G^k -> Z/m as a dense table of residues."""

    group: FiniteGroup
    degree: int
    modulus: int
    table: tuple

    def __post_init__(self):
        n, k, m = self.group.order, self.degree, self.modulus
        if k < 0 or m < 1:
            raise DomainError("degree must be >= 0 and modulus >= 1")
        if len(self.table) != n**k:
            raise DomainError(
                f"table length {len(self.table)} != {n}**{k}"
            )
        tab = np.asarray(self.table, dtype=np.int64)
        if ((tab < 0) | (tab >= m)).any():
            raise DomainError("table values must lie in [0, modulus)")
        if k > 0:
            full = tab.reshape((n,) * k)
            e = self.group.identity
            for axis in range(k):
                sl = [slice(None)] * k
                sl[axis] = e
                if full[tuple(sl)].any():
                    raise DomainError("cochain is not normalized")
        object.__setattr__(self, "_np", tab)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, G: FiniteGroup, degree: int, modulus: int) -> "Cochain":
        return cls(G, degree, modulus, (0,) * (G.order**degree))

    @classmethod
    def from_array(cls, G, degree, modulus, arr) -> "Cochain":
        arr = np.mod(np.asarray(arr, dtype=np.int64).reshape(-1), modulus)
        return cls(G, degree, modulus, tuple(arr.tolist()))

    @classmethod
    def from_function(cls, G, degree, modulus, fn) -> "Cochain":
        n = G.order
        vals = []
        for idx in range(n**degree):
            args = _unrank(idx, n, degree)
            vals.append(int(fn(*args)) % modulus)
        return cls(G, degree, modulus, tuple(vals))

    @classmethod
    def from_reduced(cls, G, degree, modulus, vec) -> "Cochain":
        full = np.zeros(G.order**degree, dtype=np.int64)
        if degree == 0:
            full[0] = int(vec[0]) % modulus if len(vec) else 0
        else:
            full[_reduced_to_full_indices(G, degree)] = np.mod(
                np.asarray(vec, np.int64), modulus
            )
        return cls(G, degree, modulus, tuple(int(v) for v in full))

    # -- access -----------------------------------------------------------

    def value(self, *args) -> int:
        n = self.group.order
        idx = 0
        for a in args:
            idx = idx * n + a
        return self.table[idx]

    def reduced(self) -> np.ndarray:
        if self.degree == 0:
            return self._np.copy()
        return self._np[_reduced_to_full_indices(self.group, self.degree)]

    # -- arithmetic ---------------------------------------------------------

    def _check_peer(self, other):
        if (
            self.group != other.group
            or self.degree != other.degree
            or self.modulus != other.modulus
        ):
            raise DomainError("cochain mismatch (group, degree or modulus)")

    def __add__(self, other):
        self._check_peer(other)
        return Cochain.from_array(
            self.group, self.degree, self.modulus, self._np + other._np
        )

    def __sub__(self, other):
        self._check_peer(other)
        return Cochain.from_array(
            self.group, self.degree, self.modulus, self._np - other._np
        )

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, k: int) -> "Cochain":
        return Cochain.from_array(
            self.group, self.degree, self.modulus, k * self._np
        )

    def lift_modulus(self, t: int) -> "Cochain":
        """Embed mu_m into mu_{m t}: multiply values by t."""
        if t < 1:
            raise DomainError("lift factor must be positive")
        return Cochain.from_array(
            self.group, self.degree, self.modulus * t, self._np * t
        )

    # -- differential ---------------------------------------------------------

    def _d_array(self) -> np.ndarray:
        G, k, m = self.group, self.degree, self.modulus
        n = G.order
        if k == 0:
            return np.zeros(n, dtype=np.int64)
        digits = _all_digit_rows(n, k + 1)
        out = np.zeros(n ** (k + 1), dtype=np.int64)
        tab = self._np
        # drop-first and drop-last faces
        out += tab[_rank_rows(digits[:, 1:], n)]
        sign_last = -1 if (k + 1) % 2 else 1
        out += sign_last * tab[_rank_rows(digits[:, :k], n)]
        mult = G._np
        for i in range(1, k + 1):
            merged = mult[digits[:, i - 1], digits[:, i]]
            cols = np.concatenate(
                [digits[:, : i - 1], merged[:, None], digits[:, i + 1 :]], axis=1
            )
            sign = -1 if i % 2 else 1
            out += sign * tab[_rank_rows(cols, n)]
        return np.mod(out, m)

    def d(self) -> "Cochain":
        """Bar differential, trivial coefficients."""
        return Cochain.from_array(
            self.group, self.degree + 1, self.modulus, self._d_array()
        )

    def is_cocycle(self) -> bool:
        return not self._d_array().any()

    # -- transport --------------------------------------------------------------

    def restrict(self, sub: Subgroup) -> "Cochain":
        if sub.parent != self.group:
            raise DomainError("subgroup does not belong to the cochain's group")
        H = sub.group
        k = self.degree
        nH = H.order
        emb = np.asarray(sub.to_parent, np.int64)
        if k == 0:
            return Cochain(H, 0, self.modulus, self.table)
        digits = _all_digit_rows(nH, k)
        src = _rank_rows(emb[digits], self.group.order)
        return Cochain.from_array(H, k, self.modulus, self._np[src])

    def inflate(self, ext: ExtensionData) -> "Cochain":
        if ext.base != self.group:
            raise DomainError("extension base does not match the cochain's group")
        E = ext.total
        k = self.degree
        q = np.asarray(ext.quotient_map, np.int64)
        if k == 0:
            return Cochain(E, 0, self.modulus, self.table)
        digits = _all_digit_rows(E.order, k)
        src = _rank_rows(q[digits], self.group.order)
        return Cochain.from_array(E, k, self.modulus, self._np[src])

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        group_ref = {"name": self.group.name} if self.group.name else self.group.to_json()
        return {
            "group": group_ref,
            "degree": self.degree,
            "modulus": self.modulus,
            "table": [int(v) for v in self.table],
        }


def cochain_from_json(data: dict, group: FiniteGroup) -> Cochain:
    return Cochain(group, int(data["degree"]), int(data["modulus"]),
                   tuple(int(v) for v in data["table"]))


def coboundary(c: Cochain) -> Cochain:
    return c.d()


# -- index plumbing -----------------------------------------------------------


@lru_cache(maxsize=None)
def _digit_cache(n: int, k: int):
    idx = np.arange(n**k, dtype=np.int64)
    digits = np.zeros((n**k, k), dtype=np.int64)
    for pos in range(k - 1, -1, -1):
        digits[:, pos] = idx % n
        idx //= n
    return digits


def _all_digit_rows(n: int, k: int) -> np.ndarray:
    return _digit_cache(n, k)


def _rank_rows(rows: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(rows.shape[0], dtype=np.int64)
    for j in range(rows.shape[1]):
        out = out * n + rows[:, j]
    return out


def _unrank(idx: int, n: int, k: int) -> tuple:
    out = []
    for _ in range(k):
        out.append(idx % n)
        idx //= n
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def _nonid(G: FiniteGroup) -> np.ndarray:
    return np.array([x for x in G.elements() if x != G.identity], np.int64)


@lru_cache(maxsize=None)
def _code_of(G: FiniteGroup) -> np.ndarray:
    code = np.full(G.order, -1, np.int64)
    for i, x in enumerate(_nonid(G)):
        code[x] = i
    return code


@lru_cache(maxsize=None)
def _reduced_to_full_indices(G: FiniteGroup, k: int) -> np.ndarray:
    """Full-table indices of the (n-1)^k non-identity tuples, in reduced order."""
    n = G.order
    nonid = _nonid(G)
    digits = _all_digit_rows(n - 1, k) if n > 1 else np.zeros((0, k), np.int64)
    return _rank_rows(nonid[digits], n)


def _bar_matrix_chunks(G: FiniteGroup, k: int, m: int, chunk: int = 2048):
    """Dense chunks of the degree-k bar differential on reduced tables.

    Rows: reduced (k+1)-tuples; columns: reduced k-tuples.
    """
    n = G.order
    if n == 1:
        return
    nonid = _nonid(G)
    code = _code_of(G)
    mult = G._np
    e = G.identity
    n1 = n - 1
    nrows = n1 ** (k + 1)
    ncols = n1**k

    def reduced_rank(codes):
        out = np.zeros(codes.shape[0], dtype=np.int64)
        for j in range(codes.shape[1]):
            out = out * n1 + codes[:, j]
        return out

    for start in range(0, nrows, chunk):
        stop = min(start + chunk, nrows)
        idx = np.arange(start, stop, dtype=np.int64)
        digs = np.zeros((stop - start, k + 1), dtype=np.int64)
        tmp = idx.copy()
        for pos in range(k, -1, -1):
            digs[:, pos] = tmp % n1
            tmp //= n1
        elems = nonid[digs]
        C = np.zeros((stop - start, ncols), dtype=np.int64)
        rows = np.arange(stop - start)
        if k == 0:
            # d of a constant is zero
            yield C
            continue
        np.add.at(C, (rows, reduced_rank(digs[:, 1:])), 1)
        sign_last = -1 if (k + 1) % 2 else 1
        np.add.at(C, (rows, reduced_rank(digs[:, :k])), sign_last)
        for i in range(1, k + 1):
            merged = mult[elems[:, i - 1], elems[:, i]]
            valid = merged != e
            med_codes = code[merged[valid]]
            cols = np.concatenate(
                [digs[valid, : i - 1], med_codes[:, None], digs[valid, i + 1 :]],
                axis=1,
            )
            sign = -1 if i % 2 else 1
            np.add.at(C, (rows[valid], reduced_rank(cols)), sign)
        yield C % m


def _boundary_matrix(G: FiniteGroup, k: int, m: int) -> np.ndarray:
    """The degree-(k-1) differential: columns are d of reduced basis cochains."""
    n1 = G.order - 1
    if G.order == 1:
        return np.zeros((0, 0), np.int64)
    ncols = n1 ** (k - 1) if k >= 1 else 0
    if k == 0:
        return np.zeros((1, 0), np.int64)
    blocks = list(_bar_matrix_chunks(G, k - 1, m))
    if not blocks:
        return np.zeros((n1**k, ncols), np.int64)
    return np.vstack(blocks)


# -- cohomology groups ---------------------------------------------------------


class CohomologyGroup:
    """H^k(G; Z/m) presented by invariant factors and basis cocycles."""

    def __init__(self, G: FiniteGroup, degree: int, modulus: int):
        check_cap("cohomology_degree", degree)
        check_cap("modulus", modulus)
        n = G.order
        self.group = G
        self.degree = degree
        self.modulus = modulus
        k, m = degree, modulus
        if k == 0:
            self.invariant_factors = (m,) if m > 1 else ()
            one = Cochain(G, 0, m, (1 % m,))
            self.basis_cocycles = (one,) if m > 1 else ()
            self._trivial_space = True
            return
        self._trivial_space = False
        if n > 1:
            check_cap("cohomology_cells", (n - 1) ** (k + 1))
        n1 = n - 1
        ncols = n1**k
        if n == 1 or m == 1 or ncols == 0:
            self.invariant_factors = ()
            self.basis_cocycles = ()
            self._degenerate = True
            return
        self._degenerate = False
        E = linalg.row_echelon_mod(_bar_matrix_chunks(G, k, m), ncols, m)
        self._cocycle_rows = E
        S = linalg.smith_mod(E, m, want_v=True)
        dcols = S.diag_full_cols()
        gens = []
        for i in range(ncols):
            t = m // dcols[i]
            if t < m:
                gens.append((S.V[:, i] * t) % m)
        self._kgen = (
            np.stack(gens, axis=1) if gens else np.zeros((ncols, 0), np.int64)
        )
        self._ksolver = linalg.SmithSolver(self._kgen, m)
        self._bmat = _boundary_matrix(G, k, m)
        if self._kgen.shape[1] == 0:
            self.invariant_factors = ()
            self.basis_cocycles = ()
            self._degenerate = True
            return
        Y = self._ksolver.solve_matrix(self._bmat)
        if Y is None:
            raise ConsistencyError("a coboundary failed to be a cocycle")
        W = linalg.kernel_mod(self._kgen, m)
        self._relmat = np.hstack([Y, W])
        self._nb = self._bmat.shape[1]
        self._quot = linalg.coker_mod(self._relmat, m)
        self._relsolver = linalg.SmithSolver(self._relmat, m)
        self.invariant_factors = tuple(self._quot.factors)
        basis = []
        for j in range(len(self.invariant_factors)):
            vec = (self._kgen @ self._quot.basis[:, j]) % m
            basis.append(Cochain.from_reduced(G, k, m, vec))
        self.basis_cocycles = tuple(basis)

    # -- queries -----------------------------------------------------------

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def exponent(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out = lcm(out, f)
        return out

    def _check_cochain(self, c: Cochain):
        if c.group != self.group or c.degree != self.degree or c.modulus != self.modulus:
            raise DomainError("cochain does not match this cohomology group")
        if not c.is_cocycle():
            raise DomainError("not a cocycle")

    def class_of(self, c: Cochain) -> "CohomologyClass":
        self._check_cochain(c)
        return CohomologyClass(self, self.coordinates(c), c)

    def coordinates(self, c: Cochain) -> tuple:
        self._check_cochain(c)
        if self.degree == 0:
            return (int(c.table[0]),) if self.modulus > 1 else ()
        if not self.invariant_factors:
            return ()
        w = self._ksolver.solve(c.reduced())
        if w is None:
            raise ConsistencyError("cocycle not in the computed kernel")
        return self._quot.coordinates(w)

    def witness(self, c: Cochain) -> Cochain | None:
        """A (k-1)-cochain L with dL == c, when [c] == 0; else None."""
        self._check_cochain(c)
        k, m = self.degree, self.modulus
        if k == 0:
            # no degree -1 cochains; only the zero class is trivial and it
            # has no witness to offer
            return None
        if self.group.order == 1 or m == 1:
            return Cochain.zero(self.group, k - 1, m)
        if getattr(self, "_degenerate", False) and self._kgen.shape[1] == 0:
            # no nonzero cocycles at all
            return Cochain.zero(self.group, k - 1, m)
        w = self._ksolver.solve(c.reduced())
        if w is None:
            raise ConsistencyError("cocycle not in the computed kernel")
        if hasattr(self, "_quot") and any(self._quot.coordinates(w)):
            return None
        if not hasattr(self, "_relsolver"):
            # H^k is zero and every cocycle bounds: solve directly
            t = linalg.solve_once(self._bmat, c.reduced(), m)
            if t is None:
                raise ConsistencyError("trivial class without a bounding cochain")
            lam = Cochain.from_reduced(self.group, k - 1, m, t)
        else:
            u = self._relsolver.solve(w)
            if u is None:
                raise ConsistencyError("trivial class without a bounding cochain")
            lam = Cochain.from_reduced(self.group, k - 1, m, u[: self._nb])
        if lam._d_array().tolist() != list(c.table):
            raise ConsistencyError("witness verification failed")
        return lam

    def class_from_coordinates(self, coords) -> "CohomologyClass":
        if len(coords) != len(self.invariant_factors):
            raise DomainError("coordinate tuple has wrong length")
        coords = tuple(int(v) % f for v, f in zip(coords, self.invariant_factors))
        rep = Cochain.zero(self.group, self.degree, self.modulus)
        for v, b in zip(coords, self.basis_cocycles):
            if v:
                rep = rep + b.scaled(v)
        return CohomologyClass(self, coords, rep)

    def zero_class(self) -> "CohomologyClass":
        return self.class_from_coordinates((0,) * len(self.invariant_factors))

    def classes(self):
        """All classes, in lexicographic coordinate order."""
        import itertools

        for coords in itertools.product(
            *(range(f) for f in self.invariant_factors)
        ):
            yield self.class_from_coordinates(coords)

    def key(self):
        return (self.group, self.degree, self.modulus)


@lru_cache(maxsize=None)
def cohomology_group(G: FiniteGroup, degree: int, modulus: int) -> CohomologyGroup:
    return CohomologyGroup(G, degree, modulus)


@dataclass(frozen=True)
class CohomologyClass:
    parent: CohomologyGroup
    coordinates: tuple
    representative: Cochain

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.parent.key() != other.parent.key():
            raise DomainError("classes live in different cohomology groups")
        coords = tuple(
            (a + b) % f
            for a, b, f in zip(
                self.coordinates, other.coordinates, self.parent.invariant_factors
            )
        )
        rep = self.representative + other.representative
        return CohomologyClass(self.parent, coords, rep)

    def __neg__(self):
        coords = tuple(
            (-a) % f
            for a, f in zip(self.coordinates, self.parent.invariant_factors)
        )
        return CohomologyClass(
            self.parent, coords, self.representative.scaled(-1)
        )

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.coordinates)

    @property
    def order(self) -> int:
        out = 1
        for v, f in zip(self.coordinates, self.parent.invariant_factors):
            if v:
                out = lcm(out, f // gcd(f, v))
        return out

    def scaled(self, k: int) -> "CohomologyClass":
        coords = tuple(
            (k * a) % f
            for a, f in zip(self.coordinates, self.parent.invariant_factors)
        )
        return CohomologyClass(
            self.parent, coords, self.representative.scaled(k)
        )

    def same_class(self, other: "CohomologyClass") -> bool:
        return (
            self.parent.key() == other.parent.key()
            and self.coordinates == other.coordinates
        )


def class_add(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    return a + b


def class_coordinates(c: Cochain, H: CohomologyGroup):
    """Coordinates of [c]; with a trivializing witness when [c] == 0."""
    coords = H.coordinates(c)
    witness = H.witness(c) if not any(coords) else None
    return coords, witness


# -- slant products ---------------------------------------------------------


def slant3(alpha: Cochain, g: int) -> Cochain:
    """H^3(G) -> H^2(C(g)): (x, y) -> a(g,x,y) - a(x,g,y) + a(x,y,g)."""
    if alpha.degree != 3:
        raise DomainError("slant3 needs a 3-cochain")
    if not alpha.is_cocycle():
        raise DomainError("slant3 needs a cocycle")
    G = alpha.group
    sub = G.centralizer(g)
    H = sub.group
    m = alpha.modulus
    emb = sub.to_parent

    def val(xs, ys):
        x, y = emb[xs], emb[ys]
        return alpha.value(g, x, y) - alpha.value(x, g, y) + alpha.value(x, y, g)

    return Cochain.from_function(H, 2, m, val)


def slant2(beta: Cochain, g: int) -> Cochain:
    """H^2(G) -> H^1(C(g)): x -> b(g,x) - b(x,g)."""
    if beta.degree != 2:
        raise DomainError("slant2 needs a 2-cochain")
    if not beta.is_cocycle():
        raise DomainError("slant2 needs a cocycle")
    G = beta.group
    sub = G.centralizer(g)
    H = sub.group
    emb = sub.to_parent

    def val(xs):
        x = emb[xs]
        return beta.value(g, x) - beta.value(x, g)

    return Cochain.from_function(H, 1, beta.modulus, val)


def slant_linearity_check(A: FiniteGroup, beta: Cochain, n: int) -> bool:
    """Check the identity slant2(b, x^n) == n * slant2(b, x) on abelian A.

    Always true for genuine 2-cocycles; a False return flags a bug.
    """
    if not A.is_abelian:
        raise DomainError("slant linearity is stated for abelian groups")
    if beta.group != A:
        raise DomainError("cochain group mismatch")
    if not beta.is_cocycle():
        raise DomainError("needs a 2-cocycle")
    for x in A.elements():
        xn = A.power(x, n)
        left = slant2(beta, xn)
        right = slant2(beta, x).scaled(n)
        if left.table != right.table:
            return False
    return True


# -- Galois action on classes -----------------------------------------------


def galois_act_class(c: CohomologyClass, twist: GaloisTwist) -> CohomologyClass:
    m = c.representative.modulus
    if gcd(twist.unit, m) != 1:
        raise DomainError(f"{twist.unit} is not a unit mod {m}")
    mult = pow(twist.unit, twist.exponent, m)
    new_rep = c.representative.scaled(mult)
    return c.parent.class_of(new_rep)


def galois_fixed_exponent(H: CohomologyGroup, i: int):
    """Invariant factors and exponent of the subgroup fixed by x -> n^i x
    for every unit n of Z/m."""
    m = H.modulus
    if m == 1 or not H.invariant_factors:
        return (), 1
    K = 0
    for u in range(1, m):
        if gcd(u, m) == 1:
            K = gcd(K, (pow(u, i, m) - 1) % m)
    K = gcd(K, m)
    factors = []
    expo = 1
    for d in H.invariant_factors:
        g = gcd(d, K)
        if g > 1:
            factors.append(g)
        expo = lcm(expo, g)
    return tuple(factors), expo


# -- inflation / restriction / the kill check ---------------------------------


def restrict(c: Cochain, sub: Subgroup) -> Cochain:
    return c.restrict(sub)


def inflate(c: Cochain, ext: ExtensionData) -> Cochain:
    return c.inflate(ext)


def inflation_kill_check(ext: ExtensionData, alpha) -> tuple:
    """Does alpha die in H^3(total; mu) after pullback along total -> base?

    Returns (killed, witness); the witness is a 2-cochain L on the total
    group with dL equal to the pulled-back cocycle, at the stabilized
    modulus |E| * lcm(m, |E|) where images in mu-cohomology are faithful.
    """
    c = alpha.representative if isinstance(alpha, CohomologyClass) else alpha
    if c.degree != 3:
        raise DomainError("the kill check needs a degree-3 class")
    if not c.is_cocycle():
        raise DomainError("not a cocycle")
    E = ext.total
    m = c.modulus
    nE = E.order
    check_cap("cohomology_cells", max((nE - 1) ** 4, 1))
    M = nE * lcm(m, nE)
    check_cap("modulus", M)
    lifted = c.inflate(ext).lift_modulus(M // m)
    if not lifted._np.any():
        return True, Cochain.zero(E, 2, M)
    bmat = _boundary_matrix(E, 3, M)
    t = linalg.solve_once(bmat, lifted.reduced(), M)
    if t is None:
        return False, None
    lam = Cochain.from_reduced(E, 2, M, t)
    if lam._d_array().tolist() != list(lifted.table):
        raise ConsistencyError("kill-check witness failed verification")
    return True, lam


# -- stable (mu-)classes ------------------------------------------------------


@dataclass(frozen=True)
class StableClasses:
    """Image of H^k(G; Z/m) inside H^k(G; Z/(m|G|)).

    This subgroup is canonically the mu-coefficient cohomology: lifting
    once more cannot kill anything because |G| annihilates the lower
    cohomology feeding the Bockstein.  `generators` are modulus-m cocycle
    representatives of the invariant-factor generators.
    """

    group: FiniteGroup
    degree: int
    modulus: int
    invariant_factors: tuple
    generators: tuple  # Cochain, one per factor

    @property
    def count(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def exponent(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out = lcm(out, f)
        return out

    def class_list(self):
        """(coords, representative Cochain) for every stable class."""
        import itertools

        out = []
        for coords in itertools.product(
            *(range(f) for f in self.invariant_factors)
        ):
            rep = Cochain.zero(self.group, self.degree, self.modulus)
            for v, g in zip(coords, self.generators):
                if v:
                    rep = rep + g.scaled(v)
            out.append((coords, rep))
        return out


@lru_cache(maxsize=None)
def stable_classes(G: FiniteGroup, degree: int, modulus: int | None = None) -> StableClasses:
    m = modulus if modulus is not None else G.order
    M = m * G.order
    Hm = cohomology_group(G, degree, m)
    if not Hm.invariant_factors:
        return StableClasses(G, degree, m, (), ())
    HM = cohomology_group(G, degree, M)
    if not HM.invariant_factors:
        return StableClasses(G, degree, m, (), ())
    b = len(Hm.invariant_factors)
    coords = []
    for c in Hm.basis_cocycles:
        coords.append(HM.coordinates(c.lift_modulus(M // m)))
    MR = np.array(coords, np.int64).T  # factors(HM) x b
    D = np.array(HM.invariant_factors, np.int64)
    scaled = ((M // D)[:, None] * MR) % M
    K = linalg.kernel_mod(scaled, M)
    Q = linalg.coker_mod(K, M)
    gens = []
    for j in range(len(Q.factors)):
        w = Q.basis[:, j] % m
        rep = Cochain.zero(G, degree, m)
        for i in range(b):
            if w[i]:
                rep = rep + Hm.basis_cocycles[i].scaled(int(w[i]))
        gens.append(rep)
    return StableClasses(G, degree, m, tuple(Q.factors), tuple(gens))
