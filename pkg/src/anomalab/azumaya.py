"""Matrix algebras over cyclotomic fields with finite group actions.

This is the associative-algebra warm-up made executable: extract the
gauge anomaly 2-cocycle of an action from Skolem-Noether witnesses,
compute the graded commutant, gauge along a trivializing lift (corner
algebra of the averaging idempotent), and check the first-power Galois
transformation law on the anomaly class.

Matrices are tuples of tuples of CycloNumber; sizes stay tiny (n <= 4),
so plain Gaussian elimination over the field is plenty.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .cohomology import Cochain, cohomology_group
from .cyclotomic import CycloNumber, MuElement
from .errors import ConsistencyError, DomainError
from .groups import FiniteGroup


# -- matrices over Q(zeta) ----------------------------------------------------


def mat_eye(n: int) -> tuple:
    one, zero = CycloNumber.one(), CycloNumber.zero()
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def mat_zero(n: int) -> tuple:
    zero = CycloNumber.zero()
    return tuple(tuple(zero for _ in range(n)) for _ in range(n))


def mat_unit(n: int, i: int, j: int) -> tuple:
    return tuple(
        tuple(
            CycloNumber.one() if (r, c) == (i, j) else CycloNumber.zero()
            for c in range(n)
        )
        for r in range(n)
    )


def mat_mul(A, B) -> tuple:
    n, k, m = len(A), len(B), len(B[0])
    return tuple(
        tuple(
            sum((A[i][t] * B[t][j] for t in range(k)), CycloNumber.zero())
            for j in range(m)
        )
        for i in range(n)
    )


def mat_add(A, B) -> tuple:
    return tuple(
        tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def mat_scale(c, A) -> tuple:
    return tuple(tuple(c * a for a in row) for row in A)


def mat_eq(A, B) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat_is_zero(A) -> bool:
    return all(a.is_zero() for row in A for a in row)


def mat_galois(A, n: int) -> tuple:
    return tuple(tuple(a.galois(n) for a in row) for row in A)


def vec_of(A) -> tuple:
    return tuple(a for row in A for a in row)


def mat_from_vec(v, n: int) -> tuple:
    return tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n))


def mat_inverse(A):
    """Inverse over the field, or None when singular."""
    n = len(A)
    aug = [list(row) + list(mat_eye(n)[i]) for i, row in enumerate(A)]
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if not aug[i][c].is_zero():
                piv = i
                break
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        r += 1
    return tuple(tuple(row[n:]) for row in aug)


def _row_reduce(rows):
    """Row echelon over the field; returns (reduced rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    width = len(rows[0]) if rows else 0
    for c in range(width):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def span_rank(vectors) -> int:
    if not vectors:
        return 0
    return len(_row_reduce(vectors)[0])


def in_span(vectors, v) -> bool:
    base = span_rank(list(vectors))
    return span_rank(list(vectors) + [list(v)]) == base


# -- domain types --------------------------------------------------------------


@dataclass(frozen=True)
class MatrixAlgebra:
    """Mat_n over Q(zeta_base_level): the split Azumaya algebra."""

    size: int
    base_level: int = 1

    def __post_init__(self):
        if self.size < 1:
            raise DomainError("matrix size must be >= 1")


class AlgebraAction:
    """A finite group acting on Mat_n by algebra automorphisms.

    maps[g] is the n^2 x n^2 matrix of phi_g on matrix units: column
    i*n+j holds vec(phi_g(E_ij)), row-major.  The optional lift stores
    invertible matrices f_g with phi_g = conjugation by f_g.
    """

    def __init__(self, algebra: MatrixAlgebra, group: FiniteGroup, maps,
                 lift=None):
        self.algebra = algebra
        self.group = group
        n = algebra.size
        self.maps = tuple(maps)
        self.lift = tuple(lift) if lift is not None else None
        if len(self.maps) != group.order:
            raise DomainError("need one automorphism per group element")
        for M in self.maps:
            if len(M) != n * n or any(len(row) != n * n for row in M):
                raise DomainError("automorphism matrix has wrong shape")
        self._validate()

    def unit_image(self, g: int, i: int, j: int) -> tuple:
        """phi_g(E_ij) as an n x n matrix."""
        n = self.algebra.size
        col = i * n + j
        M = self.maps[g]
        return mat_from_vec(tuple(M[r][col] for r in range(n * n)), n)

    def apply(self, g: int, A) -> tuple:
        n = self.algebra.size
        out = mat_zero(n)
        for i in range(n):
            for j in range(n):
                if not A[i][j].is_zero():
                    out = mat_add(out, mat_scale(A[i][j], self.unit_image(g, i, j)))
        return out

    def galois_twisted(self, n_unit: int) -> "AlgebraAction":
        """Apply sigma_n entrywise to all automorphism data."""
        maps = tuple(
            tuple(tuple(x.galois(n_unit) for x in row) for row in M)
            for M in self.maps
        )
        lift = None
        if self.lift is not None:
            lift = tuple(mat_galois(f, n_unit) for f in self.lift)
        return AlgebraAction(self.algebra, self.group, maps, lift)

    # -- validation -----------------------------------------------------------

    def _validate(self):
        G, n = self.group, self.algebra.size
        e = G.identity
        ident = mat_eye(n * n)
        if not mat_eq(self.maps[e], ident):
            raise DomainError("phi at the identity must be the identity map")
        gen_units = [(i, i + 1) for i in range(n - 1)] + [
            (i + 1, i) for i in range(n - 1)
        ]
        if n == 1:
            gen_units = [(0, 0)]
        for g in G.elements():
            # identity element maps to the identity matrix
            img_id = mat_zero(n)
            for k in range(n):
                img_id = mat_add(img_id, self.unit_image(g, k, k))
            if not mat_eq(img_id, mat_eye(n)):
                raise DomainError("automorphism does not fix the unit")
            # multiplicativity on generating units extends to everything
            for (i, j) in gen_units:
                for (k, l) in gen_units:
                    lhs = mat_mul(self.unit_image(g, i, j), self.unit_image(g, k, l))
                    rhs = (
                        self.unit_image(g, i, l) if j == k else mat_zero(n)
                    )
                    if not mat_eq(lhs, rhs):
                        raise DomainError("map is not multiplicative on units")
        # group law, on generators of G against everything
        gens = _group_generators(G)
        for g in gens:
            for h in G.elements():
                gh = G.mul(g, h)
                for (i, j) in gen_units:
                    lhs = self.apply(g, self.unit_image(h, i, j))
                    rhs = self.unit_image(gh, i, j)
                    if not mat_eq(lhs, rhs):
                        raise DomainError("maps do not respect the group law")
        if self.lift is not None:
            for g in G.elements():
                f = self.lift[g]
                finv = mat_inverse(f)
                if finv is None:
                    raise DomainError("lift matrix is singular")
                for (i, j) in gen_units:
                    if not mat_eq(
                        self.unit_image(g, i, j),
                        mat_mul(mat_mul(f, mat_unit(n, i, j)), finv),
                    ):
                        raise DomainError("lift does not implement the action")


def _group_generators(G: FiniteGroup) -> list:
    gens = []
    have = {G.identity}
    for x in G.elements():
        if x in have:
            continue
        gens.append(x)
        frontier = list(have)
        have.add(x)
        queue = [x]
        while queue:
            y = queue.pop()
            for z in list(have):
                for w in (G.mul(y, z), G.mul(z, y)):
                    if w not in have:
                        have.add(w)
                        queue.append(w)
        if len(have) == G.order:
            break
    return gens


def action_from_conjugation(G: FiniteGroup, units, level: int = 1,
                            with_lift: bool = False) -> AlgebraAction:
    """Build an action from matrices u_g, phi_g = conjugation by u_g."""
    n = len(units[0])
    alg = MatrixAlgebra(n, level)
    maps = []
    for g in G.elements():
        u = units[g]
        uinv = mat_inverse(u)
        if uinv is None:
            raise DomainError("conjugating matrix is singular")
        cols = []
        for i in range(n):
            for j in range(n):
                img = mat_mul(mat_mul(u, mat_unit(n, i, j)), uinv)
                cols.append(vec_of(img))
        M = tuple(
            tuple(cols[c][r] for c in range(n * n)) for r in range(n * n)
        )
        maps.append(M)
    lift = tuple(units[g] for g in G.elements()) if with_lift else None
    return AlgebraAction(alg, G, maps, lift)


# -- Skolem-Noether witnesses ---------------------------------------------------


def inner_witness(A: MatrixAlgebra, phi, act: AlgebraAction = None, g: int = None):
    """An invertible f with phi(b) = f b f^-1 for all b.

    The solution space of phi(b) f = f b is one-dimensional; the basis
    vector is scaled so its first nonzero entry (row-major) equals 1.
    `phi` may be given as the n^2 x n^2 unit-image matrix, or via
    (act, g).
    """
    if act is not None:
        n = act.algebra.size
        unit_image = lambda i, j: act.unit_image(g, i, j)
    else:
        n = A.size
        M = phi

        def unit_image(i, j):
            col = i * n + j
            return mat_from_vec(tuple(M[r][col] for r in range(n * n)), n)

    # For an inner phi = conj by f, sum_k phi(E_k1) E_jk = (f^-1)_{1j} f,
    # so scanning j finds a nonzero multiple of f without a big solve.
    candidate = None
    for j in range(n):
        F = mat_zero(n)
        for k in range(n):
            F = mat_add(F, mat_mul(unit_image(k, 0), mat_unit(n, j, k)))
        if not mat_is_zero(F):
            candidate = F
            break
    if candidate is None:
        raise DomainError("not an inner automorphism (no witness)")
    # normalize: first nonzero entry, row-major, becomes 1
    scale = None
    for row in candidate:
        for x in row:
            if not x.is_zero():
                scale = x
                break
        if scale is not None:
            break
    f = mat_scale(CycloNumber.one() / scale, candidate)
    if mat_inverse(f) is None:
        raise DomainError("witness is singular; phi is not an automorphism")
    # verify the intertwining relation on all matrix units
    for i in range(n):
        for j in range(n):
            if not mat_eq(
                mat_mul(unit_image(i, j), f), mat_mul(f, mat_unit(n, i, j))
            ):
                raise DomainError("witness fails the intertwining equation")
    return f


# -- the anomaly 2-cocycle -------------------------------------------------------


@dataclass(frozen=True)
class AnomalyCocycle2:
    """Multiplicative anomaly cocycle c(g, h) = f_g f_h f_{gh}^{-1}.

    When every value is a root of unity, `mu_table` holds the additive
    picture and `cochain`/`cohomology_class` locate it in H^2(G; Z/m)
    with m the lcm of the value orders.
    """

    group: FiniteGroup
    values: tuple  # |G| x |G| CycloNumber
    witnesses: tuple  # the chosen f_g
    mu_table: tuple | None
    modulus: int | None
    cochain: Cochain | None
    cohomology_class: object | None

    def value(self, g: int, h: int) -> CycloNumber:
        return self.values[g][h]


def anomaly_cocycle(act: AlgebraAction) -> AnomalyCocycle2:
    G = act.group
    n = act.algebra.size
    witnesses = []
    for g in G.elements():
        if g == G.identity:
            witnesses.append(mat_eye(n))
        else:
            witnesses.append(inner_witness(act.algebra, None, act=act, g=g))
    values = []
    for g in G.elements():
        row = []
        for h in G.elements():
            fg, fh = witnesses[g], witnesses[h]
            fgh_inv = mat_inverse(witnesses[G.mul(g, h)])
            c = mat_mul(mat_mul(fg, fh), fgh_inv)
            # must be a scalar matrix
            s = c[0][0]
            for i in range(n):
                for j in range(n):
                    want = s if i == j else CycloNumber.zero()
                    if not (c[i][j] == want):
                        raise ConsistencyError(
                            "anomaly value is not scalar; the action is not "
                            "by algebra automorphisms"
                        )
            row.append(s)
        values.append(tuple(row))
    # 2-cocycle identity c(g,h) c(gh,k) = c(h,k) c(g,hk)
    for g in G.elements():
        for h in G.elements():
            for k in G.elements():
                lhs = values[g][h] * values[G.mul(g, h)][k]
                rhs = values[h][k] * values[g][G.mul(h, k)]
                if not (lhs == rhs):
                    raise ConsistencyError("anomaly fails the cocycle identity")
    mus = []
    for g in G.elements():
        for h in G.elements():
            mu = values[g][h].is_root_of_unity()
            if mu is None:
                return AnomalyCocycle2(
                    G, tuple(values), tuple(witnesses), None, None, None, None
                )
            mus.append(mu)
    m = 1
    for mu in mus:
        m = lcm(m, mu.order)
    table = []
    it = iter(mus)
    for g in G.elements():
        for h in G.elements():
            table.append(int(next(it).value * m) % m)
    cochain = Cochain(G, 2, m, tuple(table))
    H = cohomology_group(G, 2, m)
    cls = H.class_of(cochain)
    return AnomalyCocycle2(
        G, tuple(values), tuple(witnesses),
        tuple(MuElement(mu.value) for mu in mus), m, cochain, cls,
    )


def antisymmetry_pairing(cocycle: AnomalyCocycle2):
    """c(g, h) / c(h, g) on commuting pairs: a coboundary invariant."""
    G = cocycle.group
    out = {}
    for g in G.elements():
        for h in G.elements():
            if G.mul(g, h) == G.mul(h, g):
                out[(g, h)] = cocycle.values[g][h] / cocycle.values[h][g]
    return out


# -- graded commutant -------------------------------------------------------------


@dataclass(frozen=True)
class GradedCommutant:
    spaces: tuple  # per g, a tuple of basis matrices of B_g
    fixed_basis: tuple  # basis of A^G


def graded_commutant(act: AlgebraAction) -> GradedCommutant:
    G = act.group
    n = act.algebra.size
    spaces = []
    for g in G.elements():
        f = (
            mat_eye(n)
            if g == G.identity
            else inner_witness(act.algebra, None, act=act, g=g)
        )
        # B_g = {b : b a = phi_g(a) b} = K f, one-dimensional
        spaces.append((f,))
    # fixed algebra: joint kernel of (phi_g - id) on the n^2-dim space
    rows = []
    for g in G.elements():
        M = act.maps[g]
        for r in range(n * n):
            row = list(M[r])
            row[r] = row[r] - CycloNumber.one()
            rows.append(row)
    fixed = _nullspace(rows, n * n)
    fixed_mats = tuple(mat_from_vec(v, n) for v in fixed)
    # A^G must be closed under multiplication
    vecs = [list(vec_of(F)) for F in fixed_mats]
    for F1 in fixed_mats:
        for F2 in fixed_mats:
            if not in_span(vecs, list(vec_of(mat_mul(F1, F2)))):
                raise ConsistencyError("fixed space is not a subalgebra")
    # double commutant: the commutant of span(B_g) equals A^G
    rows = []
    for (f,) in spaces:
        for r in range(n):
            for c in range(n):
                # equation row for [x, f] = 0 in terms of x entries
                row = [CycloNumber.zero() for _ in range(n * n)]
                for k in range(n):
                    row[r * n + k] = row[r * n + k] + f[k][c]
                    row[k * n + c] = row[k * n + c] - f[r][k]
                rows.append(row)
    comm = _nullspace(rows, n * n)
    if len(comm) != len(fixed_mats):
        raise ConsistencyError("double commutant dimension mismatch")
    for v in comm:
        if not in_span(vecs, list(v)):
            raise ConsistencyError("double commutant does not equal A^G")
    return GradedCommutant(tuple(spaces), fixed_mats)


def _nullspace(rows, ncols):
    reduced, pivots = _row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [CycloNumber.zero() for _ in range(ncols)]
        v[fc] = CycloNumber.one()
        for i, pc in enumerate(pivots):
            v[pc] = -reduced[i][fc]
        basis.append(tuple(v))
    return tuple(basis)


# -- gauging: the corner algebra ---------------------------------------------------


@dataclass(frozen=True)
class GaugingResult:
    rank: int
    algebra: MatrixAlgebra | None  # None for the zero algebra
    idempotent: tuple
    corner_map: tuple | None  # (rows D, cols C) with x -> D x C an iso onto Mat_rank


def gauge_algebra(act: AlgebraAction) -> GaugingResult:
    if act.lift is None:
        raise DomainError("gauging needs a multiplicative lift")
    G = act.group
    n = act.algebra.size
    # the lift must be a genuine homomorphism: anomaly trivialized
    for g in G.elements():
        for h in G.elements():
            if not mat_eq(
                mat_mul(act.lift[g], act.lift[h]), act.lift[G.mul(g, h)]
            ):
                raise DomainError(
                    "lift is not a homomorphism: the anomaly is not trivialized"
                )
    e = mat_zero(n)
    for g in G.elements():
        e = mat_add(e, act.lift[g])
    inv_order = CycloNumber.rational(Fraction(1, G.order))
    e = mat_scale(inv_order, e)
    if not mat_eq(mat_mul(e, e), e):
        raise ConsistencyError("averaging element is not idempotent")
    # rank = trace, an integer
    tr = sum((e[i][i] for i in range(n)), CycloNumber.zero())
    if not tr.is_rational() or tr.as_rational().denominator != 1:
        raise ConsistencyError("idempotent trace is not an integer")
    k = int(tr.as_rational())
    if k == 0:
        if not mat_is_zero(e):
            raise ConsistencyError("trace-zero idempotent that is not zero")
        return GaugingResult(0, None, e, None)
    # column space basis of e
    cols = [[e[r][c] for r in range(n)] for c in range(n)]
    reduced, pivots = _row_reduce(cols)
    C = tuple(
        tuple(e[r][c] for c in pivots) for r in range(n)
    )  # n x k, basis columns
    # solve C D = e for D (k x n): coordinates of e's columns in the basis
    D_rows = _solve_in_basis(C, e, n, k)
    # sanity: dim eAe = k^2
    vecs = []
    for i in range(n):
        for j in range(n):
            exe = mat_mul(mat_mul(e, mat_unit(n, i, j)), e)
            vecs.append(list(vec_of(exe)))
    if span_rank(vecs) != k * k:
        raise ConsistencyError("corner algebra does not have dimension k^2")
    return GaugingResult(
        k, MatrixAlgebra(k, act.algebra.base_level), e, (D_rows, C)
    )


def _solve_in_basis(C, e, n, k):
    """D with C @ D = e; C is n x k of full column rank."""
    # row reduce [C | e] and read off D
    aug = [list(C[r]) + list(e[r]) for r in range(n)]
    reduced, pivots = _row_reduce(aug)
    D = [[CycloNumber.zero() for _ in range(n)] for _ in range(k)]
    for i, pc in enumerate(pivots):
        if pc >= k:
            raise ConsistencyError("corner basis is rank deficient")
        for c in range(n):
            D[pc][c] = reduced[i][k + c]
    return tuple(tuple(row) for row in D)


def corner_iso_check(res: GaugingResult, act: AlgebraAction) -> bool:
    """x -> D x C is multiplicative and unital from eAe onto Mat_k."""
    if res.rank == 0:
        return True
    D, C = res.corner_map
    n = act.algebra.size
    e = res.idempotent
    ident = mat_mul(D, C)
    if not mat_eq(ident, mat_eye(res.rank)):
        return False
    probe = [
        mat_mul(mat_mul(e, mat_unit(n, i, j)), e)
        for i in range(n)
        for j in range(n)
    ]
    for x in probe[: n + 2]:
        for y in probe[: n + 2]:
            lhs = mat_mul(D, mat_mul(mat_mul(x, y), C))
            rhs = mat_mul(mat_mul(D, mat_mul(x, C)), mat_mul(D, mat_mul(y, C)))
            if not mat_eq(lhs, rhs):
                return False
    return True


# -- Galois twist of the anomaly ----------------------------------------------------


def galois_twist_check(act: AlgebraAction, n_unit: int) -> dict:
    """Twist the action by sigma_n and compare anomaly classes.

    The anomaly of the twisted action must be n times the original in
    H^2(G; Z/M), at a modulus M large enough to absorb witness rescaling
    (all rescalings are roots of unity because Hom(G, K^x/roots) = 0).
    """
    base = anomaly_cocycle(act)
    if base.modulus is None:
        raise DomainError("anomaly values are not roots of unity")
    levels = [v.level for row in base.values for v in row]
    twisted_act = act.galois_twisted(n_unit)
    twisted = anomaly_cocycle(twisted_act)
    if twisted.modulus is None:
        raise ConsistencyError("twisted anomaly lost root-of-unity values")
    levels += [v.level for row in twisted.values for v in row]
    level = 1
    for lv in levels:
        level = lcm(level, lv)
    if gcd(n_unit, level) != 1:
        raise DomainError(f"{n_unit} is not a unit mod the value level {level}")
    M = lcm(base.modulus, twisted.modulus)
    M = lcm(M, 2 * level)
    H = cohomology_group(act.group, 2, M)
    c_old = H.class_of(base.cochain.lift_modulus(M // base.modulus))
    c_new = H.class_of(twisted.cochain.lift_modulus(M // twisted.modulus))
    expected = c_old.scaled(n_unit % M)
    return {
        "n": n_unit,
        "modulus": M,
        "old_class": list(c_old.coordinates),
        "twisted_class": list(c_new.coordinates),
        "expected_first_power": list(expected.coordinates),
        "first_power_law_holds": c_new.coordinates == expected.coordinates,
    }


# -- catalog actions -----------------------------------------------------------------


def trivial_action(G: FiniteGroup, n: int = 2) -> AlgebraAction:
    units = {g: mat_eye(n) for g in G.elements()}
    return action_from_conjugation(G, units, level=1)


def pauli_action() -> AlgebraAction:
    """(Z/2)^2 on Mat_2 by conjugation with I, X, Z, XZ; anomalous."""
    from .catalog import named_group

    G = named_group("Z/2xZ/2")
    st = G.abelian_structure()
    one, zero = CycloNumber.one(), CycloNumber.zero()
    X = ((zero, one), (one, zero))
    Z = ((one, zero), (zero, -one))
    units = {}
    for g in G.elements():
        a, b = st.coordinates[g]
        u = mat_eye(2)
        if a:
            u = mat_mul(u, X)
        if b:
            u = mat_mul(u, Z)
        units[g] = u
    return action_from_conjugation(G, units, level=4)


def diag_gauge_action() -> AlgebraAction:
    """Z/2 on Mat_2 by diag(1,-1), with the obvious lift; gaugeable."""
    from .catalog import named_group

    G = named_group("Z/2")
    one, zero = CycloNumber.one(), CycloNumber.zero()
    units = {0: mat_eye(2), 1: ((one, zero), (zero, -one))}
    return action_from_conjugation(G, units, level=1, with_lift=True)


def minus_identity_lift_action() -> AlgebraAction:
    """Z/2 acting trivially with lift -1: gauging collapses to zero."""
    from .catalog import named_group

    G = named_group("Z/2")
    minus = mat_scale(CycloNumber.rational(-1), mat_eye(2))
    units = {0: mat_eye(2), 1: minus}
    return action_from_conjugation(G, units, level=1, with_lift=True)


def clock_action(n: int) -> AlgebraAction:
    """Z/n on Mat_n by the clock matrix: trivial anomaly class."""
    from .catalog import cyclic

    G = cyclic(n)
    zeta = CycloNumber.zeta(n)
    clock = tuple(
        tuple(zeta**i if i == j else CycloNumber.zero() for j in range(n))
        for i in range(n)
    )
    units = {}
    for g in G.elements():
        u = mat_eye(n)
        for _ in range(g):
            u = mat_mul(u, clock)
        units[g] = u
    return action_from_conjugation(G, units, level=n)


def heisenberg44_action() -> AlgebraAction:
    """Z/4 x Z/4 on Mat_4 by clock and shift: anomaly of order 4."""
    from .catalog import named_group

    G = named_group("Z/4xZ/4")
    st = G.abelian_structure()
    zeta = CycloNumber.zeta(4)
    n = 4
    clock = tuple(
        tuple(zeta**i if i == j else CycloNumber.zero() for j in range(n))
        for i in range(n)
    )
    shift = tuple(
        tuple(
            CycloNumber.one() if i == (j + 1) % n else CycloNumber.zero()
            for j in range(n)
        )
        for i in range(n)
    )
    units = {}
    for g in G.elements():
        a, b = st.coordinates[g]
        u = mat_eye(n)
        for _ in range(a):
            u = mat_mul(u, shift)
        for _ in range(b):
            u = mat_mul(u, clock)
        units[g] = u
    return action_from_conjugation(G, units, level=4)


def catalog_actions() -> list:
    from .catalog import named_group

    return [
        ("trivial Z/2 on Mat2", trivial_action(named_group("Z/2"))),
        ("pauli (Z/2)^2 on Mat2", pauli_action()),
        ("diag Z/2 on Mat2", diag_gauge_action()),
        ("clock Z/3 on Mat3", clock_action(3)),
        ("heisenberg (Z/4)^2 on Mat4", heisenberg44_action()),
    ]
