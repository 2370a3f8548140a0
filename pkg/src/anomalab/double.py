"""Twisted double algebras and their exact modular data.

The double of a group G twisted by a normalized 3-cocycle alpha (values
in Z/m, additively) has basis (g, x) in G x G and product

    (g, x)(h, y) = [g == x h x^-1] * theta_g(x, y) * (g, xy),

with theta_g(x, y) = alpha(g,x,y) - alpha(x, x^-1 g x, y)
                   + alpha(x, y, (xy)^-1 g (xy))   (additively).

Associativity of this product is equivalent to the cocycle condition
and is checked exhaustively for small groups.  Simple modules are
labelled by a conjugacy class and an irreducible projective character
of the centralizer with factor set theta restricted to it; S and T come
from the commuting-pair character sum and are verified against the
modular identity suite before anything is returned.  If the suite
fails, the documented fallback is the inverse twist (alpha -> -alpha).
"""

import itertools
from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from . import cyctensor
from .caps import get_caps
from .cohomology import Cochain, cohomology_group, stable_classes
from .cyclotomic import CycloNumber, phi, power_rows
from .errors import ConsistencyError, DomainError
from .groups import FiniteGroup, Subgroup
from .projchar import ProjectiveCharacter, projective_characters


@dataclass(frozen=True)
class TwistedDoubleAlgebra:
    group: FiniteGroup
    alpha: Cochain
    theta: np.ndarray  # (n, n, n) additive phases mod m: theta[g, x, y]

    @property
    def modulus(self) -> int:
        return self.alpha.modulus

    @property
    def dimension(self) -> int:
        return self.group.order ** 2

    def product(self, a: tuple, b: tuple):
        """(g,x)*(h,y) -> None (zero) or ((g, xy), additive phase)."""
        (g, x), (h, y) = a, b
        G = self.group
        if g != G.conj(x, h):
            return None
        return (g, G.mul(x, y)), int(self.theta[g, x, y])


def _theta_table(G: FiniteGroup, alpha: Cochain) -> np.ndarray:
    n = G.order
    m = alpha.modulus
    mult = G._np
    inv = G._npinv
    tab = alpha._np
    g, x, y = np.meshgrid(
        np.arange(n), np.arange(n), np.arange(n), indexing="ij"
    )
    xy = mult[x, y]
    conj_x = mult[mult[inv[x], g], x]        # x^-1 g x
    conj_xy = mult[mult[inv[xy], g], xy]     # (xy)^-1 g (xy)

    def a3(u, v, w):
        return tab[(u * n + v) * n + w]

    out = a3(g, x, y) - a3(x, conj_x, y) + a3(x, y, conj_xy)
    return np.mod(out, m)


def build_double(G: FiniteGroup, alpha: Cochain,
                 _skip_cocycle_check: bool = False) -> TwistedDoubleAlgebra:
    if alpha.group != G or alpha.degree != 3:
        raise DomainError("need a degree-3 cochain on the same group")
    if not _skip_cocycle_check and not alpha.is_cocycle():
        raise DomainError("alpha is not a 3-cocycle")
    m = alpha.modulus
    theta = _theta_table(G, alpha)
    n = G.order
    # theta must be normalized in both arguments
    e = G.identity
    if theta[:, e, :].any() or theta[:, :, e].any():
        raise ConsistencyError("theta is not normalized")
    # associativity: theta_g(x,y) + theta_g(xy,z) == theta_h(y,z) + theta_g(x,yz)
    # with h = x^-1 g x, over all (g, x, y, z) with g ranging over G
    mult, inv = G._np, G._npinv
    cap = get_caps()["double_exhaustive"]
    if n <= cap:
        idx = np.arange(n)
        g, x, y, z = np.meshgrid(idx, idx, idx, idx, indexing="ij")
    else:
        rng = np.random.default_rng(0)
        g, x, y, z = rng.integers(0, n, size=(4, 100_000))
    h = mult[mult[inv[x], g], x]
    xy = mult[x, y]
    yz = mult[y, z]
    lhs = theta[g, x, y] + theta[g, xy, z]
    rhs = theta[h, y, z] + theta[g, x, yz]
    if ((lhs - rhs) % m).any():
        raise ConsistencyError(
            "double algebra product is not associative "
            "(the twist is not a valid 3-cocycle)"
        )
    return TwistedDoubleAlgebra(G, alpha, theta)


def unit_element_check(D: TwistedDoubleAlgebra) -> bool:
    """sum_g (g, e) acts as the unit on every basis element."""
    G = D.group
    e = G.identity
    for h in G.elements():
        for y in G.elements():
            # left: (g, e)(h, y) nonzero only for g == h, phase theta_h(e, y)
            if int(D.theta[h, e, y]) % D.modulus:
                return False
            # right: (h, y)(g, e) nonzero only for g == y^-1 h y
            g = G.conj(G.inverse(y), h)
            if int(D.theta[h, y, e]) % D.modulus:
                return False
    return True


@dataclass(frozen=True)
class SimpleLabel:
    """A simple object: a conjugacy class plus a projective character of
    the centralizer of its representative."""

    class_rep: int
    centralizer: Subgroup
    character: ProjectiveCharacter
    tvalue: CycloNumber

    @property
    def dimension(self) -> int:
        return self.character.dim

    @property
    def class_size(self) -> int:
        G = self.centralizer.parent
        return G.order // self.centralizer.order

    @property
    def quantum_dimension(self) -> int:
        return self.dimension * self.class_size

    def to_json(self) -> dict:
        return {
            "class_rep": self.class_rep,
            "dimension": self.dimension,
            "class_size": self.class_size,
            "T": self.tvalue.to_json(),
            "character": [v.to_json() for v in self.character.values],
        }


def simple_modules(D: TwistedDoubleAlgebra, seed: int = 0) -> tuple:
    """Simple objects, ordered by (class rep, T value, dimension, table)."""
    G = D.group
    m = D.modulus
    labels = []
    for a0 in G.conjugacy().representatives:
        sub = G.centralizer(a0)
        C = sub.group
        emb = np.asarray(sub.to_parent, np.int64)
        factor = D.theta[a0][np.ix_(emb, emb)]
        chars = projective_characters(C, factor, m, seed=seed)
        a_sub = sub.from_parent[a0]
        for ch in chars:
            tv = ch.values[a_sub] / ch.values[C.identity]
            if tv.is_root_of_unity() is None:
                raise ConsistencyError(
                    "T entry is not a root of unity; the slant representative "
                    "needs renormalization"
                )
            labels.append(SimpleLabel(a0, sub, ch, tv))
    level = m
    for lab in labels:
        for v in lab.character.values:
            level = lcm(level, v.level)
        level = lcm(level, lab.tvalue.level)

    def key(lab: SimpleLabel):
        tvec = tuple(int(c) for c in cyctensor.from_cyclo(lab.tvalue, level))
        table = tuple(
            tuple(int(c) for c in cyctensor.from_cyclo(v, level))
            for v in lab.character.values
        )
        return (lab.class_rep, tvec, lab.dimension, table)

    labels.sort(key=key)
    return tuple(labels)


@dataclass(frozen=True)
class ModularData:
    labels: tuple
    S: tuple  # tuple of tuples of CycloNumber
    T: tuple  # tuple of CycloNumber
    level: int
    seed: int
    group_order: int
    convention: str = "standard"

    @property
    def size(self) -> int:
        return len(self.labels)

    def unit_index(self) -> int:
        return self._unit

    def to_json(self) -> dict:
        return {
            "labels": [lab.to_json() for lab in self.labels],
            "S": [[z.to_json() for z in row] for row in self.S],
            "T": [z.to_json() for z in self.T],
            "level": self.level,
            "seed": self.seed,
            "convention": self.convention,
        }


def _full_double_characters(D, labels, level, pair_x, pair_y, swap=False):
    """X[label, pair] = trace of (b, x) on the label's module, where
    (b, x) = (pair_y, pair_x) normally and (pair_x, pair_y) when swapped."""
    G = D.group
    m = D.modulus
    n = G.order
    conj = G.conjugacy()
    d = phi(level)
    rowsL = power_rows(level)
    L = len(labels)
    P = len(pair_x)
    out = np.zeros((L, P, d), np.int64)
    bs = pair_x if swap else pair_y
    xs = pair_y if swap else pair_x
    # transversal: smallest t with t * rep * t^-1 = b
    k_of = np.zeros(n, np.int64)
    for b in G.elements():
        rep = conj.representatives[conj.class_of[b]]
        for t in G.elements():
            if G.conj(t, rep) == b:
                k_of[b] = t
                break
    for li, lab in enumerate(labels):
        a0 = lab.class_rep
        sub = lab.centralizer
        charvecs = np.stack(
            [cyctensor.from_cyclo(v, level) for v in lab.character.values]
        )
        cls_idx = conj.class_of[a0]
        for p in range(P):
            b, x = int(bs[p]), int(xs[p])
            if conj.class_of[b] != cls_idx:
                continue
            k = int(k_of[b])
            c_parent = G.conj(G.inverse(k), x)
            c_sub = sub.from_parent[c_parent]
            phase = (int(D.theta[b, x, k]) - int(D.theta[b, k, c_parent])) % m
            t = (phase * (level // m)) % level
            vec = charvecs[c_sub]
            if t == 0:
                out[li, p] = vec
            else:
                acc = np.zeros(d, np.int64)
                for a in range(d):
                    if vec[a]:
                        acc += int(vec[a]) * rowsL[(a + t) % level]
                out[li, p] = acc
    return out


def _modular_tensors(D: TwistedDoubleAlgebra, labels, level):
    G = D.group
    mult = G._np
    xs, ys = np.nonzero(mult == mult.T)
    XA = _full_double_characters(D, labels, level, xs, ys, swap=False)
    XB = _full_double_characters(D, labels, level, xs, ys, swap=True)
    # conjugated commuting-pair sum: the conjugation makes the chirality
    # consistent with T = chi(a)/chi(e), as the identity suite pins down
    st = cyctensor.conjugate(cyctensor.pair_contract(XA, XB, level), level)
    tt = np.stack([cyctensor.from_cyclo(lab.tvalue, level) for lab in labels])
    return st, tt


def _identity_failures(st, tt, level, order, labels):
    """Names of failed modular identities; empty when all hold."""
    fails = []
    L = st.shape[0]
    d = st.shape[2]
    if not np.array_equal(st, st.transpose(1, 0, 2)):
        fails.append("S symmetric")
    unit = _unit_position(labels)
    # unit row: quantum dimensions, strictly positive integers
    qdims = []
    ok = True
    for j in range(L):
        v = st[unit, j]
        if v[1:].any() or v[0] <= 0:
            ok = False
            break
        qdims.append(int(v[0]))
    if not ok:
        fails.append("positive integral unit row")
    conj_st = cyctensor.conjugate(st, level)
    gram = cyctensor.mat_mult(st, conj_st.transpose(1, 0, 2), level)
    eye = np.zeros((L, L, d), np.int64)
    for i in range(L):
        eye[i, i, 0] = order * order
    if not np.array_equal(gram, eye):
        fails.append("S unitary")
    stt = cyctensor.entry_mult(st, tt[None, :, :], level)
    cube = cyctensor.mat_mult(
        cyctensor.mat_mult(stt, stt, level), stt, level
    )
    s2 = cyctensor.mat_mult(st, st, level)
    if not np.array_equal(cube, order * s2):
        fails.append("(ST)^3 == S^2")
    # S^2 is |G|^2 times a permutation (charge conjugation)
    perm = np.full(L, -1, np.int64)
    ok = True
    for i in range(L):
        for j in range(L):
            v = s2[i, j]
            if not v.any():
                continue
            if v[1:].any() or v[0] != order * order or perm[i] != -1:
                ok = False
                break
            perm[i] = j
        if not ok or perm[i] == -1:
            ok = False
            break
    if not (ok and sorted(perm.tolist()) == list(range(L))):
        fails.append("S^2 permutation")
    return fails


def _unit_position(labels) -> int:
    G = labels[0].centralizer.parent
    for i, lab in enumerate(labels):
        if lab.class_rep == G.identity and lab.dimension == 1:
            if all(v == 1 for v in lab.character.values):
                return i
    raise ConsistencyError("no unit label found")


def modular_data(D: TwistedDoubleAlgebra, seed: int = 0) -> ModularData:
    """Exact S and T, validated against the modular identity suite."""
    md, fails = _modular_data_attempt(D, seed)
    if not fails:
        return md
    # documented fallback: inverse twist
    D2 = build_double(D.group, D.alpha.scaled(-1))
    md2, fails2 = _modular_data_attempt(D2, seed, convention="inverse")
    if not fails2:
        return md2
    raise ConsistencyError(
        "modular identity suite failed: " + ", ".join(fails)
        + " (inverse twist also failed: " + ", ".join(fails2) + ")"
    )


def _modular_data_attempt(D, seed, convention="standard"):
    G = D.group
    labels = simple_modules(D, seed=seed)
    m = D.modulus
    level = m
    for lab in labels:
        for v in lab.character.values:
            level = lcm(level, v.level)
        level = lcm(level, lab.tvalue.level)
    st, tt = _modular_tensors(D, labels, level)
    fails = _identity_failures(st, tt, level, G.order, labels)
    if fails:
        return None, fails
    md = ModularData(
        labels=labels,
        S=_public_s(st, level, G.order),
        T=tuple(lab.tvalue for lab in labels),
        level=level,
        seed=seed,
        group_order=G.order,
        convention=convention,
    )
    object.__setattr__(md, "_st", st)
    object.__setattr__(md, "_tt", tt)
    object.__setattr__(md, "_unit", _unit_position(labels))
    return md, []


def _public_s(st, level, order):
    L = st.shape[0]
    return tuple(
        tuple(cyctensor.to_cyclo(st[i, j], level, denom=order) for j in range(L))
        for i in range(L)
    )


def verlinde_fusion(MD: ModularData) -> np.ndarray:
    """Fusion coefficients N[i, j, k] by the Verlinde formula, exactly."""
    st = MD._st
    level = MD.level
    L = st.shape[0]
    u = MD.unit_index()
    qdims = [int(st[u, j, 0]) for j in range(L)]
    if any(d <= 0 for d in qdims):
        raise ConsistencyError("unit row is not positive")
    Dl = 1
    for d_ in qdims:
        Dl = lcm(Dl, d_)
    weights = np.array([Dl // d_ for d_ in qdims], np.int64)
    conj_st = cyctensor.conjugate(st, level)
    wconj = conj_st * weights[None, :, None]
    # P[i, j, l, :] = S~[i, l] * S~[j, l]
    P = cyctensor.entry_mult(st[:, None, :, :], st[None, :, :, :], level)
    denom = MD.group_order**2 * Dl
    out = np.zeros((L, L, L), np.int64)
    for k in range(L):
        E = cyctensor.entry_mult(P, wconj[k][None, None, :, :], level)
        tot = E.sum(axis=2)
        if tot[..., 1:].any():
            raise ConsistencyError("Verlinde sum is not rational")
        num = tot[..., 0]
        if (num % denom).any():
            raise ConsistencyError("Verlinde coefficient is not an integer")
        vals = num // denom
        if (vals < 0).any():
            raise ConsistencyError("negative Verlinde coefficient")
        out[:, :, k] = vals
    return out


def conjugate_modular_data(MD: ModularData, n: int) -> ModularData:
    """Entrywise Galois conjugation of S and T; labels unchanged."""
    if gcd(n, MD.level) != 1:
        raise DomainError(f"{n} is not a unit mod level {MD.level}")
    st = cyctensor.apply_galois(MD._st, n, MD.level)
    tt = cyctensor.apply_galois(MD._tt, n, MD.level)
    md = ModularData(
        labels=MD.labels,
        S=_public_s(st, MD.level, MD.group_order),
        T=tuple(
            cyctensor.to_cyclo(tt[i], MD.level) for i in range(tt.shape[0])
        ),
        level=MD.level,
        seed=MD.seed,
        group_order=MD.group_order,
        convention=MD.convention,
    )
    object.__setattr__(md, "_st", st)
    object.__setattr__(md, "_tt", tt)
    object.__setattr__(md, "_unit", MD._unit)
    return md


def find_label_equivalence(MD1: ModularData, MD2: ModularData):
    """A bijection p and signs e with T2[p(i)] == T1[i] and
    S2[p(i), p(j)] == e_i e_j S1[i, j]; None when there is none."""
    L = MD1.size
    if MD2.size != L:
        return None
    level = lcm(MD1.level, MD2.level)
    # compare |G2| * S~1 against |G1| * S~2 so both sides are |G1||G2| S
    A = cyctensor.lift_level(MD1._st, MD1.level, level) * MD2.group_order
    B = cyctensor.lift_level(MD2._st, MD2.level, level) * MD1.group_order
    TA = cyctensor.lift_level(MD1._tt, MD1.level, level)
    TB = cyctensor.lift_level(MD2._tt, MD2.level, level)

    def fp(S, T, i):
        return (tuple(T[i]), tuple(S[i, i]))

    groups = {}
    for j in range(L):
        groups.setdefault(fp(B, TB, j), []).append(j)
    order = [MD1.unit_index()] + [
        i for i in range(L) if i != MD1.unit_index()
    ]
    perm = [-1] * L
    eps = [0] * L
    used = [False] * L

    def pair_ok(i, j, i2, j2, sign_prod):
        want = A[i, i2] * sign_prod
        return np.array_equal(B[j, j2], want)

    def extend(pos):
        if pos == L:
            return True
        i = order[pos]
        # prefer the identity assignment so MD vs itself returns identity
        cands = sorted(groups.get(fp(A, TA, i), []), key=lambda j: (j != i, j))
        for j in cands:
            if used[j]:
                continue
            if pos == 0:
                sign = 1
            else:
                u1, ju = order[0], perm[order[0]]
                # the unit row of MD1 is nowhere zero, so it anchors signs
                if np.array_equal(B[ju, j], A[u1, i]):
                    sign = 1
                elif np.array_equal(B[ju, j], -A[u1, i]):
                    sign = -1
                else:
                    continue
            ok = True
            for prev in range(1, pos):
                i2 = order[prev]
                j2 = perm[i2]
                if not pair_ok(i, j, i2, j2, sign * eps[i2]):
                    ok = False
                    break
            if ok and pos > 0:
                if not pair_ok(i, j, i, j, 1):
                    ok = False
            if not ok:
                continue
            perm[i] = j
            eps[i] = sign
            used[j] = True
            if extend(pos + 1):
                return True
            perm[i] = -1
            eps[i] = 0
            used[j] = False
        return False

    if not extend(0):
        return None
    return tuple(perm), tuple(eps)


def galois_squared_check(
    G: FiniteGroup, alpha: Cochain, n: int, seed: int = 0
) -> dict:
    """Compare MD(n^2 * alpha) with the n^2-Galois conjugate of MD(alpha).

    Exploratory: a missing equivalence is a reported finding, not an
    error.  Forced cases (alpha == 0, or n^2 == 1 mod the modulus) must
    always produce an equivalence.
    """
    m = alpha.modulus
    if gcd(n, m * G.order) != 1:
        raise DomainError(f"{n} must be a unit mod {m * G.order}")
    md1 = modular_data(build_double(G, alpha), seed=seed)
    if gcd(n, md1.level) != 1:
        raise DomainError(f"{n} must be a unit mod the level {md1.level}")
    nsq_alpha = alpha.scaled(pow(n, 2, m) if m > 1 else 0)
    md_a = modular_data(build_double(G, nsq_alpha), seed=seed)
    md_b = conjugate_modular_data(md1, pow(n, 2, md1.level))
    eq = find_label_equivalence(md_a, md_b)
    forced = (not alpha._np.any()) or (pow(n, 2, m) == 1 % m if m >= 1 else True)
    report = {
        "group": G.name or f"order{G.order}",
        "modulus": m,
        "n": n,
        "n_squared_mod_m": pow(n, 2, m) if m > 1 else 0,
        "forced": bool(forced),
        "equivalence_found": eq is not None,
        "seed": seed,
        "level": md_a.level,
    }
    if eq is not None:
        report["permutation"] = list(eq[0])
        report["signs"] = list(eq[1])
    if forced and eq is None:
        raise ConsistencyError("a forced Galois equivalence is missing")
    return report


# -- the (G, alpha) catalog ---------------------------------------------------

CATALOG_FULL = ("Z/2", "Z/3", "Z/4", "Z/6", "Z/2xZ/2", "S3")
CATALOG_SAMPLED = {"D4": 6, "Q8": 4}
CATALOG_RAW_SAMPLED = {"A4": 2}


def catalog_cases():
    """Deterministic (name, group, alpha) list: full twist enumeration for
    the small groups, sampled twists for D4/Q8/A4."""
    from .catalog import named_group

    cases = []
    for name in CATALOG_FULL:
        G = named_group(name)
        S = stable_classes(G, 3, G.order)
        for coords, rep in S.class_list():
            cases.append((f"{name} alpha={list(coords)}", G, rep))
    for name, count in CATALOG_SAMPLED.items():
        G = named_group(name)
        S = stable_classes(G, 3, G.order)
        for coords, rep in S.class_list()[:count]:
            cases.append((f"{name} alpha={list(coords)}", G, rep))
    for name, count in CATALOG_RAW_SAMPLED.items():
        G = named_group(name)
        H = cohomology_group(G, 3, G.order)
        picks = [H.zero_class().representative]
        if H.basis_cocycles:
            picks.append(H.basis_cocycles[-1])
        for i, rep in enumerate(picks[:count]):
            cases.append((f"{name} sample={i}", G, rep))
    return cases
