"""Finite groups as explicit multiplication tables on indices 0..n-1."""

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm

import numpy as np

from . import linalg
from .caps import check_cap, get_caps
from .errors import DomainError


class FiniteGroup:
    """Immutable finite group given by its multiplication table.

    Element 0..order-1; the identity is located by scanning the table.
    Associativity, identity and inverse laws are validated exhaustively
    at construction for orders up to the `assoc_exhaustive` cap.
    """

    __slots__ = (
        "order", "mult", "identity", "inv", "name",
        "_np", "_npinv", "_hash", "_is_abelian", "_conjugacy",
        "_centralizers", "_orders", "_abelian_structure",
    )

    def __init__(self, mult, name=None):
        table = tuple(tuple(int(x) for x in row) for row in mult)
        n = len(table)
        if n == 0:
            raise DomainError("empty multiplication table")
        for row in table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise DomainError("multiplication table is not n x n over 0..n-1")
        self.order = n
        self.mult = table
        self.name = name
        self._np = np.array(table, dtype=np.int64)
        ident = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise DomainError("no identity element")
        self.identity = ident
        inv = [None] * n
        for x in range(n):
            for y in range(n):
                if table[x][y] == ident:
                    inv[x] = y
                    break
            if inv[x] is None or table[inv[x]][x] != ident:
                raise DomainError(f"element {x} has no two-sided inverse")
        self.inv = tuple(inv)
        self._npinv = np.array(self.inv, dtype=np.int64)
        if n <= get_caps()["assoc_exhaustive"]:
            M = self._np
            for a in range(n):
                if not np.array_equal(M[M[a], :], M[a, M]):
                    raise DomainError("multiplication table is not associative")
        else:
            rng = np.random.default_rng(0)
            for _ in range(20000):
                a, b, c = rng.integers(0, n, size=3)
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise DomainError("multiplication table is not associative")
        self._hash = hash((n, self.mult))
        self._is_abelian = None
        self._conjugacy = None
        self._centralizers = {}
        self._orders = None
        self._abelian_structure = None

    # -- basics --------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mult[self.mult[g][x]][self.inv[g]]

    def elements(self) -> range:
        return range(self.order)

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        out = self.identity
        while k:
            if k & 1:
                out = self.mult[out][x]
            x = self.mult[x][x]
            k >>= 1
        return out

    def element_order(self, x: int) -> int:
        if self._orders is None:
            orders = []
            for g in range(self.order):
                k, y = 1, g
                while y != self.identity:
                    y = self.mult[y][g]
                    k += 1
                orders.append(k)
            self._orders = tuple(orders)
        return self._orders[x]

    def exponent(self) -> int:
        return reduce(lcm, (self.element_order(x) for x in self.elements()), 1)

    @property
    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            self._is_abelian = bool(np.array_equal(self._np, self._np.T))
        return self._is_abelian

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.order == other.order
            and self.mult == other.mult
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or f"order {self.order}"
        return f"FiniteGroup({label})"

    # -- derived structure ---------------------------------------------

    def conjugacy(self) -> "ConjugacyData":
        if self._conjugacy is None:
            self._conjugacy = conjugacy_classes(self)
        return self._conjugacy

    def centralizer(self, g: int) -> "Subgroup":
        if g not in self._centralizers:
            self._centralizers[g] = centralizer(self, g)
        return self._centralizers[g]

    def abelian_structure(self) -> "AbelianStructure":
        if self._abelian_structure is None:
            self._abelian_structure = abelian_structure(self)
        return self._abelian_structure

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        out = {"order": self.order, "mult": [list(r) for r in self.mult]}
        if self.name:
            out["name"] = self.name
        return out


@dataclass(frozen=True)
class Subgroup:
    """A subgroup with its induced abstract group and the embedding map."""

    parent: FiniteGroup
    elements: tuple
    group: FiniteGroup
    to_parent: tuple  # subgroup index -> parent index
    from_parent: dict  # parent index -> subgroup index

    @property
    def order(self) -> int:
        return len(self.elements)


def subgroup_from_elements(parent: FiniteGroup, elements) -> Subgroup:
    elems = tuple(sorted(set(int(x) for x in elements)))
    if parent.identity not in elems:
        raise DomainError("subgroup must contain the identity")
    index = {x: i for i, x in enumerate(elems)}
    table = []
    for x in elems:
        row = []
        for y in elems:
            z = parent.mul(x, y)
            if z not in index:
                raise DomainError("subset is not closed under multiplication")
            row.append(index[z])
        table.append(row)
    for x in elems:
        if parent.inverse(x) not in index:
            raise DomainError("subset is not closed under inverses")
    sub = FiniteGroup(table, name=None)
    return Subgroup(parent, elems, sub, elems, index)


@dataclass(frozen=True)
class ConjugacyData:
    group: FiniteGroup
    classes: tuple  # tuple of sorted element tuples
    representatives: tuple
    class_of: tuple


def conjugacy_classes(G: FiniteGroup) -> ConjugacyData:
    seen = [False] * G.order
    classes = []
    reps = []
    class_of = [0] * G.order
    for x in G.elements():
        if seen[x]:
            continue
        cls = sorted({G.conj(g, x) for g in G.elements()})
        idx = len(classes)
        for y in cls:
            seen[y] = True
            class_of[y] = idx
        classes.append(tuple(cls))
        reps.append(cls[0])
    return ConjugacyData(G, tuple(classes), tuple(reps), tuple(class_of))


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    if not 0 <= g < G.order:
        raise DomainError(f"element index {g} out of range")
    elems = [x for x in G.elements() if G.mul(x, g) == G.mul(g, x)]
    return subgroup_from_elements(G, elems)


@dataclass(frozen=True)
class AbelianStructure:
    """Invariant-factor coordinates for an abelian group.

    coordinates[x] lives in prod Z/d_i; the map is a group isomorphism.
    """

    group: FiniteGroup
    invariant_factors: tuple
    basis: tuple  # element indices generating the cyclic factors
    coordinates: tuple  # per element, a tuple in prod Z/d_i
    exponent: int

    def element_from_coordinates(self, coords) -> int:
        coords = tuple(
            int(c) % d for c, d in zip(coords, self.invariant_factors)
        )
        return self._lookup[coords]

    def scalar_mul(self, k: int, x: int) -> int:
        return self.element_from_coordinates(
            tuple(k * c for c in self.coordinates[x])
        )

    def __post_init__(self):
        lookup = {c: i for i, c in enumerate(self.coordinates)}
        object.__setattr__(self, "_lookup", lookup)


def abelian_structure(A: FiniteGroup) -> AbelianStructure:
    if not A.is_abelian:
        raise DomainError("abelian_structure requires an abelian group")
    n = A.order
    if n == 1:
        return AbelianStructure(A, (), (), ((),), 1)
    e = A.exponent()
    # present A by all elements with relations x_i + x_j - x_{ij} = 0
    cols = []
    for i in range(n):
        for j in range(i, n):
            v = np.zeros(n, np.int64)
            v[i] += 1
            v[j] += 1
            v[A.mul(i, j)] -= 1
            cols.append(v % e)
    Q = linalg.coker_mod(np.stack(cols, axis=1), e)
    factors = tuple(Q.factors)
    coords = []
    for x in range(n):
        ind = np.zeros(n, np.int64)
        ind[x] = 1
        coords.append(Q.coordinates(ind))
    basis = []
    for j in range(len(factors)):
        w = Q.basis[:, j] % e
        g = A.identity
        for i in range(n):
            if w[i]:
                g = A.mul(g, A.power(i, int(w[i])))
        basis.append(g)
    st = AbelianStructure(A, factors, tuple(basis), tuple(coords), e)
    # the coordinate map must be a bijection onto prod Z/d_i
    if len(set(st.coordinates)) != n:
        raise DomainError("coordinate map is not injective (non-abelian input?)")
    total = 1
    for d in factors:
        total *= d
    if total != n:
        raise DomainError("invariant factors do not multiply to |A|")
    return st


@dataclass(frozen=True)
class ExtensionData:
    """1 -> A -> E -> G -> 1 with A abelian and normal in E."""

    total: FiniteGroup
    kernel: Subgroup
    quotient_map: tuple  # E element -> G element
    base: FiniteGroup

    def __post_init__(self):
        E, G = self.total, self.base
        q = self.quotient_map
        if len(q) != E.order:
            raise DomainError("quotient map has wrong length")
        for x in E.elements():
            for y in E.elements():
                if q[E.mul(x, y)] != G.mul(q[x], q[y]):
                    raise DomainError("quotient map is not a homomorphism")
        if set(q) != set(G.elements()):
            raise DomainError("quotient map is not surjective")
        ker = tuple(sorted(x for x in E.elements() if q[x] == G.identity))
        if ker != self.kernel.elements:
            raise DomainError("kernel subgroup does not match the quotient map")
        if not self.kernel.group.is_abelian:
            raise DomainError("kernel must be abelian")
        kset = set(ker)
        for g in E.elements():
            for a in ker:
                if E.conj(g, a) not in kset:
                    raise DomainError("kernel is not normal")


def identity_extension(G: FiniteGroup) -> ExtensionData:
    triv = subgroup_from_elements(G, [G.identity])
    return ExtensionData(G, triv, tuple(G.elements()), G)


def group_from_generators(degree: int, generators, name=None) -> FiniteGroup:
    """Closure of permutation generators under composition.

    Element 0 is the identity; elements are ordered by breadth-first
    discovery, multiplying on the right by the generators in input
    order.  Products compose as (p*q)(i) = p[q[i]].
    """
    if degree < 1:
        raise DomainError("degree must be positive")
    gens = []
    for g in generators:
        p = tuple(int(x) for x in g)
        if sorted(p) != list(range(degree)):
            raise DomainError(f"{g} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    pos = 0
    cap = get_caps()["closure_order"]
    while pos < len(elems):
        x = elems[pos]
        pos += 1
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))
            if y not in index:
                if len(elems) >= cap:
                    check_cap("closure_order", len(elems) + 1)
                index[y] = len(elems)
                elems.append(y)
    n = len(elems)
    table = [[0] * n for _ in range(n)]
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            prod = tuple(p[q[t]] for t in range(degree))
            table[i][j] = index[prod]
    return FiniteGroup(table, name=name)


def direct_product(G: FiniteGroup, H: FiniteGroup, name=None) -> FiniteGroup:
    """Direct product with element index g*|H| + h."""
    nH = H.order
    n = G.order * nH
    table = [[0] * n for _ in range(n)]
    for g1 in G.elements():
        for h1 in H.elements():
            a = g1 * nH + h1
            for g2 in G.elements():
                row_g = G.mult[g1][g2] * nH
                for h2 in H.elements():
                    table[a][g2 * nH + h2] = row_g + H.mult[h1][h2]
    return FiniteGroup(table, name=name)


def group_from_json(data: dict) -> FiniteGroup:
    if "mult" in data:
        return FiniteGroup(data["mult"], name=data.get("name"))
    if "generators" in data:
        return group_from_generators(
            int(data["degree"]), data["generators"], name=data.get("name")
        )
    raise DomainError("group JSON needs either 'mult' or 'degree'+'generators'")
