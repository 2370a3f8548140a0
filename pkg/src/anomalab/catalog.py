"""Built-in named groups: Z/n, products of cyclics, S3, S4, D4, Q8, A4."""

import re
from functools import lru_cache

from .errors import DomainError
from .groups import FiniteGroup, direct_product, group_from_generators

NAMED = ("S3", "S4", "D4", "Q8", "A4")


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("cyclic order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=f"Z/{n}")


@lru_cache(maxsize=None)
def symmetric(n: int) -> FiniteGroup:
    cycle = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return group_from_generators(n, [cycle, swap], name=f"S{n}")


@lru_cache(maxsize=None)
def alternating4() -> FiniteGroup:
    return group_from_generators(4, [(1, 2, 0, 3), (0, 2, 3, 1)], name="A4")


@lru_cache(maxsize=None)
def dihedral4() -> FiniteGroup:
    # symmetries of the square: rotation and a diagonal flip
    return group_from_generators(4, [(1, 2, 3, 0), (0, 3, 2, 1)], name="D4")


@lru_cache(maxsize=None)
def quaternion8() -> FiniteGroup:
    # elements 1, -1, i, -i, j, -j, k, -k as indices 0..7
    def neg(a):
        return a + 1 if a % 2 == 0 else a - 1

    base = {
        (0, 0): 0, (0, 2): 2, (0, 4): 4, (0, 6): 6,
        (2, 0): 2, (2, 2): 1, (2, 4): 6, (2, 6): 5,
        (4, 0): 4, (4, 2): 7, (4, 4): 1, (4, 6): 2,
        (6, 0): 6, (6, 2): 4, (6, 4): 3, (6, 6): 1,
    }
    table = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            a0, b0 = a - a % 2, b - b % 2
            v = base[(a0, b0)]
            if a % 2:
                v = neg(v)
            if b % 2:
                v = neg(v)
            table[a][b] = v
    return FiniteGroup(table, name="Q8")


_CYCLIC_RE = re.compile(r"^Z/(\d+)$")


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    """Resolve a catalog name: 'Z/n', 'Z/axZ/b[x...]', S3, S4, D4, Q8, A4."""
    name = name.strip()
    if name == "S3":
        return symmetric(3)
    if name == "S4":
        return symmetric(4)
    if name == "A4":
        return alternating4()
    if name == "D4":
        return dihedral4()
    if name == "Q8":
        return quaternion8()
    parts = name.split("x")
    factors = []
    for part in parts:
        match = _CYCLIC_RE.match(part.strip())
        if not match:
            raise DomainError(f"unknown group name {name!r}")
        factors.append(int(match.group(1)))
    if len(factors) == 1:
        return cyclic(factors[0])
    G = cyclic(factors[0])
    for n in factors[1:]:
        G = direct_product(G, cyclic(n))
    return FiniteGroup(G.mult, name=name)
