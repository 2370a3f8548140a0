"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are vectors of rationals in the power basis 1, z, ..., z^(phi(N)-1)
modulo the N-th cyclotomic polynomial.  All coefficients are
fractions.Fraction; nothing here ever touches floating point except the
explicitly diagnostic to_complex().

The additive model of roots of unity (mu = Q/Z) lives in MuElement; the
exponential map mu -> Q(zeta)^x is root_embed.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .caps import check_cap
from .errors import DomainError


# -- integer polynomial layer -------------------------------------------


@lru_cache(maxsize=None)
def phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    q = [0] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        coeff = num[i + len(den) - 1]
        if coeff % lead:
            raise DomainError("non-exact integer polynomial division")
        f = coeff // lead
        q[i] = f
        for j, d in enumerate(den):
            num[i + j] -= f * d
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients of Phi_n, ascending degree."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            if rem:
                raise DomainError("cyclotomic polynomial division left remainder")
    return tuple(num)


@lru_cache(maxsize=None)
def power_rows(n: int) -> np.ndarray:
    """Row j (0 <= j < n): integer coefficients of zeta_n^j in the power basis."""
    d = phi(n)
    poly = cyclotomic_poly(n)
    # zeta^d = -(lower part of Phi_n), since Phi_n is monic
    top = [-c for c in poly[:d]]
    rows = np.zeros((n, d), dtype=object)
    cur = [0] * d
    cur[0] = 1
    for j in range(n):
        rows[j] = cur
        # multiply by zeta
        nxt = [0] + cur[:-1]
        carry = cur[-1]
        if carry:
            nxt = [a + carry * b for a, b in zip(nxt, top)]
        cur = nxt
    return rows.astype(np.int64)


@lru_cache(maxsize=None)
def lift_matrix(n: int, n2: int) -> np.ndarray:
    """phi(n2) x phi(n) integer matrix sending the n-basis into the n2-basis."""
    if n2 % n:
        raise DomainError("can only lift to a multiple level")
    rows = power_rows(n2)
    step = n2 // n
    cols = [rows[(j * step) % n2] for j in range(phi(n))]
    return np.stack(cols, axis=1)


@lru_cache(maxsize=None)
def galois_matrix(n_unit: int, n: int) -> np.ndarray:
    """Matrix of sigma_{n_unit} (zeta -> zeta^n_unit) on the power basis."""
    if gcd(n_unit, n) != 1:
        raise DomainError(f"{n_unit} is not a unit mod {n}")
    rows = power_rows(n)
    cols = [rows[(j * n_unit) % n] for j in range(phi(n))]
    return np.stack(cols, axis=1)


@lru_cache(maxsize=None)
def mult_tensor(n: int) -> np.ndarray:
    """T[a, b, :] = power-basis coefficients of zeta^a * zeta^b."""
    d = phi(n)
    rows = power_rows(n)
    T = np.zeros((d, d, d), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            T[a, b] = rows[(a + b) % n]
    return T


# -- mu = Q/Z -------------------------------------------------------------


@dataclass(frozen=True)
class MuElement:
    """An element of Q/Z, written additively; value is reduced to [0, 1)."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % 1)

    @classmethod
    def from_pair(cls, a: int, b: int) -> "MuElement":
        if b <= 0:
            raise DomainError("denominator must be positive")
        return cls(Fraction(a, b))

    @classmethod
    def from_residue(cls, v: int, m: int) -> "MuElement":
        return cls(Fraction(v, m))

    @property
    def order(self) -> int:
        return self.value.denominator

    def __add__(self, other):
        return MuElement(self.value + other.value)

    def __sub__(self, other):
        return MuElement(self.value - other.value)

    def __neg__(self):
        return MuElement(-self.value)

    def scaled(self, k: int) -> "MuElement":
        return MuElement(k * self.value)


@dataclass(frozen=True)
class GaloisTwist:
    """The action x -> n^i x on mu_N and its twists."""

    modulus: int
    unit: int
    exponent: int = 1

    def __post_init__(self):
        if gcd(self.unit, self.modulus) != 1:
            raise DomainError(
                f"{self.unit} is not a unit modulo {self.modulus}"
            )

    def multiplier(self) -> int:
        return pow(self.unit, self.exponent, self.modulus)

    def act_mu(self, x: MuElement) -> MuElement:
        return x.scaled(pow(self.unit, self.exponent))


# -- field elements --------------------------------------------------------


class CycloNumber:
    """An element of Q(zeta_level), canonically reduced mod Phi_level."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        if level < 1:
            raise DomainError("level must be positive")
        check_cap("phi_level", phi(level))
        d = phi(level)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > d:
            # reduce high powers using the integer reduction rows
            rows = power_rows(level)
            poly = cyclotomic_poly(level)
            top = [Fraction(-c) for c in poly[:d]]
            while len(cs) > d:
                c = cs.pop()
                if c:
                    k = len(cs)  # exponent of the popped coefficient
                    if k < level:
                        row = rows[k]
                        for i in range(d):
                            if row[i]:
                                cs[i] += c * int(row[i])
                    else:
                        # fold zeta^level = 1 first
                        cs[k % level] += c
                        cs += [Fraction(0)] * max(0, d - len(cs))
        cs += [Fraction(0)] * (d - len(cs))
        self.level = level
        self.coeffs = tuple(cs)

    # -- constructors ----------------------------------------------------

    @classmethod
    def rational(cls, q, level: int = 1) -> "CycloNumber":
        return cls(level, [Fraction(q)])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNumber":
        k %= n
        rows = power_rows(n)
        return cls(n, [int(v) for v in rows[k]])

    @classmethod
    def zero(cls, level: int = 1) -> "CycloNumber":
        return cls(level, [0])

    @classmethod
    def one(cls, level: int = 1) -> "CycloNumber":
        return cls(level, [1])

    # -- structure ---------------------------------------------------------

    def lift(self, level: int) -> "CycloNumber":
        if level == self.level:
            return self
        if level % self.level:
            raise DomainError("lift target must be a multiple of the level")
        M = lift_matrix(self.level, level)
        d2 = M.shape[0]
        out = [Fraction(0)] * d2
        for j, c in enumerate(self.coeffs):
            if c:
                col = M[:, j]
                for i in range(d2):
                    if col[i]:
                        out[i] += c * int(col[i])
        z = CycloNumber.__new__(CycloNumber)
        z.level = level
        z.coeffs = tuple(out)
        return z

    def _pair(self, other):
        if not isinstance(other, CycloNumber):
            other = CycloNumber.rational(other)
        n = lcm(self.level, other.level)
        return self.lift(n), other.lift(n)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("not a rational number")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        return CycloNumber(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        return CycloNumber(a.level, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycloNumber(self.level, [-c for c in self.coeffs])

    def __mul__(self, other):
        a, b = self._pair(other)
        d = phi(a.level)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return CycloNumber(a.level, conv)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic number")
        # extended Euclid in Q[x] against Phi_level
        mod = [Fraction(c) for c in cyclotomic_poly(self.level)]
        a = list(self.coeffs)
        r0, r1 = mod, a
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        def scaled_sub(p, q, c, shift):
            out = list(p)
            out += [Fraction(0)] * (len(q) + shift - len(out))
            for i, v in enumerate(q):
                if v:
                    out[i + shift] -= c * v
            return out

        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            if d0 < d1:
                r0, r1 = r1, r0
                s0, s1 = s1, s0
                continue
            c = r0[d0] / r1[d1]
            r0 = scaled_sub(r0, r1, c, d0 - d1)
            s0 = scaled_sub(s0, s1, c, d0 - d1)
        if deg(r1) != 0:
            raise DomainError("element is a zero divisor (not coprime to Phi)")
        c = r1[0]
        inv = [v / c for v in s1]
        return CycloNumber(self.level, inv)

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CycloNumber.rational(other, self.level) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloNumber.one(self.level)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.rational(other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        z = self.reduce_level()
        return hash((z.level, z.coeffs))

    def __repr__(self):
        return f"CycloNumber(level={self.level}, coeffs={self.coeffs})"

    # -- Galois -----------------------------------------------------------

    def galois(self, n: int) -> "CycloNumber":
        if gcd(n, self.level) != 1:
            raise DomainError(f"{n} is not a unit mod level {self.level}")
        M = galois_matrix(n % self.level, self.level)
        d = phi(self.level)
        out = [Fraction(0)] * d
        for j, c in enumerate(self.coeffs):
            if c:
                col = M[:, j]
                for i in range(d):
                    if col[i]:
                        out[i] += c * int(col[i])
        z = CycloNumber.__new__(CycloNumber)
        z.level = self.level
        z.coeffs = tuple(out)
        return z

    def conjugate(self) -> "CycloNumber":
        if self.level <= 2:
            return self
        return self.galois(self.level - 1)

    # -- recognition --------------------------------------------------------

    def is_root_of_unity(self):
        """The MuElement x with self == exp(2 pi i x), or None."""
        if self.is_zero():
            return None
        n = self.level if self.level % 2 == 0 else 2 * self.level
        z = self.lift(n)
        rows = power_rows(n)
        for k in range(n):
            if all(a == int(b) for a, b in zip(z.coeffs, rows[k])):
                return MuElement(Fraction(k, n))
        return None

    def reduce_level(self) -> "CycloNumber":
        """Rewrite at the smallest level d | level containing the element."""
        n = self.level
        for d in sorted(k for k in range(1, n + 1) if n % k == 0):
            fixed = True
            for u in range(1, n + 1):
                if gcd(u, n) == 1 and u % d == 1 and u != 1:
                    if self.galois(u) != self:
                        fixed = False
                        break
            if not fixed:
                continue
            # solve for coordinates in the lifted zeta_d power basis
            M = lift_matrix(d, n)
            sol = _solve_rational(M, list(self.coeffs))
            if sol is not None:
                return CycloNumber(d, sol)
        return self

    # -- misc ----------------------------------------------------------------

    def to_complex(self) -> complex:
        """Floating approximation; diagnostic only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.level)
        return sum(complex(c) * z**k for k, c in enumerate(self.coeffs))

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycloNumber":
        return cls(
            int(data["level"]),
            [Fraction(int(a), int(b)) for a, b in data["coeffs"]],
        )


def _solve_rational(M: np.ndarray, rhs) -> list | None:
    """Solve M x = rhs exactly over Q; M is an integer matrix (tall allowed)."""
    rows = [[Fraction(int(v)) for v in M[i]] + [Fraction(rhs[i])] for i in range(M.shape[0])]
    ncols = M.shape[1]
    piv_rows = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_rows.append(c)
        r += 1
    # consistency
    for i in range(r, len(rows)):
        if rows[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv_rows):
        x[c] = rows[i][ncols]
    return x


# -- operations named in the interface ------------------------------------


def cyclo_arith(a: CycloNumber, b: CycloNumber, op: str) -> CycloNumber:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise DomainError(f"unknown operation {op!r}")


def root_embed(x: MuElement) -> CycloNumber:
    """exp(2 pi i x) as an exact cyclotomic number."""
    return CycloNumber.zeta(x.value.denominator, x.value.numerator)


def root_embed_residue(v: int, m: int) -> CycloNumber:
    return root_embed(MuElement.from_residue(v, m))


def galois_sigma(n: int, z: CycloNumber) -> CycloNumber:
    return z.galois(n)
