"""Exact scalars: rationals and elements of cyclotomic fields.

Rationals are plain :class:`fractions.Fraction` (or ``int``) values.  An element
of Q(zeta_n) is a :class:`Cyc`, stored as the coefficient vector of
1, zeta, ..., zeta^(phi(n)-1) reduced modulo the n-th cyclotomic polynomial.
Arithmetic results that happen to be rational collapse back to ``Fraction`` so
that rational computations never pay for the extension.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Scalar = Union[int, Fraction, "Cyc"]

__all__ = ["Cyc", "Scalar", "zeta", "cyclotomic_poly", "conj", "as_fraction", "is_rational", "fmt_scalar"]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # monic integer divisor, coefficient lists lowest degree first
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c:
            q[k] = c
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # t^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coefficient vectors of zeta_n^k for k = 0..n-1."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    table = []
    vec = [1] + [0] * (deg - 1)
    for _ in range(n):
        table.append(tuple(vec))
        # multiply by zeta and reduce with zeta^deg = -sum phi_i zeta^i
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * p for v, p in zip(vec, phi[:-1])]
    return tuple(table)


class Cyc:
    """An element of the cyclotomic field Q(zeta_n) that is not rational."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.c = tuple(Fraction(x) for x in coeffs)

    @staticmethod
    def make(n: int, coeffs) -> Scalar:
        coeffs = [Fraction(x) for x in coeffs]
        if all(x == 0 for x in coeffs[1:]):
            return coeffs[0] if coeffs else Fraction(0)
        return Cyc(n, coeffs)

    @property
    def degree(self) -> int:
        return len(self.c)

    def lift(self, m: int) -> list[Fraction]:
        """Coefficient vector in Q(zeta_m); requires n | m."""
        if m == self.n:
            return list(self.c)
        step = m // self.n
        table = _power_table(m)
        out = [Fraction(0)] * (len(cyclotomic_poly(m)) - 1)
        for k, a in enumerate(self.c):
            if a:
                for i, t in enumerate(table[(k * step) % m]):
                    if t:
                        out[i] += a * t
        return out

    def _coerce(self, other) -> tuple[int, list[Fraction], list[Fraction]] | None:
        if isinstance(other, Cyc):
            m = self.n if other.n == self.n else _lcm(self.n, other.n)
            return m, self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            b = [Fraction(0)] * len(self.c)
            b[0] = Fraction(other)
            return self.n, list(self.c), b
        return None

    def __add__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        m, a, b = co
        return Cyc.make(m, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, [-x for x in self.c])

    def __sub__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        m, a, b = co
        return Cyc.make(m, [x - y for x, y in zip(a, b)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Fraction(0)
            return Cyc(self.n, [x * other for x in self.c])
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        m, a, b = co
        table = _power_table(m)
        deg = len(a)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:deg]
        for k in range(deg, len(prod)):
            x = prod[k]
            if x:
                for i, t in enumerate(table[k % m]):
                    if t:
                        out[i] += x * t
        return Cyc.make(m, out)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        # solve self * y = 1 against the power basis
        deg = len(self.c)
        cols = []
        for j in range(deg):
            e = [0] * deg
            e[j] = 1
            prod = self * Cyc(self.n, e)
            if isinstance(prod, Cyc):
                cols.append(prod.lift(self.n))
            else:
                cols.append([Fraction(prod)] + [Fraction(0)] * (deg - 1))
        mat = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        from .linalg import linear_solve

        return Cyc.make(self.n, linear_solve(mat, rhs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.n, [x / other for x in self.c])
        if isinstance(other, Cyc):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False  # a Cyc is never rational
        if isinstance(other, Cyc):
            if other.n == self.n:
                return self.c == other.c
            m = _lcm(self.n, other.n)
            return self.lift(m) == other.lift(m)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.c))

    def __bool__(self):
        return True

    def conjugate(self) -> Scalar:
        """Complex conjugate: zeta -> zeta^-1."""
        table = _power_table(self.n)
        out = [Fraction(0)] * len(self.c)
        for k, a in enumerate(self.c):
            if a:
                for i, t in enumerate(table[(-k) % self.n]):
                    if t:
                        out[i] += a * t
        return Cyc.make(self.n, out)

    def __repr__(self):
        return f"Cyc({self.n}, {[str(x) for x in self.c]})"

    def __str__(self):
        parts = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if k == 0 else (f"E({self.n})" if k == 1 else f"E({self.n})^{k}")
            if not mono:
                s = str(a)
            elif a == 1:
                s = mono
            elif a == -1:
                s = "-" + mono
            else:
                s = f"{a}*{mono}"
            parts.append(s)
        text = " + ".join(parts).replace("+ -", "- ")
        return f"({text})"


def zeta(n: int, k: int = 1) -> Scalar:
    """The root of unity zeta_n^k, with zeta_n = exp(2 pi i / n)."""
    k %= n
    if n <= 2:
        return Fraction(1) if k == 0 else Fraction(-1)
    return Cyc.make(n, _power_table(n)[k])


def conj(a: Scalar) -> Scalar:
    return a.conjugate() if isinstance(a, Cyc) else a


def is_rational(a: Scalar) -> bool:
    return not isinstance(a, Cyc)


def as_fraction(a: Scalar) -> Fraction:
    if isinstance(a, Cyc):
        raise ValueError(f"{a} is not rational")
    return Fraction(a)


def fmt_scalar(a: Scalar) -> str:
    """Canonical text: rationals as 'p/q' (or 'p'), cyclotomics in E(n) notation."""
    return str(a) if isinstance(a, Cyc) else str(Fraction(a))
