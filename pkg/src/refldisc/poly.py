"""Sparse multivariate polynomials with exact coefficients and a weighted grading."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

from .scalars import Cyc, Scalar, fmt_scalar

__all__ = [
    "PolyRing",
    "Poly",
    "NotDivisible",
    "RingMismatch",
    "exact_divide",
    "monomials_of_degree",
    "weighted_monomials",
    "scalar_ratio",
    "parse_poly",
]


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class RingMismatch(ValueError):
    """Raised when combining polynomials from different variable contexts."""


Exponent = tuple[int, ...]


@dataclass(frozen=True)
class PolyRing:
    """A variable context: ordered names and positive integer weights."""

    names: tuple[str, ...]
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * len(self.names))
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per variable required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i: int | str) -> Poly:
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def const(self, c: Scalar) -> Poly:
        return Poly(self, {(0,) * self.nvars: c})

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(Fraction(1))

    def monomial(self, exp: Sequence[int], coeff: Scalar = 1) -> Poly:
        return Poly(self, {tuple(exp): coeff})

    def wdeg(self, exp: Exponent) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))


def _sort_key(ring: PolyRing):
    weights = ring.weights

    def key(exp: Exponent):
        return (sum(e * w for e, w in zip(exp, weights)), exp)

    return key


class Poly:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, Scalar] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    clean[e] = c if isinstance(c, (Fraction, Cyc)) else Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> Poly:
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    # --- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, Scalar]]:
        """Terms in descending graded-lex order (leading term first)."""
        key = _sort_key(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Scalar]:
        key = _sort_key(self.ring)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def wdeg(self) -> int:
        """Largest weighted degree of a term (-1 for zero)."""
        return max((self.ring.wdeg(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self.ring.wdeg(e) for e in self.terms}) <= 1

    def homogeneous_components(self) -> dict[int, Poly]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(self.ring.wdeg(e), {})[e] = c
        return {k: Poly._raw(self.ring, v) for k, v in sorted(parts.items())}

    def coefficient(self, exp: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Scalar:
        return self.coefficient((0,) * self.ring.nvars)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_rational(self) -> bool:
        return not any(isinstance(c, Cyc) for c in self.terms.values())

    # --- arithmetic ------------------------------------------------------

    def _check(self, other: Poly):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring.names} vs {other.ring.names}")

    def _lift(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Cyc)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> Poly:
        if c == 0:
            return self.ring.zero()
        return Poly._raw(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return Poly._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return self.scale(Fraction(1) / other if not isinstance(other, Cyc) else other.inverse())
        if isinstance(other, Poly):
            return exact_divide(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyc)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # --- calculus and substitution ---------------------------------------

    def diff(self, i: int | str) -> Poly:
        if isinstance(i, str):
            i = self.ring.names.index(i)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly._raw(self.ring, out)

    def substitute(self, images: Sequence[Poly], target: PolyRing | None = None) -> Poly:
        """Replace variable i by images[i]; all images live in one target ring."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if target is None:
            target = images[0].ring if images else self.ring
        powers: list[list[Poly]] = [[target.one()] for _ in images]
        result = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    pw = powers[i]
                    while len(pw) <= k:
                        pw.append(pw[-1] * images[i])
                    term = term * pw[k]
            result = result + term
        return result

    def evaluate(self, values: Sequence[Scalar]) -> Scalar:
        total: Scalar = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(values, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def map_coefficients(self, f) -> Poly:
        return Poly(self.ring, {e: f(c) for e, c in self.terms.items()})

    def in_ring(self, ring: PolyRing) -> Poly:
        """Re-embed into a ring that contains all variables of this one (by name)."""
        idx = [ring.names.index(n) for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            f = [0] * ring.nvars
            for i, k in zip(idx, e):
                f[i] = k
            out[tuple(f)] = c
        return Poly._raw(ring, out)

    # --- text ------------------------------------------------------------

    def _mono_str(self, e: Exponent) -> str:
        parts = []
        for name, k in zip(self.ring.names, e):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._mono_str(e)
            neg = not isinstance(c, Cyc) and c < 0
            mag = -c if neg else c
            if not mono:
                body = fmt_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{fmt_scalar(mag)}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, ring={self.ring.names})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.ring.names),
            "weights": list(self.ring.weights),
            "terms": [[list(e), fmt_scalar(c)] for e, c in self.sorted_terms()],
            "text": str(self),
        }


def exact_divide(p: Poly, q: Poly) -> Poly:
    """Return r with q*r == p, or raise NotDivisible."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = p.ring
    key = _sort_key(ring)
    lq_exp = max(q.terms, key=key)
    lq_coef = q.terms[lq_exp]
    inv = 1 / lq_coef if not isinstance(lq_coef, Cyc) else lq_coef.inverse()
    rem = dict(p.terms)
    quot: dict = {}
    while rem:
        e = max(rem, key=key)
        if any(a < b for a, b in zip(e, lq_exp)):
            raise NotDivisible(f"{p} is not divisible by {q}")
        d = tuple(a - b for a, b in zip(e, lq_exp))
        c = rem[e] * inv
        quot[d] = c
        for f, v in q.terms.items():
            g = tuple(a + b for a, b in zip(f, d))
            w = rem.get(g, 0) - v * c
            if w:
                rem[g] = w
            else:
                rem.pop(g, None)
    return Poly._raw(ring, quot)


def scalar_ratio(p: Poly, q: Poly) -> Scalar | None:
    """The scalar c with p == c*q, or None if there is none (q nonzero)."""
    if q.is_zero():
        raise ZeroDivisionError("ratio against the zero polynomial")
    if p.ring != q.ring or set(p.terms) != set(q.terms):
        return None
    e = next(iter(q.terms))
    c = p.terms[e] / q.terms[e]
    for f, v in q.terms.items():
        if p.terms[f] != c * v:
            return None
    return c


def monomials_of_degree(nvars: int, k: int) -> list[Exponent]:
    """All exponent tuples of total degree k, in descending graded-lex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), k):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def weighted_monomials(weights: Sequence[int], k: int) -> list[Exponent]:
    """All exponent tuples with sum(e_i * w_i) == k, descending lex order."""
    n = len(weights)
    out: list[Exponent] = []

    def rec(i: int, left: int, acc: list[int]):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        if w == 0:
            raise ValueError("weighted enumeration needs positive weights")
        for a in range(left // w, -1, -1):
            acc.append(a)
            rec(i + 1, left - a * w, acc)
            acc.pop()

    if k >= 0:
        rec(0, k, [])
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse the canonical text form, e.g. ``'3/2*x^2*y - u'`` (rational coefficients)."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    result: dict = {}
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos and text[pos : m.start()].strip():
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        e = [0] * ring.nvars
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in ring.names:
                raise ValueError(f"unknown variable {name!r}")
            e[ring.names.index(name)] += int(power) if power else 1
        key = tuple(e)
        result[key] = result.get(key, 0) + coeff
    return Poly(ring, result)


def iter_terms(p: Poly) -> Iterator[tuple[Exponent, Scalar]]:
    yield from p.sorted_terms()


def sum_polys(polys: Iterable[Poly], ring: PolyRing) -> Poly:
    total = ring.zero()
    for p in polys:
        total = total + p
    return total
