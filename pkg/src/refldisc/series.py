"""Rational Hilbert-Poincare series: a numerator over a product of (1 - t^d)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly, PolyRing, exact_divide
from .scalars import Scalar

__all__ = [
    "T_RING",
    "t_poly",
    "one_minus_t_power",
    "geometric",
    "SeriesQuotient",
    "PoleAtOne",
    "series_value_at_one",
]

T_RING = PolyRing(("t",))


class PoleAtOne(ArithmeticError):
    """The rational function has no finite value at t = 1."""


def t_poly(coeffs: Sequence[Scalar] | dict[int, Scalar]) -> Poly:
    """Build a polynomial in t from a coefficient list (lowest degree first) or dict."""
    items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
    return Poly(T_RING, {(k,): c for k, c in items if c != 0})


def one_minus_t_power(d: int) -> Poly:
    return t_poly({0: 1, d: -1})


def geometric(d: int) -> Poly:
    """1 + t + ... + t^(d-1), the t-integer [d]_t."""
    return t_poly([1] * d)


def _coeff_list(p: Poly) -> list[Scalar]:
    if p.is_zero():
        return []
    deg = max(e[0] for e in p.terms)
    out: list[Scalar] = [Fraction(0)] * (deg + 1)
    for (k,), c in p.terms.items():
        out[k] = c
    return out


@dataclass(frozen=True)
class SeriesQuotient:
    """numerator / prod_{d in den} (1 - t^d), kept exact."""

    numerator: Poly
    den: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.numerator.ring != T_RING:
            raise ValueError("numerator must be a polynomial in t")
        if any(d < 1 for d in self.den):
            raise ValueError("denominator exponents must be positive")
        object.__setattr__(self, "den", tuple(sorted(self.den)))

    @classmethod
    def from_coeffs(cls, coeffs, den: Iterable[int] = ()) -> SeriesQuotient:
        return cls(t_poly(coeffs), tuple(den))

    def denominator_poly(self) -> Poly:
        out = T_RING.one()
        for d in self.den:
            out = out * one_minus_t_power(d)
        return out

    def with_denominator(self, den: Iterable[int]) -> SeriesQuotient:
        """Rewrite over a new denominator that is a multiple of the current one.

        Factors are matched as polynomials, so e.g. (1-t)(1-t^2) can be moved to
        (1-t^2)(1-t^3)... only when the division is exact; raises NotDivisible
        otherwise.
        """
        den = tuple(sorted(den))
        new = Counter(den)
        old = Counter(self.den)
        num = self.numerator
        extra = new - old
        drop = old - new
        for d, k in extra.items():
            num = num * one_minus_t_power(d) ** k
        for d, k in drop.items():
            num = exact_divide(num, one_minus_t_power(d) ** k)
        return SeriesQuotient(num, den)

    def _common(self, other: SeriesQuotient) -> tuple[int, ...]:
        return tuple(sorted((Counter(self.den) | Counter(other.den)).elements()))

    def __add__(self, other: SeriesQuotient) -> SeriesQuotient:
        den = self._common(other)
        a, b = self.with_denominator(den), other.with_denominator(den)
        return SeriesQuotient(a.numerator + b.numerator, den)

    def __neg__(self) -> SeriesQuotient:
        return SeriesQuotient(-self.numerator, self.den)

    def __sub__(self, other: SeriesQuotient) -> SeriesQuotient:
        return self + (-other)

    def scale(self, c: Scalar) -> SeriesQuotient:
        return SeriesQuotient(self.numerator * c, self.den)

    def shift(self, k: int) -> SeriesQuotient:
        """Multiply by t^k."""
        return SeriesQuotient(self.numerator * T_RING.monomial((k,)), self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesQuotient):
            return NotImplemented
        return self.numerator * other.denominator_poly() == other.numerator * self.denominator_poly()

    def __hash__(self):
        return hash(tuple(self.coefficients(16)))

    def coefficients(self, n: int) -> list[Scalar]:
        """Power-series coefficients of t^0..t^n."""
        c = _coeff_list(self.numerator)[: n + 1]
        c += [Fraction(0)] * (n + 1 - len(c))
        for d in self.den:
            # multiply by 1/(1-t^d): running sums with stride d
            for k in range(d, n + 1):
                c[k] = c[k] + c[k - d]
        return c

    def value_at_one(self) -> Scalar:
        return series_value_at_one(self.numerator, self.denominator_poly())

    def __str__(self):
        if not self.den:
            return str(self.numerator)
        den = "*".join(f"(1 - t^{d})" if d > 1 else "(1 - t)" for d in self.den)
        return f"({self.numerator}) / ({den})"

    def to_json(self) -> dict:
        return {
            "numerator": [str(x) for x in _coeff_list(self.numerator)],
            "denominator": list(self.den),
            "text": str(self),
        }


def _strip_one_minus_t(p: Poly) -> tuple[Poly, int]:
    """Divide out (1-t) as often as possible; returns (quotient, multiplicity)."""
    k = 0
    factor = one_minus_t_power(1)
    while not p.is_zero() and p.evaluate([1]) == 0:
        p = exact_divide(p, factor)
        k += 1
    return p, k


def series_value_at_one(num: Poly, den_extra: Poly) -> Scalar:
    """Limit of num/den_extra at t = 1, after cancelling all (1-t) factors."""
    if den_extra.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return Fraction(0)
    n, a = _strip_one_minus_t(num)
    d, b = _strip_one_minus_t(den_extra)
    if b > a:
        raise PoleAtOne(f"denominator vanishes to order {b} at t=1, numerator only to order {a}")
    if a > b:
        return Fraction(0)
    return n.evaluate([1]) / d.evaluate([1])
