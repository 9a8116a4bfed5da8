from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from refldisc.scalars import Cyc, conj, cyclotomic_poly, fmt_scalar, is_rational, zeta


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 12])
def test_roots_of_unity(n):
    z = zeta(n)
    assert z**n == 1
    assert all(z**k != 1 for k in range(1, n))
    # the n-th roots of unity sum to zero
    total = sum((z**k for k in range(n)), Fraction(0))
    assert total == 0


def test_rational_collapse():
    i = zeta(4)
    assert isinstance(i, Cyc)
    assert i * i == -1 and is_rational(i * i)
    assert zeta(2) == -1


def test_inverse_and_division():
    z = zeta(5)
    a = 1 + 2 * z - z**3
    assert a * a.inverse() == 1
    assert (a / a) == 1


def test_conjugate():
    z = zeta(7)
    assert conj(z) == z**6
    a = 3 + z
    assert a * conj(a) == conj(a * conj(a))


def test_mixed_orders():
    # zeta_6 lives in Q(zeta_3): zeta_6 = -zeta_3^2
    assert zeta(6) == -(zeta(3) ** 2)
    assert zeta(12) ** 4 == zeta(3)


def test_formatting():
    assert fmt_scalar(Fraction(3, 2)) == "3/2"
    assert fmt_scalar(Fraction(-4)) == "-4"
    assert "E(3)" in fmt_scalar(zeta(3))


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_field_axioms_in_q_zeta5(a, b):
    x = Cyc.make(5, a)
    y = Cyc.make(5, b)
    assert x + y == y + x
    assert x * y == y * x
    if y != 0:
        assert (x * y) / y == x
