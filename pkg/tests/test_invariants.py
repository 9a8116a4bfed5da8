from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from refldisc.groups import build_group, det_character
from refldisc.invariants import (
    NotInvariant,
    basic_invariants,
    coinvariant_basis,
    discriminant,
    expand_in_x,
    free_coords,
    is_invariant,
    jacobian_poly,
    reynolds,
    rewrite_in_invariants,
    twisted_reynolds,
)
from refldisc.poly import parse_poly

GROUPS = ["cyclic:3", "sym:2", "sym:3", "sym-essential:3", "sym-essential:4", "monomial:2,2", "monomial:3,2"]


@st.composite
def group_polys(draw, desc: str, max_deg: int = 4):
    g = build_group(desc)
    x = g.ring.gens()
    p = g.ring.zero()
    for _ in range(draw(st.integers(1, 3))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in x)
        p = p + g.ring.monomial(e) * draw(st.integers(-3, 3))
    return p


def test_sym2_discriminant():
    d = discriminant(build_group("sym:2"))
    assert d.delta == parse_poly("u1^2 - 4*u2", d.inv.uring)


def test_sym3_discriminant_is_classical():
    d = discriminant(build_group("sym:3"))
    # the classical discriminant of x^3 - e1 x^2 + e2 x - e3
    classical = parse_poly("u1^2*u2^2 - 4*u2^3 - 4*u1^3*u3 + 18*u1*u2*u3 - 27*u3^2", d.inv.uring)
    assert d.delta == classical
    assert d.unit == -4


def test_cyclic_discriminant():
    d = discriminant(build_group("cyclic:3"))
    x = d.J.ring.var(0)
    assert d.J == 3 * x**2
    assert d.z == x
    assert d.delta == 3 * d.inv.uring.var(0)


def test_swallowtail_jacobian_shape():
    g = build_group("sym-essential:4")
    d = discriminant(g)
    x, y, z = g.ring.gens()
    ref = (x - y) * (x - z) * (y - z) * (2 * x + y + z) * (x + 2 * y + z) * (x + y + 2 * z)
    from refldisc.poly import scalar_ratio

    assert scalar_ratio(d.J, ref) is not None


@pytest.mark.parametrize("desc", GROUPS)
def test_basic_invariants(desc):
    g = build_group(desc)
    inv = basic_invariants(g)
    assert tuple(inv.degrees) == tuple(g.degrees)
    for f in inv.polys:
        assert all(g.act(i, f) == f for i in range(g.order))
    assert jacobian_poly(inv).total_degree() == g.m


@pytest.mark.parametrize("desc", GROUPS)
def test_jacobian_and_arrangement_twist(desc):
    g = build_group(desc)
    d = discriminant(g)
    for i in range(g.order):
        det = g.elements[i].det
        assert g.act(i, d.J) == d.J * (1 / det)
        assert g.act(i, d.z) == d.z * det
    assert d.z.total_degree() == g.m1
    assert is_invariant(g, d.z * d.J)


def test_newton_identity_for_power_sums():
    # p2 = e1^2 - 2 e2 rewritten in the elementary basis of sym:3
    g = build_group("sym:3")
    inv = basic_invariants(g)
    x = g.ring.gens()
    p2 = sum((v**2 for v in x), g.ring.zero())
    assert rewrite_in_invariants(p2, inv) == parse_poly("u1^2 - 2*u2", inv.uring)


def test_rewrite_rejects_non_invariant():
    g = build_group("sym:3")
    with pytest.raises(NotInvariant):
        rewrite_in_invariants(g.ring.var(0), basic_invariants(g))


@pytest.mark.parametrize("desc", ["sym:3", "monomial:2,2", "sym-essential:3"])
def test_reynolds_matches_direct_orbit_sum(desc):
    g = build_group(desc)
    x = g.ring.gens()
    p = x[0] ** 2 * x[1]
    orbit_sum = g.ring.zero()
    for el in g.elements:
        orbit_sum = orbit_sum + p.substitute(el.form_images(g.ring), g.ring)
    assert reynolds(g, p) == orbit_sum * Fraction(1, g.order)
    assert is_invariant(g, reynolds(g, p))


@given(group_polys("sym-essential:3"))
def test_twisted_reynolds_is_semi_invariant(p):
    g = build_group("sym-essential:3")
    det = det_character(g)
    q = twisted_reynolds(g, det, p)
    for i in range(g.order):
        assert g.act(i, q) == q * det(i)


@given(group_polys("monomial:2,2"))
def test_rewrite_roundtrip(p):
    g = build_group("monomial:2,2")
    inv = basic_invariants(g)
    r = reynolds(g, p)
    assert expand_in_x(rewrite_in_invariants(r, inv), inv) == r


def test_coinvariant_basis_small():
    b = coinvariant_basis(build_group("sym:2"))
    assert [str(p) for p in b.polys] == ["1", "x1"]
    for desc in GROUPS:
        g = build_group(desc)
        assert len(coinvariant_basis(g)) == g.order


@pytest.mark.parametrize("desc", ["sym:3", "sym-essential:3", "monomial:2,2", "cyclic:4"])
def test_free_coords_roundtrip(desc):
    g = build_group(desc)
    inv = basic_invariants(g)
    basis = coinvariant_basis(g).polys
    x = g.ring.gens()
    s = x[0] ** 4 * x[-1] - x[-1] ** 3 + 7
    coords = free_coords(s, g)
    rebuilt = g.ring.zero()
    for c, b in zip(coords, basis):
        rebuilt = rebuilt + expand_in_x(c, inv) * b
    assert rebuilt == s


@given(group_polys("sym-essential:3", 5))
def test_free_coords_roundtrip_property(s):
    g = build_group("sym-essential:3")
    inv = basic_invariants(g)
    basis = coinvariant_basis(g).polys
    coords = free_coords(s, g)
    rebuilt = sum((expand_in_x(c, inv) * b for c, b in zip(coords, basis)), g.ring.zero())
    assert rebuilt == s
