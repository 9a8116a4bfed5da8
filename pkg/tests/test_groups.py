from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from refldisc.groups import (
    UnsupportedGroup,
    available_characters,
    build_group,
    character_table,
    conjugacy_classes,
    det_character,
    find_character,
    linear_characters,
    parse_descriptor,
    tensor_with,
)
from refldisc.scalars import conj


@pytest.mark.parametrize(
    "desc,order,degrees,m,m1",
    [
        ("cyclic:3", 3, (3,), 2, 1),
        ("cyclic:6", 6, (6,), 5, 1),
        ("sym:2", 2, (1, 2), 1, 1),
        ("sym:3", 6, (1, 2, 3), 3, 3),
        ("sym-essential:3", 6, (2, 3), 3, 3),
        ("sym-essential:4", 24, (2, 3, 4), 6, 6),
        ("monomial:2,2", 8, (2, 4), 4, 4),
        ("monomial:3,2", 18, (3, 6), 7, 5),
    ],
)
def test_group_invariants(desc, order, degrees, m, m1):
    g = build_group(desc)
    assert g.order == order
    assert tuple(g.degrees) == degrees
    assert g.m == m and g.m1 == m1


def test_descriptor_parsing():
    assert parse_descriptor("sym-essential:4") == ("sym-essential", (4,))
    assert parse_descriptor("monomial:2,3") == ("monomial", (2, 3))
    for bad in ("foo:3", "sym", "cyclic:x", "monomial:2"):
        with pytest.raises(ValueError):
            parse_descriptor(bad)


def test_true_reflection_flag():
    assert build_group("sym:3").is_true_reflection_group
    assert build_group("monomial:2,2").is_true_reflection_group
    assert not build_group("cyclic:3").is_true_reflection_group
    assert not build_group("monomial:3,2").is_true_reflection_group


def test_mirror_orders():
    g = build_group("monomial:3,2")
    orders = sorted(g.mirror_orders[k] for k in range(len(g.mirrors)))
    # coordinate mirrors carry order 3, the x1 = zeta x2 mirrors order 2
    assert orders == [2, 2, 2, 3, 3]
    orbits = g.mirror_orbits()
    assert sorted(len(o) for o in orbits) == [2, 3]


def test_sym_class_sizes():
    g = build_group("sym:4")
    assert [cl.size for cl in conjugacy_classes(g)] == [1, 6, 3, 8, 6]


@pytest.mark.parametrize("desc", ["cyclic:4", "cyclic:5", "sym:3", "sym:4", "sym-essential:5", "sym:6"])
def test_character_orthogonality(desc):
    g = build_group(desc)
    t = character_table(g)
    chars = t.characters
    for a in chars:
        for b in chars:
            assert t.inner(a, b) == (1 if a is b else 0)
    assert sum(c.dim**2 for c in chars) == g.order


def test_unsupported_table():
    with pytest.raises(UnsupportedGroup):
        character_table(build_group("monomial:2,2"))


def test_linear_characters_of_monomial():
    g = build_group("monomial:3,2")
    lin = linear_characters(g)
    assert len(lin) == 6
    det = det_character(g)
    assert any(all(a == b for a, b in zip(c.values, det.values)) for c in lin)


def test_find_character_labels():
    g = build_group("sym-essential:4")
    assert find_character(g, "triv").name == "(4)"
    assert find_character(g, "det").name == "(1,1,1,1)"
    assert find_character(g, "3,1").name == "(3,1)"
    c = build_group("cyclic:5")
    d = find_character(c, "det")
    assert find_character(c, "det^-1").values == tuple(conj(v) for v in d.values)
    with pytest.raises(KeyError):
        find_character(g, "nonsense")


def test_tensor_with_det_on_s4():
    g = build_group("sym-essential:4")
    det = det_character(g)
    pairs = {c.name: tensor_with(g, c, det).name for c in available_characters(g)}
    assert pairs["(3,1)"] == "(2,1,1)" and pairs["(2,2)"] == "(2,2)"


@given(st.sampled_from(["cyclic:4", "sym:3", "sym-essential:4", "monomial:2,2", "monomial:3,2"]), st.data())
def test_group_axioms(desc, data):
    g = build_group(desc)
    i = data.draw(st.integers(0, g.order - 1))
    j = data.draw(st.integers(0, g.order - 1))
    k = data.draw(st.integers(0, g.order - 1))
    assert g.mul(g.mul(i, j), k) == g.mul(i, g.mul(j, k))
    assert g.mul(i, g.inverses[i]) == g.identity_index
    # det is multiplicative
    assert g.elements[g.mul(i, j)].det == g.elements[i].det * g.elements[j].det


@given(st.sampled_from(["sym:3", "monomial:2,2", "cyclic:3"]), st.data())
def test_action_is_a_left_action(desc, data):
    from refldisc.poly import Poly

    g = build_group(desc)
    i = data.draw(st.integers(0, g.order - 1))
    j = data.draw(st.integers(0, g.order - 1))
    x = g.ring.gens()
    p = x[0] ** 2 * x[-1] + Fraction(1, 2) * x[0] if len(x) > 1 else x[0] ** 2 + x[0]
    assert isinstance(p, Poly)
    assert g.act(i, g.act(j, p)) == g.act(g.mul(i, j), p)
