from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from refldisc.poly import Poly, PolyRing

settings.register_profile("default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

XYZ = PolyRing(("x", "y", "z"))

small_fractions = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def polys(draw, ring: PolyRing = XYZ, max_terms: int = 4, max_exp: int = 3) -> Poly:
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(ring.nvars))
        terms[e] = draw(small_fractions)
    return Poly(ring, terms)


@st.composite
def nonzero_polys(draw, ring: PolyRing = XYZ, max_terms: int = 3, max_exp: int = 2) -> Poly:
    p = draw(polys(ring, max_terms, max_exp))
    if p.is_zero():
        p = ring.one() + ring.var(0)
    return p
