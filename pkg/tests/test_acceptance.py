"""Acceptance suite: ten end-to-end checks, each printing one PASS/FAIL line.

Run through pytest (``pytest tests/test_acceptance.py``; the lines bypass
output capture) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from math import comb

import pytest

from refldisc.groups import build_group, find_character
from refldisc.invariants import basic_invariants, discriminant
from refldisc.isotypic import (
    component_ranks,
    kirillov_series,
    m_series,
    molien_isotypic,
    rank_abar,
    rank_abar_series,
    rank_isotypic,
    rank_sn,
)
from refldisc.linalg import determinant
from refldisc.matfact import (
    HOVINEN_RING,
    group_matrix_check,
    hovinen_matrix,
    match_swallowtail,
    monomial_log_mf,
    mult_matrix,
    nabla_det_at,
    nabla_matrix,
    swallowtail_delta,
    verify_mf,
)
from refldisc.mckay import abar_quiver, mckay_quiver_chars, mckay_quiver_sn
from refldisc.partitions import partitions_of
from refldisc.poly import Poly, parse_poly, scalar_ratio

# --- small oracles ---------------------------------------------------------------


def _rational_root(q: Fraction, k: int) -> Fraction | None:
    """The nonnegative rational k-th root of q >= 0, if it exists."""
    if q < 0:
        return None

    def iroot(a: int) -> int | None:
        lo, hi = 0, max(1, a)
        while lo <= hi:
            mid = (lo + hi) // 2
            p = mid**k
            if p == a:
                return mid
            lo, hi = (mid + 1, hi) if p < a else (lo, mid - 1)
        return None

    num, den = iroot(q.numerator), iroot(q.denominator)
    return None if num is None or den is None else Fraction(num, den)


def swallowtail_witness(delta: Poly, reference: Poly):
    """Find rational (alpha, beta, gamma, shift, lam) with
    delta(alpha u, beta v, gamma w + shift u^2) = lam * reference, by matching coefficients.

    The u^2 w^2 coefficient fixes the shift on both sides; then the w^3, v^4 and
    u^4 w coefficients express lam, beta^4 and alpha^4 through gamma, and gamma is
    searched among small integers until every remaining coefficient matches.
    """
    R = HOVINEN_RING
    u, v, w = R.gens()

    def kill(p: Poly):
        eps = -Fraction(p.coefficient((2, 0, 2))) / (3 * Fraction(p.coefficient((0, 0, 3))))
        return p.substitute([u, v, w + eps * u**2], R), eps

    n1, e1 = kill(delta)
    n2, e2 = kill(reference)
    c = lambda p, e: Fraction(p.coefficient(e))  # noqa: E731
    for g in range(1, 200):
        for gamma in (Fraction(g), Fraction(-g)):
            lam = c(n1, (0, 0, 3)) * gamma**3 / c(n2, (0, 0, 3))
            b4 = _rational_root(lam * c(n2, (0, 4, 0)) / c(n1, (0, 4, 0)), 4)
            a4 = _rational_root(lam * c(n2, (4, 0, 1)) / (c(n1, (4, 0, 1)) * gamma), 4)
            if not b4 or not a4:
                continue
            for alpha in (a4, -a4):
                for beta in (b4, -b4):
                    if n1.substitute([alpha * u, beta * v, gamma * w], R) == n2 * lam:
                        # undo the normal forms: w -> gamma (w - e2 u^2) + e1 alpha^2 u^2
                        shift = -gamma * e2 + e1 * alpha**2
                        return alpha, beta, gamma, shift, lam
    return None


def _report(n: int, title: str, ok: bool, elapsed: float, limit: float, detail: str = "") -> bool:
    ok = ok and elapsed < limit
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {title} ({elapsed:.1f}s / limit {limit:.0f}s)"
    if detail:
        line += f"  {detail}"
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()
    return ok


# --- the ten criteria --------------------------------------------------------------


def criterion_1() -> tuple[bool, str]:
    g = build_group("sym-essential:4")
    data = discriminant(g)
    x, y, z = g.ring.gens()
    ref_J = (x - y) * (x - z) * (y - z) * (2 * x + y + z) * (x + 2 * y + z) * (x + y + 2 * z)
    j_ok = scalar_ratio(data.J, ref_J) is not None
    R = HOVINEN_RING
    computed = Poly(R, dict(data.delta.terms))
    reference = parse_poly("-v^4 - 2*u^3*v^2 + 9*u^4*w + 6*u*v^2*w - 6*u^2*w^2 + w^3", R)
    wit = swallowtail_witness(computed, reference)
    if wit is None:
        return False, "no rational change of invariants found"
    a, b, c, d, lam = wit
    u, v, w = R.gens()
    explicit = computed.substitute([a * u, b * v, c * w + d * u**2], R) == reference * lam
    lattice = match_swallowtail(data.delta).matches
    return j_ok and explicit and lattice, f"alpha={a} beta={b} gamma={c} delta={d} lambda={lam}"


def criterion_2() -> tuple[bool, str]:
    g = build_group("sym-essential:4")
    expected = {"(4)": 1, "(3,1)": 2, "(2,2)": 1, "(2,1,1)": 1, "(1,1,1,1)": 0}
    ok = True
    total = 0
    for lam in partitions_of(4):
        chi = find_character(g, str(lam))
        r1, r2 = rank_sn(lam), rank_isotypic(g, chi)
        ok &= r1 == r2 == expected[str(lam)]
        total += chi.dim * r2
    ok &= total == 12 and rank_abar(g) == 144 and rank_abar(g) == total**2
    return ok, f"sum dim*rank = {total}, rank Abar = {rank_abar(g)}"


def _j_squared_ok(desc: str) -> bool:
    g = build_group(desc)
    data = discriminant(g)
    MJ = mult_matrix(g, "J")
    return (MJ * MJ).is_scalar_multiple_of_identity(data.delta * data.jacobian_unit)


def _zj_ok(desc: str) -> bool:
    g = build_group(desc)
    data = discriminant(g)
    MJ, Mz = mult_matrix(g, "J"), mult_matrix(g, "z")
    return (Mz * MJ).is_scalar_multiple_of_identity(data.delta) and (MJ * Mz).is_scalar_multiple_of_identity(data.delta)


def criterion_3_small() -> tuple[bool, str]:
    ok = all(_j_squared_ok(d) for d in ("sym:2", "sym-essential:3"))
    ok &= all(_zj_ok(f"cyclic:{d}") for d in range(2, 7))
    ok &= _zj_ok("monomial:2,2")
    return ok, "sym:2, sym-essential:3, cyclic:2..6, monomial:2,2"


def criterion_3_large() -> tuple[bool, str]:
    return _j_squared_ok("sym-essential:4"), "sym-essential:4 (24x24)"


def criterion_4() -> tuple[bool, str]:
    groups = [f"cyclic:{d}" for d in range(2, 6)] + ["sym:3", "sym-essential:3", "sym-essential:4"]
    for desc in groups:
        g = build_group(desc)
        inv = basic_invariants(g)
        nab = nabla_matrix(inv)
        J = discriminant(g).J
        for i in range(g.order):
            want = J if i == g.identity_index else g.ring.zero()
            if nabla_det_at(g, inv, i, nab) != want:
                return False, f"{desc}, element {i}"
    return True, ", ".join(groups)


def criterion_5() -> tuple[bool, str]:
    groups = [f"cyclic:{d}" for d in range(2, 6)] + ["sym:3", "sym-essential:3"]
    units = []
    for desc in groups:
        chk = group_matrix_check(build_group(desc))
        if chk.square_unit is None or chk.square_unit == 0:
            return False, f"{desc}: det^2 is not a unit times J^|G|"
        if build_group(desc).order % 2 == 0 and chk.half_unit is None:
            return False, f"{desc}: det is not a unit times J^(|G|/2)"
        units.append(f"{desc}:{chk.square_unit}")
    return True, "units " + " ".join(units)


def criterion_6() -> tuple[bool, str]:
    sym = determinant(hovinen_matrix("M2"))
    ok = sym == swallowtail_delta(sym.ring)
    units = []
    for fam, ts in (("M40", (1, -2, 3)), ("M4m3", (1, -2, 3))):
        for t in ts:
            d = determinant(hovinen_matrix(fam, Fraction(t)))
            unit = scalar_ratio(d, swallowtail_delta(d.ring))
            ok &= unit is not None and unit != 0
            units.append(f"{fam}(t={t}):{unit}")
    return ok, " ".join(units)


def criterion_7() -> tuple[bool, str]:
    checked = 0
    for n in range(2, 6):
        for desc in (f"sym:{n}", f"sym-essential:{n}"):
            g = build_group(desc)
            for lam in partitions_of(n):
                chi = find_character(g, str(lam))
                if desc.startswith("sym:") and kirillov_series(lam) != molien_isotypic(g, chi):
                    return False, f"Kirillov series differs for {lam}"
                coeffs = m_series(g, chi).coefficients(2 * (g.m + g.m1))
                if any(c < 0 for c in coeffs):
                    return False, f"negative M-series coefficient for {desc} {lam}"
                # rank_isotypic itself asserts series limit == closed form
                if rank_isotypic(g, chi) != rank_sn(lam):
                    return False, f"rank mismatch for {desc} {lam}"
                checked += 1
    return True, f"{checked} labels"


def criterion_8() -> tuple[bool, str]:
    ok = all(rank_abar(build_group("cyclic", d)) == comb(d, 2) for d in range(2, 9))
    irreducible = [f"cyclic:{d}" for d in range(2, 9)] + [f"sym:{n}" for n in range(2, 6)]
    irreducible += [f"sym-essential:{n}" for n in range(2, 6)]
    ok &= all(rank_abar(build_group(d)) == rank_abar_series(build_group(d)) for d in irreducible)
    g = build_group("monomial:2,2")
    comps = component_ranks(g)
    weighted = sum(c.rank * c.r * c.orbit_size for c in comps)
    deg_delta = g.m + g.m1
    ok &= sum(c.r * c.orbit_size for c in comps) == deg_delta
    ok &= weighted == deg_delta * rank_abar(g)
    ok &= weighted == deg_delta * rank_abar_series(g, delta_irreducible=True)
    return ok, f"monomial:2,2 components {[int(c.rank) for c in comps]}, weighted sum {weighted}"


def criterion_9() -> tuple[bool, str]:
    q = mckay_quiver_sn(4)
    s4 = [["(4)", "(3,1)"], ["(3,1)", "(4)"], ["(3,1)", "(2,2)"], ["(3,1)", "(2,1,1)"], ["(2,2)", "(3,1)"],
          ["(2,2)", "(2,1,1)"], ["(2,1,1)", "(3,1)"], ["(2,1,1)", "(2,2)"], ["(2,1,1)", "(1,1,1,1)"],
          ["(1,1,1,1)", "(2,1,1)"]]  # fmt: skip
    ok = q.arrows == {(a, b): 1 for a, b in s4} and q.loops == {"(3,1)": 1, "(2,1,1)": 1}
    for n in range(2, 7):
        ok &= mckay_quiver_chars(build_group("sym", n)) == mckay_quiver_sn(n)
        ok &= mckay_quiver_chars(build_group("sym-essential", n)) == mckay_quiver_sn(n)
    ab = abar_quiver(q, find_character(build_group("sym-essential:4"), "det").name)
    ok &= ab.vertices == ["(4)", "(3,1)", "(2,2)", "(2,1,1)"] and ab.arrow_count() == 8
    return ok, f"S4: {q.arrow_count()} arrows, {q.loop_count()} loops"


def criterion_10() -> tuple[bool, str]:
    details = []
    for r, n in ((2, 2), (3, 2), (2, 3)):
        lm = monomial_log_mf(r, n)
        if lm.det_mu != lm.delta * lm.unit or not lm.det_mu_x_unit:
            return False, f"({r},{n}): det mu is not a unit times z J"
        if len(lm.pairs) != n or not all(verify_mf(p) for p in lm.pairs):
            return False, f"({r},{n}): a compound pair fails"
        details.append(f"({r},{n}) unit {lm.det_mu_x_unit}")
    return True, ", ".join(details)


CRITERIA = [
    (1, "swallowtail Jacobian and discriminant", criterion_1, 60),
    (2, "S4 rank table", criterion_2, 10),
    (3, "multiplication-matrix factorizations (small groups)", criterion_3_small, 10),
    (3, "multiplication-matrix factorization, sym-essential:4", criterion_3_large, 600),
    (4, "difference-quotient determinants", criterion_4, 300),
    (5, "group-matrix determinants", criterion_5, 300),
    (6, "Hovinen determinants", criterion_6, 30),
    (7, "isotypical series consistency", criterion_7, 60),
    (8, "Abar rank formulas", criterion_8, 10),
    (9, "McKay quivers", criterion_9, 30),
    (10, "logarithmic factorization for G(r,1,n)", criterion_10, 300),
]


def run_criterion(n: int, title: str, fn, limit: float) -> bool:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return _report(n, title, ok, time.perf_counter() - start, limit, detail)


@pytest.mark.parametrize("n,title,fn,limit", CRITERIA, ids=[f"c{c[0]}-{c[2].__name__}" for c in CRITERIA])
def test_criterion(n, title, fn, limit, capsys):
    with capsys.disabled():
        ok = run_criterion(n, title, fn, limit)
    assert ok


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    raise SystemExit(0 if all(results) else 1)
