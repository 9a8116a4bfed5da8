"""Isotypical Hilbert-Poincare series, fake degrees and rank formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

from .groups import (
    Character,
    ReflectionGroup,
    available_characters,
    conjugacy_classes,
    det_character,
    tensor_with,
)
from .linalg import PolyMatrix, determinant
from .partitions import Partition, cell_stats
from .poly import Poly, exact_divide
from .scalars import Scalar, conj
from .series import T_RING, SeriesQuotient, geometric, one_minus_t_power, series_value_at_one

__all__ = [
    "PreconditionError",
    "FakeDegree",
    "RankReport",
    "molien_isotypic",
    "fake_degree",
    "kirillov_series",
    "m_series",
    "rank_isotypic",
    "rank_sn",
    "abar_hilbert",
    "rank_abar",
    "rank_abar_series",
    "rank_abar_component",
    "component_ranks",
    "delta_irreducible_default",
    "rank_report",
]


class PreconditionError(ValueError):
    """A caller-asserted hypothesis (such as irreducibility of the discriminant) fails."""


@dataclass(frozen=True)
class FakeDegree:
    label: str
    numerator: Poly

    def at_one(self) -> Scalar:
        return self.numerator.evaluate([1])


def _invariant_denominator(group: ReflectionGroup) -> tuple[int, ...]:
    return tuple(group.degrees)


@lru_cache(maxsize=None)
def _class_kernels(group: ReflectionGroup) -> list[tuple[int, int, Poly]]:
    """For each class: (representative, size, prod(1 - t^d_i) / det(1 - t g))."""
    top = prod((one_minus_t_power(d) for d in group.degrees), start=T_RING.one())
    t = T_RING.var(0)
    out = []
    for cl in conjugacy_classes(group):
        g = group.elements[cl.rep]
        n = g.dim
        rows = [[(T_RING.one() if i == j else T_RING.zero()) - t * g.matrix[i][j] for j in range(n)] for i in range(n)]
        d = determinant(PolyMatrix(T_RING, rows))
        out.append((cl.rep, cl.size, exact_divide(top, d)))
    return out


def molien_isotypic(group: ReflectionGroup, chi: Character) -> SeriesQuotient:
    """Hilbert series of Hom_G(V_chi, S) over the denominator prod(1 - t^d_i)."""
    num = T_RING.zero()
    for rep, size, kernel in _class_kernels(group):
        c = conj(chi(rep))
        if c != 0:
            num = num + kernel * (c * size)
    num = num * Fraction(1, group.order)
    if not num.is_rational():
        raise ArithmeticError("isotypic series with irrational coefficients")
    return SeriesQuotient(num, _invariant_denominator(group))


def fake_degree(group: ReflectionGroup, chi: Character) -> FakeDegree:
    return FakeDegree(chi.name, molien_isotypic(group, chi).numerator)


def kirillov_series(lam: Partition) -> SeriesQuotient:
    """t^F / prod over cells (1 - t^hook), normalized to the denominator (1-t)...(1-t^n)."""
    st = cell_stats(lam)
    n = lam.n
    num = T_RING.monomial((st.F,))
    for k in range(1, n + 1):
        num = num * one_minus_t_power(k)
    for h in st.hooks.values():
        num = exact_divide(num, one_minus_t_power(h))
    return SeriesQuotient(num, tuple(range(1, n + 1)))


def det_twist(group: ReflectionGroup, chi: Character) -> Character:
    """The available irreducible chi tensor det."""
    return tensor_with(group, chi, det_character(group))


def m_series(group: ReflectionGroup, chi: Character) -> SeriesQuotient:
    """H_{S_i}(t) - t^m H_{S_i'}(t) with V_i' = V_i tensor det."""
    twisted = det_twist(group, chi)
    return molien_isotypic(group, chi) - molien_isotypic(group, twisted).shift(group.m)


def delta_irreducible_default(group: ReflectionGroup) -> bool:
    return group.family in ("cyclic", "sym", "sym-essential")


def _require_irreducible(group: ReflectionGroup, delta_irreducible: bool | None):
    if delta_irreducible is None:
        delta_irreducible = delta_irreducible_default(group)
    if not delta_irreducible:
        raise PreconditionError(f"the discriminant of {group.descriptor} is reducible; use the per-component ranks")


def _derivative_at_one(p: Poly) -> Scalar:
    return p.diff(0).evaluate([1])


def rank_isotypic(group: ReflectionGroup, chi: Character, delta_irreducible: bool | None = None) -> Fraction:
    """Rank of M_i over R/(Delta), as the t -> 1 limit of H_{M_i} / H_{R/(Delta)}."""
    _require_irreducible(group, delta_irreducible)
    mm = group.m + group.m1
    ms = m_series(group, chi)
    value = series_value_at_one(ms.numerator, one_minus_t_power(mm))
    twisted = det_twist(group, chi)
    k_i = molien_isotypic(group, chi).numerator
    k_j = molien_isotypic(group, twisted).numerator
    closed = Fraction(1, mm) * (group.m * twisted.dim + _derivative_at_one(k_j) - _derivative_at_one(k_i))
    if value != closed:
        raise ArithmeticError(f"series rank {value} differs from closed form {closed}")
    if value < 0 or Fraction(value).denominator != 1:
        raise ArithmeticError(f"rank {value} is not a nonnegative integer")
    return Fraction(value)


def rank_sn(lam: Partition) -> Fraction:
    """dim V_lambda * (1/2 + (A - F) / (2m)) with m = C(n, 2)."""
    st = cell_stats(lam)
    m = comb(lam.n, 2)
    if m == 0:
        raise ValueError("rank_sn needs n >= 2")
    return st.dim * (Fraction(1, 2) + Fraction(st.A - st.F, 2 * m))


def abar_hilbert(group: ReflectionGroup) -> SeriesQuotient:
    """(|G| - prod_i [d_i]_t) / (1 - t)^n."""
    p = prod((geometric(d) for d in group.degrees), start=T_RING.one())
    return SeriesQuotient(T_RING.const(group.order) - p, (1,) * group.dim)


def rank_abar(group: ReflectionGroup) -> Fraction:
    """|G|^2 m / (2 (m + m1))."""
    return Fraction(group.order**2 * group.m, 2 * (group.m + group.m1))


def rank_abar_series(group: ReflectionGroup, delta_irreducible: bool | None = None) -> Scalar:
    """The same rank as the limit of H_Abar / H_{R/(Delta)} at t = 1."""
    _require_irreducible(group, delta_irreducible)
    h = abar_hilbert(group)
    num = h.numerator * prod((one_minus_t_power(d) for d in group.degrees), start=T_RING.one())
    den = one_minus_t_power(1) ** group.dim * one_minus_t_power(group.m + group.m1)
    return series_value_at_one(num, den)


def rank_abar_component(order: int, r: int) -> Fraction:
    """C(r, 2) (|G| / r)^2, the rank of Abar along one mirror-orbit component."""
    if order <= 0 or r <= 0:
        raise ValueError("order and r must be positive")
    return comb(r, 2) * Fraction(order, r) ** 2


@dataclass(frozen=True)
class Component:
    r: int
    orbit_size: int
    rank: Fraction


def component_ranks(group: ReflectionGroup) -> list[Component]:
    out = []
    for orbit in group.mirror_orbits():
        r = group.mirror_orders[orbit[0]]
        out.append(Component(r, len(orbit), rank_abar_component(group.order, r)))
    return out


@dataclass
class RankReport:
    group: str
    labels: list[tuple[str, int, Fraction]] = field(default_factory=list)
    rank_abar: Fraction | None = None
    components: list[Component] = field(default_factory=list)

    def to_json(self) -> dict:
        def num(q: Fraction):
            return int(q) if q.denominator == 1 else str(q)

        return {
            "group": self.group,
            "labels": [{"name": n, "dim": d, "rank": num(r)} for n, d, r in self.labels],
            "rank_abar": None if self.rank_abar is None else num(self.rank_abar),
            "components": [{"r": c.r, "orbit_size": c.orbit_size, "rank": num(c.rank)} for c in self.components],
        }


def rank_report(group: ReflectionGroup, per_component: bool = False, delta_irreducible: bool | None = None) -> RankReport:
    """Per-label ranks and rank of Abar; per-component data on request.

    Groups with reducible discriminant only support the per-component part.
    """
    if delta_irreducible is None:
        delta_irreducible = delta_irreducible_default(group)
    report = RankReport(group.descriptor)
    if delta_irreducible:
        for chi in available_characters(group):
            report.labels.append((chi.name, chi.dim, rank_isotypic(group, chi, True)))
        report.rank_abar = rank_abar(group)
    elif not per_component:
        raise PreconditionError(f"the discriminant of {group.descriptor} is reducible; use the per-component ranks")
    if per_component:
        report.components = component_ranks(group)
    return report
