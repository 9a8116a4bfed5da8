"""Basic invariants, Reynolds operators, J, z, the discriminant and coinvariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Sequence

from .groups import Character, ReflectionGroup
from .linalg import Echelon, NoSolution, PolyMatrix, SquareSolver, determinant
from .poly import Poly, PolyRing, monomials_of_degree, scalar_ratio, weighted_monomials
from .scalars import Scalar, conj
from .series import geometric

__all__ = [
    "NotInvariant",
    "InvariantBasis",
    "CoinvariantBasis",
    "DiscriminantData",
    "FreeModuleSolver",
    "reynolds",
    "twisted_reynolds",
    "basic_invariants",
    "jacobian_matrix",
    "jacobian_poly",
    "arrangement_poly",
    "rewrite_in_invariants",
    "expand_in_x",
    "discriminant",
    "coinvariant_basis",
    "free_coords",
    "is_invariant",
]


class NotInvariant(ValueError):
    """The polynomial is not a polynomial in the basic invariants."""


# --- group averages ------------------------------------------------------


def reynolds(group: ReflectionGroup, p: Poly) -> Poly:
    """(1/|G|) sum_g g(p)."""
    total = group.ring.zero()
    for i in range(group.order):
        total = total + group.act(i, p)
    return total * Fraction(1, group.order)


def twisted_reynolds(group: ReflectionGroup, chi: Character, p: Poly) -> Poly:
    """(1/|G|) sum_g chi(g^-1) g(p); the result q satisfies g(q) = chi(g) q for linear chi."""
    total = group.ring.zero()
    for i in range(group.order):
        c = conj(chi(i))  # chi(g^-1) for a character of a finite group
        if c != 0:
            total = total + group.act(i, p) * c
    return total * Fraction(1, group.order)


def is_invariant(group: ReflectionGroup, p: Poly, elements: Sequence[int] | None = None) -> bool:
    idx = group.generators if elements is None else elements
    return all(group.act(i, p) == p for i in idx)


# --- basic invariants ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class InvariantBasis:
    group: ReflectionGroup
    polys: tuple[Poly, ...]
    degrees: tuple[int, ...]
    uring: PolyRing

    @property
    def xring(self) -> PolyRing:
        return self.group.ring

    @property
    def n(self) -> int:
        return len(self.polys)


def _elementary(gens: Sequence[Poly], k: int, ring: PolyRing) -> Poly:
    # e_k by the generating-function recursion prod (1 + x_i T)
    e = [ring.one()] + [ring.zero()] * k
    for x in gens:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e[k]


@lru_cache(maxsize=None)
def _basic_invariants_cached(group: ReflectionGroup) -> InvariantBasis:
    ring = group.ring
    gens = ring.gens()
    fam = group.family
    if fam == "cyclic":
        polys = [gens[0] ** group.params[0]]
    elif fam == "sym":
        polys = [_elementary(gens, k, ring) for k in range(1, group.dim + 1)]
    elif fam == "sym-essential":
        n = group.params[0]
        last = -sum(gens[1:], gens[0])
        coords = gens + [last]
        polys = [sum((x**k for x in coords[1:]), coords[0] ** k) for k in range(2, n + 1)]
    elif fam == "monomial":
        r, n = group.params
        polys = [sum((x ** (r * i) for x in gens[1:]), gens[0] ** (r * i)) * Fraction(1, i * r) for i in range(1, n + 1)]
    else:
        raise ValueError(fam)
    degrees = tuple(p.total_degree() for p in polys)
    if degrees != tuple(group.degrees):
        raise RuntimeError(f"basic invariant degrees {degrees} differ from {group.degrees}")
    for p in polys:
        if not p.is_homogeneous() or not is_invariant(group, p):
            raise RuntimeError(f"{p} is not a homogeneous invariant")
    uring = PolyRing(tuple(f"u{i}" for i in range(1, len(polys) + 1)), degrees)
    basis = InvariantBasis(group, tuple(polys), degrees, uring)
    if jacobian_poly(basis).is_zero():
        raise RuntimeError("basic invariants are algebraically dependent")
    return basis


def basic_invariants(group: ReflectionGroup) -> InvariantBasis:
    """Family choice of basic invariants; verified invariant, of the right degrees, independent."""
    return _basic_invariants_cached(group)


def jacobian_matrix(inv: InvariantBasis) -> PolyMatrix:
    return PolyMatrix(inv.xring, [[f.diff(j) for j in range(inv.xring.nvars)] for f in inv.polys])


def jacobian_poly(inv: InvariantBasis) -> Poly:
    """det(d f_i / d x_j)."""
    return determinant(jacobian_matrix(inv))


def arrangement_poly(group: ReflectionGroup) -> Poly:
    """Product of the normalized mirror forms, one per mirror."""
    z = group.ring.one()
    for k in range(group.m1):
        z = z * group.mirror_form(k)
    return z


# --- free-module solving over the invariant ring --------------------------


class FreeModuleSolver:
    """Solve s = sum_c r_c(f) * b_c degree by degree.

    ``basis`` is a list of homogeneous polynomials in x.  With basis = [1] this
    rewrites invariants in the basic invariants (the column space is then a
    proper subspace and membership is checked).
    """

    def __init__(self, inv: InvariantBasis, basis: Sequence[Poly]):
        self.inv = inv
        self.basis = list(basis)
        self.bdeg = [b.total_degree() for b in self.basis]
        self._powers: dict[tuple[int, ...], Poly] = {(0,) * inv.n: inv.xring.one()}
        self._cache: dict[int, tuple] = {}

    def fpower(self, alpha: tuple[int, ...]) -> Poly:
        p = self._powers.get(alpha)
        if p is None:
            i = next(k for k, a in enumerate(alpha) if a)
            smaller = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
            p = self.fpower(smaller) * self.inv.polys[i]
            self._powers[alpha] = p
        return p

    def _degree_data(self, k: int):
        data = self._cache.get(k)
        if data is None:
            rows = {e: i for i, e in enumerate(monomials_of_degree(self.inv.xring.nvars, k))}
            labels = []
            columns = []
            for c, (b, d) in enumerate(zip(self.basis, self.bdeg)):
                for alpha in weighted_monomials(self.inv.degrees, k - d):
                    prodp = self.fpower(alpha) * b
                    columns.append({rows[e]: v for e, v in prodp.terms.items()})
                    labels.append((c, alpha))
            solver = SquareSolver(columns, len(rows)) if columns else None
            data = (rows, labels, solver)
            self._cache[k] = data
        return data

    def coords(self, s: Poly) -> list[Poly]:
        """The coefficients r_c as polynomials in the u-variables."""
        uring = self.inv.uring
        out = [uring.zero() for _ in self.basis]
        for k, part in s.homogeneous_components().items():
            rows, labels, solver = self._degree_data(k)
            if solver is None:
                raise NoSolution(f"no basis columns in degree {k}")
            b = {rows[e]: v for e, v in part.terms.items()}
            x = solver.solve(b)
            for (c, alpha), v in zip(labels, x):
                if v != 0:
                    out[c] = out[c] + uring.monomial(alpha, v)
        return out

    def reconstruct(self, coords: Sequence[Poly]) -> Poly:
        total = self.inv.xring.zero()
        for r, b in zip(coords, self.basis):
            total = total + expand_in_x(r, self.inv) * b
        return total


@lru_cache(maxsize=None)
def _invariant_solver(inv: InvariantBasis) -> FreeModuleSolver:
    return FreeModuleSolver(inv, [inv.xring.one()])


def rewrite_in_invariants(p: Poly, inv: InvariantBasis) -> Poly:
    """The unique q in the u-variables with q(f_1, ..., f_n) = p."""
    try:
        return _invariant_solver(inv).coords(p)[0]
    except NoSolution as exc:
        raise NotInvariant(f"{p} is not a polynomial in the basic invariants") from exc


def expand_in_x(q: Poly, inv: InvariantBasis) -> Poly:
    """q(f_1, ..., f_n) as a polynomial in x."""
    return q.substitute(list(inv.polys), inv.xring)


# --- discriminant --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DiscriminantData:
    J: Poly
    z: Poly
    delta: Poly  # exact rewrite of z*J in the basic invariants
    unit: Scalar  # leading coefficient of delta
    jacobian_unit: Scalar  # J = jacobian_unit * prod L_H^(rho_H - 1)
    inv: InvariantBasis

    @property
    def delta_normalized(self) -> Poly:
        return self.delta * (1 / self.unit if isinstance(self.unit, Fraction) else self.unit.inverse())


@lru_cache(maxsize=None)
def discriminant(group: ReflectionGroup) -> DiscriminantData:
    """J, z and the discriminant as the rewrite of z*J."""
    inv = basic_invariants(group)
    J = jacobian_poly(inv)
    z = arrangement_poly(group)
    ring = group.ring
    mirror_prod = ring.one()
    for k, rho in enumerate(group.mirror_orders):
        mirror_prod = mirror_prod * group.mirror_form(k) ** (rho - 1)
    c = scalar_ratio(J, mirror_prod)
    if c is None:
        raise RuntimeError("Jacobian is not a product of mirror forms")
    delta = rewrite_in_invariants(z * J, inv)
    unit = delta.leading_term()[1]
    return DiscriminantData(J, z, delta, unit, c, inv)


# --- coinvariants --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoinvariantBasis:
    group: ReflectionGroup
    exponents: tuple[tuple[int, ...], ...]

    @property
    def polys(self) -> list[Poly]:
        return [self.group.ring.monomial(e) for e in self.exponents]

    @property
    def degrees(self) -> list[int]:
        return [sum(e) for e in self.exponents]

    def __len__(self):
        return len(self.exponents)


def _coinvariant_counts(degrees: Sequence[int]) -> list[int]:
    p = prod((geometric(d) for d in degrees), start=geometric(1))
    out = [0] * (p.total_degree() + 1)
    for (k,), c in p.terms.items():
        out[k] = int(c)
    return out


@lru_cache(maxsize=None)
def coinvariant_basis(group: ReflectionGroup) -> CoinvariantBasis:
    """Monomials spanning S/(R+): per degree, the first monomials in descending
    graded-lex order that are independent modulo the ideal."""
    inv = basic_invariants(group)
    n = group.dim
    counts = _coinvariant_counts(inv.degrees)
    chosen: list[tuple[int, ...]] = []
    for k, want in enumerate(counts):
        monos = monomials_of_degree(n, k)
        col = {e: i for i, e in enumerate(monos)}
        ech = Echelon(len(monos))
        for f, d in zip(inv.polys, inv.degrees):
            if d > k:
                continue
            for beta in monomials_of_degree(n, k - d):
                prodp = f * group.ring.monomial(beta)
                ech.add_vector({col[e]: v for e, v in prodp.terms.items()})
        got = 0
        for e in monos:
            if got == want:
                break
            if ech.add_vector({col[e]: Fraction(1)}):
                chosen.append(e)
                got += 1
        if got != want or ech.rank != len(monos):
            raise RuntimeError(f"coinvariant count mismatch in degree {k}")
    if len(chosen) != group.order:
        raise RuntimeError("coinvariant basis has the wrong size")
    return CoinvariantBasis(group, tuple(chosen))


@lru_cache(maxsize=None)
def coinvariant_solver(group: ReflectionGroup) -> FreeModuleSolver:
    return FreeModuleSolver(basic_invariants(group), coinvariant_basis(group).polys)


def free_coords(
    s: Poly, group: ReflectionGroup, inv: InvariantBasis | None = None, basis: CoinvariantBasis | None = None
) -> list[Poly]:
    """Coefficients r_c (in u) with s = sum_c r_c(f) b_c, indexed like the basis."""
    if inv is None and basis is None:
        return coinvariant_solver(group).coords(s)
    inv = inv or basic_invariants(group)
    basis = basis or coinvariant_basis(group)
    return FreeModuleSolver(inv, basis.polys).coords(s)
