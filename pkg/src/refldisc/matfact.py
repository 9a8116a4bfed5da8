"""Matrix factorizations of the discriminant and related determinant identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Sequence

from .groups import Character, ReflectionGroup, UnsupportedGroup, character_table, det_character, tensor_with
from .invariants import (
    FreeModuleSolver,
    InvariantBasis,
    coinvariant_basis,
    discriminant,
    expand_in_x,
    free_coords,
    rewrite_in_invariants,
)
from .linalg import Echelon, PolyMatrix, adjugate, adjugate_compound, compound_matrix, determinant
from .poly import Poly, PolyRing, exact_divide, scalar_ratio
from .scalars import Scalar, conj, fmt_scalar

__all__ = [
    "VerificationError",
    "MatrixFactorization",
    "QuiverRepB",
    "NablaMatrix",
    "IsotypicBlock",
    "LogMatrixFactorization",
    "SwallowtailMatch",
    "verify_mf",
    "as_quiver_rep",
    "mult_matrix",
    "isotypic_blocks",
    "nabla_matrix",
    "nabla_det_at",
    "group_matrix",
    "group_matrix_check",
    "monomial_log_mf",
    "hovinen_matrix",
    "hovinen_mf",
    "swallowtail_delta",
    "HOVINEN_RING",
    "match_swallowtail",
]


class VerificationError(ArithmeticError):
    """A matrix factorization identity failed."""


@dataclass(frozen=True, eq=False)
class MatrixFactorization:
    """U V = V U = f I, with U, V square over the ring of f."""

    U: PolyMatrix
    V: PolyMatrix
    f: Poly
    unit: Scalar = Fraction(1)
    label: str = ""

    @property
    def size(self) -> int:
        return self.U.nrows

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "size": self.size,
            "f": str(self.f),
            "U": self.U.to_strings(),
            "V": self.V.to_strings(),
            "verified": verify_mf(self),
            "unit": fmt_scalar(self.unit),
        }


def verify_mf(mf: MatrixFactorization) -> bool:
    """True iff U V = V U = f I exactly."""
    U, V = mf.U, mf.V
    if U.nrows != V.ncols or U.ncols != V.nrows:
        raise ValueError(f"size mismatch: U is {U.shape}, V is {V.shape}")
    return (U * V).is_scalar_multiple_of_identity(mf.f) and (V * U).is_scalar_multiple_of_identity(mf.f)


@dataclass(frozen=True, eq=False)
class QuiverRepB:
    """Two free modules of ranks plus/minus and maps u, v with uv = f e+ and vu = f e-."""

    plus: int
    minus: int
    u: PolyMatrix
    v: PolyMatrix
    f: Poly

    def relations_hold(self) -> bool:
        return (self.u * self.v).is_scalar_multiple_of_identity(self.f) and (self.v * self.u).is_scalar_multiple_of_identity(
            self.f
        )


def as_quiver_rep(mf: MatrixFactorization) -> QuiverRepB:
    if not verify_mf(mf):
        raise VerificationError("not a matrix factorization")
    rep = QuiverRepB(mf.U.nrows, mf.V.nrows, mf.U, mf.V, mf.f)
    if not rep.relations_hold():
        raise VerificationError("quiver relations fail")
    return rep


# --- multiplication matrices on the free module S over R -------------------


@lru_cache(maxsize=None)
def mult_matrix(group: ReflectionGroup, multiplier: str = "J") -> PolyMatrix:
    """Matrix of multiplication by J (or z) on S in the coinvariant basis, entries in u."""
    data = discriminant(group)
    factor = {"J": data.J, "z": data.z}[multiplier]
    basis = coinvariant_basis(group)
    cols = [free_coords(factor * b, group) for b in basis.polys]
    n = len(cols)
    return PolyMatrix(data.inv.uring, [[cols[c][r] for c in range(n)] for r in range(n)])


def discriminant_mf(group: ReflectionGroup) -> MatrixFactorization:
    """(M_J, M_z) as a factorization of the exact rewrite of z J."""
    data = discriminant(group)
    return MatrixFactorization(mult_matrix(group, "J"), mult_matrix(group, "z"), data.delta, data.unit, "J|z")


# --- symmetry-adapted blocks ----------------------------------------------


@dataclass(frozen=True, eq=False)
class IsotypicBlock:
    label: str  # the source label chi of the J-block
    target: str  # chi tensor det^-1, the label J maps into
    J_block: PolyMatrix  # rows: target basis, columns: label basis
    z_block: PolyMatrix  # rows: label basis, columns: target basis
    mf: MatrixFactorization

    @property
    def size(self) -> int:
        return self.J_block.ncols


def _project(group: ReflectionGroup, chi: Character, p: Poly) -> Poly:
    total = group.ring.zero()
    for i in range(group.order):
        c = conj(chi(i))
        if c != 0:
            total = total + group.act(i, p) * c
    return total * Fraction(chi.dim, group.order)


@lru_cache(maxsize=None)
def symmetry_adapted_basis(group: ReflectionGroup) -> list[tuple[str, Poly]]:
    """Projected coinvariant monomials, independent modulo R+, grouped by label."""
    table = character_table(group)
    basis = coinvariant_basis(group)
    polys = basis.polys
    degs = basis.degrees
    out: list[tuple[str, Poly]] = []
    for chi in table.characters:
        echelons: dict[int, Echelon] = {}
        for b, d in zip(polys, degs):
            p = _project(group, chi, b)
            if p.is_zero():
                continue
            coords = free_coords(p, group)
            vec = {c: r.constant_term() for c, r in enumerate(coords) if degs[c] == d and r.constant_term() != 0}
            ech = echelons.setdefault(d, Echelon(len(polys)))
            if ech.add_vector(vec):
                out.append((chi.name, p))
    if len(out) != group.order:
        raise RuntimeError(f"symmetry-adapted basis has {len(out)} elements, expected {group.order}")
    return out


def isotypic_blocks(group: ReflectionGroup) -> list[IsotypicBlock]:
    """Blocks of multiplication by J and z in a symmetry-adapted basis.

    J maps the chi-isotypic part of S to the (chi tensor det^-1)-part and z maps
    it back, so each label gives a pair (J-block, z-block) that factors the
    exact discriminant rewrite.
    """
    if group.family not in ("cyclic", "sym", "sym-essential"):
        raise UnsupportedGroup(f"no character table for {group.descriptor}")
    data = discriminant(group)
    adapted = symmetry_adapted_basis(group)
    solver = FreeModuleSolver(data.inv, [p for _, p in adapted])
    labels = [lab for lab, _ in adapted]
    n = len(adapted)
    mJ = [solver.coords(data.J * p) for _, p in adapted]
    mz = [solver.coords(data.z * p) for _, p in adapted]
    uring = data.inv.uring
    table = character_table(group)
    detinv = det_character(group).conjugate()
    blocks = []
    for chi in table.characters:
        target = tensor_with(group, chi, detinv).name
        cols = [c for c in range(n) if labels[c] == chi.name]
        rows = [c for c in range(n) if labels[c] == target]
        # entries of the J columns outside the target label must vanish
        for c in cols:
            if any(not mJ[c][r].is_zero() for r in range(n) if labels[r] != target):
                raise VerificationError(f"J does not map {chi.name} into {target}")
        Jb = PolyMatrix(uring, [[mJ[c][r] for c in cols] for r in rows])
        zb = PolyMatrix(uring, [[mz[c][r] for c in rows] for r in cols])
        mf = MatrixFactorization(Jb, zb, data.delta, data.unit, chi.name)
        blocks.append(IsotypicBlock(chi.name, target, Jb, zb, mf))
    return blocks


# --- difference quotients and the group matrix ------------------------------


@dataclass(frozen=True, eq=False)
class NablaMatrix:
    ring: PolyRing  # x' variables then x'' variables
    matrix: PolyMatrix
    inv: InvariantBasis

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def primes(self) -> list[Poly]:
        return self.ring.gens()[: self.n]

    def double_primes(self) -> list[Poly]:
        return self.ring.gens()[self.n :]

    def identity_holds(self) -> bool:
        """sum_j nabla_i^j (x''_j - x'_j) = f_i(x'') - f_i(x') for every i."""
        xp, xpp = self.primes(), self.double_primes()
        for i, f in enumerate(self.inv.polys):
            lhs = sum((self.matrix[i, j] * (xpp[j] - xp[j]) for j in range(self.n)), self.ring.zero())
            if lhs != f.substitute(xpp, self.ring) - f.substitute(xp, self.ring):
                return False
        return True

    def on_diagonal(self) -> PolyMatrix:
        """nabla(x, x)."""
        x = self.inv.xring.gens()
        return self.matrix.map(lambda p: p.substitute(x + x, self.inv.xring))


def nabla_matrix(inv: InvariantBasis) -> NablaMatrix:
    """Telescoping divided differences, j = 1..n."""
    names = inv.xring.names
    n = len(names)
    ring = PolyRing(tuple(f"{a}'" for a in names) + tuple(f"{a}''" for a in names))
    g = ring.gens()
    xp, xpp = g[:n], g[n:]
    rows = []
    for f in inv.polys:
        row = []
        for j in range(n):
            hi = f.substitute(xpp[: j + 1] + xp[j + 1 :], ring)
            lo = f.substitute(xpp[:j] + xp[j:], ring)
            row.append(exact_divide(hi - lo, xpp[j] - xp[j]))
        rows.append(row)
    return NablaMatrix(ring, PolyMatrix(ring, rows), inv)


def nabla_det_at(group: ReflectionGroup, inv: InvariantBasis, g: int, nabla: NablaMatrix | None = None) -> Poly:
    """det nabla(x, g(x)) for the element with index g."""
    nabla = nabla or nabla_matrix(inv)
    x = group.ring.gens()
    images = x + group.form_images[g]
    return determinant(nabla.matrix.map(lambda p: p.substitute(images, group.ring)))


def group_matrix(group: ReflectionGroup, basis=None) -> PolyMatrix:
    """Phi[g][c] = g(b_c)."""
    basis = basis or coinvariant_basis(group)
    polys = basis.polys
    return PolyMatrix(group.ring, [[group.act(i, b) for b in polys] for i in range(group.order)])


@dataclass(frozen=True)
class GroupMatrixCheck:
    det: Poly
    square_unit: Scalar | None  # det^2 = square_unit * J^|G|
    half_unit: Scalar | None  # det = half_unit * J^(|G|/2) when |G| is even

    @property
    def ok(self) -> bool:
        return self.square_unit is not None and (self.half_unit is not None or self.det.is_zero())


def group_matrix_check(group: ReflectionGroup) -> GroupMatrixCheck:
    J = discriminant(group).J
    det = determinant(group_matrix(group))
    sq = scalar_ratio(det * det, J ** group.order)
    half = scalar_ratio(det, J ** (group.order // 2)) if group.order % 2 == 0 else None
    if group.order % 2:
        # for odd order only the squared identity is asserted
        return GroupMatrixCheck(det, sq, sq)
    return GroupMatrixCheck(det, sq, half)


# --- G(r,1,n): the logarithmic factorization ---------------------------------


@dataclass(frozen=True, eq=False)
class LogMatrixFactorization:
    r: int
    n: int
    mu: PolyMatrix  # in the u-variables
    det_mu: Poly
    delta: Poly  # exact rewrite of z J
    unit: Scalar  # det mu = unit * delta
    det_mu_x_unit: Scalar  # det mu(f) = det_mu_x_unit * z J in x
    pairs: list[MatrixFactorization] = field(default_factory=list)


def monomial_log_mf(r: int, n: int) -> LogMatrixFactorization:
    """mu = (r (i+j-1) p_{i+j-1}) and its compound pairs for G(r,1,n)."""
    from .groups import build_group

    if r < 2:
        raise ValueError("the logarithmic factorization is only set up for r >= 2")
    group = build_group("monomial", r, n)
    data = discriminant(group)
    inv = data.inv
    x = group.ring.gens()
    entries: dict[int, Poly] = {}
    for k in range(1, 2 * n):
        if k <= n:
            entries[k] = inv.uring.var(k - 1) * (r * k)
        else:
            power_sum = sum((xi ** (r * k) for xi in x[1:]), x[0] ** (r * k))
            entries[k] = rewrite_in_invariants(power_sum, inv)
    mu = PolyMatrix(inv.uring, [[entries[i + j + 1] for j in range(n)] for i in range(n)])
    det_mu = determinant(mu)
    unit = scalar_ratio(det_mu, data.delta)
    if unit is None:
        raise VerificationError("det mu is not a scalar multiple of the discriminant")
    x_unit = scalar_ratio(expand_in_x(det_mu, inv), data.z * data.J)
    if x_unit is None:
        raise VerificationError("det mu(f) is not a scalar multiple of z J")
    inv_unit = 1 / unit if isinstance(unit, Fraction) else unit.inverse()
    pairs = []
    for i in range(1, n + 1):
        U = compound_matrix(mu, i)
        V = adjugate_compound(mu, i) * inv_unit
        pairs.append(MatrixFactorization(U, V, data.delta, unit, f"Lambda^{i}"))
    return LogMatrixFactorization(r, n, mu, det_mu, data.delta, unit, x_unit, pairs)


# --- the swallowtail ----------------------------------------------------------

HOVINEN_RING = PolyRing(("u", "v", "w"), (2, 3, 4))
HOVINEN_RING_T = PolyRing(("u", "v", "w", "t"), (2, 3, 4, 0))


def swallowtail_delta(ring: PolyRing = HOVINEN_RING) -> Poly:
    """-v^4 - 2u^3v^2 + 9u^4w + 6uv^2w - 6u^2w^2 + w^3."""
    u, v, w = (ring.var(k) for k in "uvw")
    return -(v**4) - 2 * u**3 * v**2 + 9 * u**4 * w + 6 * u * v**2 * w - 6 * u**2 * w**2 + w**3


def hovinen_matrix(family: str, t: Scalar | None = None) -> PolyMatrix:
    """The Hovinen matrices M2, M40, M4m3 at parameter t (t=None: symbolic, M2 only)."""
    symbolic = t is None
    if symbolic:
        if family != "M2":
            raise ValueError("only M2 is polynomial in t")
        ring = HOVINEN_RING_T
        T = ring.var("t")
    else:
        ring = HOVINEN_RING
        T = ring.const(Fraction(t) if not hasattr(t, "inverse") else t)
    u, v, w = (ring.var(k) for k in "uvw")
    one = ring.one()
    if family == "M2":
        return PolyMatrix(
            ring,
            [
                [w - (T**2 - one) * u**2, v**2 + (T - 2) ** 2 * (T + 1) * u**3],
                [v**2 - (T - 1) * (T + 2) ** 2 * u**3, w**2 + 6 * u * v**2 + (T**2 - 7) * u**2 * w + (T**2 - 4) ** 2 * u**4],
            ],
        )
    if t == 0:
        raise ValueError(f"{family} needs t != 0")
    t = Fraction(t)
    zero = ring.zero()
    if family == "M40":
        return PolyMatrix(
            ring,
            [
                [-w + (1 - 2 * t) / t**2 * u**2, zero, v**2 + (t**2 - 4 * t + 1) / t * u * w + 2 * u**3],
                [v, -w, zero],
                [-((t + 1) ** 2) / t * u, v, -w + t * (t - 2) * u**2],
            ],
        )
    if family == "M4m3":
        return PolyMatrix(
            ring,
            [
                [
                    -w + (t + 4) * (3 * t + 4) / t**2 * u**2,
                    zero,
                    v**2 + (t**2 - t + 4) / t * u * w - (t + 3) * (3 * t + 4) / t * u**3,
                ],
                [v, -w + 3 * u**2, zero],
                [-(t + 1) * (t + 4) / t * u, v, -w + (t + 1) * (t + 3) * u**2],
            ],
        )
    raise ValueError(f"unknown Hovinen family {family!r}")


def hovinen_mf(family: str, t: Scalar | None = None) -> MatrixFactorization:
    """(M, adj M) as a factorization of det M, with det M = unit * Delta."""
    M = hovinen_matrix(family, t)
    det = determinant(M)
    unit = scalar_ratio(det, swallowtail_delta(M.ring))
    if unit is None:
        raise VerificationError(f"det {family}(t={t}) is not a multiple of the swallowtail")
    return MatrixFactorization(M, adjugate(M), det, unit, family)


def _integer_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """A Z-basis of {n : A n = 0} for the integer matrix A with the given rows."""
    k = len(rows[0])
    # each record is (A-column m, unit vector e_m); unimodular row operations
    recs = [[list(col), [1 if i == m else 0 for i in range(k)]] for m, col in enumerate(zip(*rows))]
    start = 0
    for c in range(len(rows)):
        while True:
            nz = [i for i in range(start, k) if recs[i][0][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(recs[i][0][c]))
            recs[start], recs[p] = recs[p], recs[start]
            done = True
            for i in range(start + 1, k):
                a = recs[i][0][c]
                if a:
                    q = a // recs[start][0][c]
                    recs[i][0] = [x - q * y for x, y in zip(recs[i][0], recs[start][0])]
                    recs[i][1] = [x - q * y for x, y in zip(recs[i][1], recs[start][1])]
                    if recs[i][0][c]:
                        done = False
            if done:
                start += 1
                break
    return [rec[1] for rec in recs if not any(rec[0])]


@dataclass(frozen=True)
class SwallowtailMatch:
    matches: bool
    shift_computed: Fraction  # w -> w + shift*u^2 removes u^2 w^2 from the computed discriminant
    shift_reference: Fraction
    relations: list[list[int]]
    computed_normal_form: Poly
    reference_normal_form: Poly

    def to_json(self) -> dict:
        return {
            "matches": self.matches,
            "shift_computed": str(self.shift_computed),
            "shift_reference": str(self.shift_reference),
            "computed_normal_form": str(self.computed_normal_form),
            "reference_normal_form": str(self.reference_normal_form),
        }


def _kill_u2w2(p: Poly) -> tuple[Poly, Fraction]:
    u, v, w = p.ring.gens()
    c3 = p.coefficient((0, 0, 3))
    c2 = p.coefficient((2, 0, 2))
    if c3 == 0:
        raise VerificationError("no w^3 term")
    eps = -Fraction(c2) / (3 * Fraction(c3))
    return p.substitute([u, v, w + eps * u**2], p.ring), eps


def match_swallowtail(delta: Poly, reference: Poly | None = None) -> SwallowtailMatch:
    """Decide whether delta(alpha u, beta v, gamma w + delta u^2) = lambda * reference for some
    nonzero alpha, beta, gamma, lambda (over C) and some delta.

    Both sides are first put in the normal form without a u^2 w^2 term, which fixes
    delta; the remaining torus action is tested through the integer relations among
    the exponent vectors (1, a, b, e) of the supports.
    """
    ring = HOVINEN_RING
    q1 = Poly(ring, dict(delta.terms))
    if tuple(delta.ring.weights) != ring.weights:
        raise ValueError("expected weights (2, 3, 4)")
    q2 = swallowtail_delta(ring) if reference is None else Poly(ring, dict(reference.terms))
    n1, e1 = _kill_u2w2(q1)
    n2, e2 = _kill_u2w2(q2)
    if set(n1.terms) != set(n2.terms):
        return SwallowtailMatch(False, e1, e2, [], n1, n2)
    monos = sorted(n1.terms)
    rows = [[1] * len(monos)] + [[m[i] for m in monos] for i in range(3)]
    kernel = _integer_kernel(rows)
    ratios = [Fraction(n1.terms[m]) / Fraction(n2.terms[m]) for m in monos]
    ok = all(prod((q**k for q, k in zip(ratios, vec)), start=Fraction(1)) == 1 for vec in kernel)
    return SwallowtailMatch(ok, e1, e2, kernel, n1, n2)
