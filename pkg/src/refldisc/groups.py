"""Finite reflection groups as explicit matrix groups.

Conventions.  A group element g is stored as the n x n matrix of its action on
linear forms: g(x_j) = sum_i g[i][j] * x_i.  A polynomial is acted on by
substitution, g(p)(x) = p(g(x_1), ..., g(x_n)), which is a left action.  With this
convention the representation V of the group on linear forms has character
trace(g), the Jacobian transforms by det(g)^-1 and the arrangement polynomial
by det(g).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from typing import Sequence

from .partitions import Partition, character_value_sn, partitions_of, sign_of_cycle_type
from .poly import Poly, PolyRing
from .scalars import Cyc, Scalar, conj, zeta

__all__ = [
    "GroupElement",
    "Reflection",
    "ReflectionGroup",
    "Character",
    "ConjugacyClass",
    "CharacterTable",
    "UnsupportedGroup",
    "ClosureError",
    "build_group",
    "parse_descriptor",
    "cyclic",
    "sym_natural",
    "sym_essential",
    "monomial",
    "conjugacy_classes",
    "character_table",
    "linear_characters",
    "find_character",
    "character_value_sn",
]

Matrix = tuple[tuple[Scalar, ...], ...]


class UnsupportedGroup(ValueError):
    """The requested data is not available for this group family."""


class ClosureError(RuntimeError):
    """The enumerated element list is not closed under multiplication."""


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s: Scalar = Fraction(0)
            for k in range(n):
                x, y = a[i][k], b[k][j]
                if x != 0 and y != 0:
                    s = s + x * y
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _det(a: Matrix) -> Scalar:
    n = len(a)
    m = [list(r) for r in a]
    det: Scalar = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        p = m[k][k]
        det = det * p
        inv = p.inverse() if isinstance(p, Cyc) else 1 / p
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return det


def _rank(rows: Sequence[Sequence[Scalar]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        inv = p.inverse() if isinstance(p, Cyc) else 1 / p
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def _normalize_form(v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    lead = next(x for x in v if x != 0)
    inv = lead.inverse() if isinstance(lead, Cyc) else 1 / lead
    return tuple(x * inv if x != 0 else Fraction(0) for x in v)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """One element: its matrix on linear forms plus family bookkeeping.

    ``perm`` (0-based images, sigma(j)) and ``exps`` (powers of zeta_r on each
    image) are kept where they make sense, so cycle types are cheap.
    """

    matrix: Matrix
    perm: tuple[int, ...] | None = None
    exps: tuple[int, ...] | None = None
    power: int | None = None

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @cached_property
    def det(self) -> Scalar:
        return _det(self.matrix)

    @cached_property
    def trace(self) -> Scalar:
        s: Scalar = Fraction(0)
        for i in range(self.dim):
            s = s + self.matrix[i][i]
        return s

    def is_identity(self) -> bool:
        n = self.dim
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def form_images(self, ring: PolyRing) -> list[Poly]:
        """g(x_j) for each variable, as polynomials in ``ring``."""
        n = self.dim
        gens = ring.gens()
        out = []
        for j in range(n):
            p = ring.zero()
            for i in range(n):
                c = self.matrix[i][j]
                if c != 0:
                    p = p + gens[i] * c
            out.append(p)
        return out

    def cycle_type(self) -> Partition:
        if self.perm is None:
            raise UnsupportedGroup("cycle type needs a permutation label")
        seen = [False] * len(self.perm)
        lengths = []
        for i in range(len(self.perm)):
            if not seen[i]:
                j, k = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = self.perm[j]
                    k += 1
                lengths.append(k)
        return Partition(tuple(sorted(lengths, reverse=True)))


@dataclass(frozen=True)
class Reflection:
    index: int  # position in the element list
    mirror: tuple[Scalar, ...]  # normalized coefficient vector of the mirror form
    det: Scalar


@dataclass(frozen=True)
class Character:
    """A class function given by its value on every element (by index)."""

    name: str
    dim: int
    values: tuple[Scalar, ...]

    def __call__(self, idx: int) -> Scalar:
        return self.values[idx]

    def conjugate(self) -> Character:
        return Character(self.name + "*", self.dim, tuple(conj(v) for v in self.values))

    def __mul__(self, other: Character) -> Character:
        return Character(f"{self.name}*{other.name}", self.dim * other.dim, tuple(a * b for a, b in zip(self.values, other.values)))


@dataclass(frozen=True)
class ConjugacyClass:
    label: str
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def rep(self) -> int:
        return self.members[0]


@dataclass(frozen=True)
class CharacterTable:
    classes: tuple[ConjugacyClass, ...]
    characters: tuple[Character, ...]
    order: int

    def inner(self, a: Character, b: Character) -> Scalar:
        """<a, b> = (1/|G|) sum_cl |cl| a(cl) conj(b(cl))."""
        s: Scalar = Fraction(0)
        for cl in self.classes:
            s = s + a(cl.rep) * conj(b(cl.rep)) * cl.size
        return s / self.order

    def labels(self) -> list[str]:
        return [c.name for c in self.characters]

    def get(self, name: str) -> Character:
        for c in self.characters:
            if c.name == name:
                return c
        raise KeyError(name)


@dataclass(eq=False)
class ReflectionGroup:
    family: str  # "cyclic" | "sym" | "sym-essential" | "monomial"
    params: tuple[int, ...]
    ring: PolyRing
    elements: list[GroupElement]
    degrees: tuple[int, ...]
    reflections: list[Reflection] = field(default_factory=list)
    mirrors: list[tuple[Scalar, ...]] = field(default_factory=list)
    mirror_orders: list[int] = field(default_factory=list)
    generators: list[int] = field(default_factory=list)

    @property
    def descriptor(self) -> str:
        return f"{self.family}:{','.join(map(str, self.params))}"

    @property
    def dim(self) -> int:
        return self.ring.nvars

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def m(self) -> int:
        return len(self.reflections)

    @property
    def m1(self) -> int:
        return len(self.mirrors)

    @property
    def is_true_reflection_group(self) -> bool:
        return all(o == 2 for o in self.mirror_orders)

    @cached_property
    def index(self) -> dict[Matrix, int]:
        return {g.matrix: i for i, g in enumerate(self.elements)}

    @cached_property
    def identity_index(self) -> int:
        return next(i for i, g in enumerate(self.elements) if g.is_identity())

    def mul(self, i: int, j: int) -> int:
        return self.index[_matmul(self.elements[i].matrix, self.elements[j].matrix)]

    @cached_property
    def inverses(self) -> list[int]:
        e = self.identity_index
        out = [0] * self.order
        for i in range(self.order):
            if out[i]:
                continue
            for j in range(self.order):
                if self.mul(i, j) == e:
                    out[i], out[j] = j, i
                    break
        out[e] = e
        return out

    @cached_property
    def form_images(self) -> list[list[Poly]]:
        return [g.form_images(self.ring) for g in self.elements]

    def act(self, i: int, p: Poly) -> Poly:
        """g_i(p) by substitution of the linear forms g_i(x_j)."""
        return p.substitute(self.form_images[i], self.ring)

    def mirror_form(self, k: int) -> Poly:
        gens = self.ring.gens()
        p = self.ring.zero()
        for c, x in zip(self.mirrors[k], gens):
            if c != 0:
                p = p + x * c
        return p

    def mirror_orbits(self) -> list[list[int]]:
        """Orbits of the group on the mirror list, as lists of mirror indices."""
        pos = {h: k for k, h in enumerate(self.mirrors)}
        seen: set[int] = set()
        orbits = []
        for k in range(self.m1):
            if k in seen:
                continue
            orbit = {k}
            form = self.mirror_form(k)
            for i in range(self.order):
                img = self.act(i, form)
                coeffs = tuple(img.coefficient(tuple(1 if a == b else 0 for b in range(self.dim))) for a in range(self.dim))
                orbit.add(pos[_normalize_form(coeffs)])
            seen |= orbit
            orbits.append(sorted(orbit))
        return orbits

    def __repr__(self):
        return f"ReflectionGroup({self.descriptor}, |G|={self.order})"


def _var_names(n: int, short: bool) -> tuple[str, ...]:
    if n == 1:
        return ("x",)
    if short and n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


def _finish(group: ReflectionGroup, generators: Sequence[int]) -> ReflectionGroup:
    """Closure check and reflection/mirror classification."""
    idx = {}
    for i, g in enumerate(group.elements):
        if g.matrix in idx:
            raise ClosureError(f"duplicate element in {group.descriptor}")
        idx[g.matrix] = i
    for g in group.elements:
        for s in generators:
            if _matmul(g.matrix, group.elements[s].matrix) not in idx:
                raise ClosureError(f"{group.descriptor}: product leaves the element list")
    if not any(g.is_identity() for g in group.elements):
        raise ClosureError("identity missing")
    group.generators = list(generators)
    n = group.dim
    mirror_pos: dict[tuple, int] = {}
    counts: list[int] = []
    for i, g in enumerate(group.elements):
        if g.is_identity():
            continue
        diff = [[g.matrix[a][b] - (1 if a == b else 0) for b in range(n)] for a in range(n)]
        if _rank(diff) != 1:
            continue
        col = next(j for j in range(n) if any(diff[a][j] != 0 for a in range(n)))
        form = _normalize_form([diff[a][col] for a in range(n)])
        group.reflections.append(Reflection(i, form, g.det))
        if form not in mirror_pos:
            mirror_pos[form] = len(group.mirrors)
            group.mirrors.append(form)
            counts.append(0)
        counts[mirror_pos[form]] += 1
    group.mirror_orders = [c + 1 for c in counts]
    prod_deg = 1
    for d in group.degrees:
        prod_deg *= d
    if prod_deg != group.order:
        raise ClosureError(f"|G|={group.order} but product of degrees is {prod_deg}")
    if sum(d - 1 for d in group.degrees) != group.m:
        raise ClosureError(f"{group.m} reflections but degrees {group.degrees}")
    return group


def cyclic(d: int) -> ReflectionGroup:
    if d < 2:
        raise ValueError("Cyclic(d) needs d >= 2")
    elements = [GroupElement(((zeta(d, k),),), power=k) for k in range(d)]
    ring = PolyRing(("x",))
    return _finish(ReflectionGroup("cyclic", (d,), ring, elements, (d,)), [1])


def _perm_matrix(sigma: Sequence[int]) -> Matrix:
    n = len(sigma)
    return tuple(tuple(Fraction(1) if sigma[j] == i else Fraction(0) for j in range(n)) for i in range(n))


def _sym_generators(elements: list[GroupElement], n: int) -> list[int]:
    want = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return [i for i, g in enumerate(elements) if g.perm in want]


def sym_natural(n: int) -> ReflectionGroup:
    if n < 2:
        raise ValueError("SymNatural(n) needs n >= 2")
    elements = [GroupElement(_perm_matrix(s), perm=tuple(s)) for s in permutations(range(n))]
    ring = PolyRing(_var_names(n, short=False))
    return _finish(ReflectionGroup("sym", (n,), ring, elements, tuple(range(1, n + 1))), _sym_generators(elements, n))


def sym_essential(n: int) -> ReflectionGroup:
    """S_n on the sum-zero hyperplane, coordinates x_1..x_{n-1} with x_n = -(x_1+...+x_{n-1})."""
    if n < 2:
        raise ValueError("SymEssential(n) needs n >= 2")
    k = n - 1

    def coords(i: int) -> list[Fraction]:
        if i < k:
            return [Fraction(1) if a == i else Fraction(0) for a in range(k)]
        return [Fraction(-1)] * k

    elements = []
    for s in permutations(range(n)):
        cols = [coords(s[j]) for j in range(k)]
        mat = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
        elements.append(GroupElement(mat, perm=tuple(s)))
    ring = PolyRing(_var_names(k, short=True))
    return _finish(
        ReflectionGroup("sym-essential", (n,), ring, elements, tuple(range(2, n + 1))), _sym_generators(elements, n)
    )


def monomial(r: int, n: int) -> ReflectionGroup:
    """G(r,1,n): permutation matrices with r-th roots of unity as nonzero entries."""
    if r < 2:
        raise ValueError("Monomial(r,n) needs r >= 2")
    if n < 1:
        raise ValueError("Monomial(r,n) needs n >= 1")
    roots = [zeta(r, a) for a in range(r)]
    elements = []
    for s in permutations(range(n)):
        for exps in product(range(r), repeat=n):
            mat = tuple(
                tuple(roots[exps[j]] if s[j] == i else Fraction(0) for j in range(n)) for i in range(n)
            )
            elements.append(GroupElement(mat, perm=tuple(s), exps=tuple(exps)))
    ring = PolyRing(_var_names(n, short=False))
    gens = [i for i, g in enumerate(elements) if g.exps == (1,) + (0,) * (n - 1) and g.perm == tuple(range(n))]
    if n > 1:
        plain = [i for i in _sym_generators(elements, n) if not any(elements[i].exps)]
        gens += plain
    return _finish(ReflectionGroup("monomial", (r, n), ring, elements, tuple(r * i for i in range(1, n + 1))), gens)


_DESC = re.compile(r"^\s*(cyclic|sym|sym-essential|monomial)\s*:\s*(\d+)\s*(?:,\s*(\d+)\s*)?$")


def parse_descriptor(text: str) -> tuple[str, tuple[int, ...]]:
    """'cyclic:d' | 'sym:n' | 'sym-essential:n' | 'monomial:r,n' -> (family, params)."""
    m = _DESC.match(text)
    if not m:
        raise ValueError(f"cannot parse group descriptor {text!r}")
    fam = m.group(1)
    a = int(m.group(2))
    b = m.group(3)
    if fam == "monomial":
        if b is None:
            raise ValueError("monomial needs 'monomial:r,n'")
        return fam, (a, int(b))
    if b is not None:
        raise ValueError(f"{fam} takes a single parameter")
    return fam, (a,)


_CACHE: dict[tuple[str, tuple[int, ...]], ReflectionGroup] = {}


def build_group(family: str | tuple, *params: int) -> ReflectionGroup:
    """Build (and cache) a group from a descriptor string or a (family, params) pair."""
    if isinstance(family, tuple):
        family, params = family
    elif ":" in family:
        family, params = parse_descriptor(family)
    key = (family, tuple(params))
    if key in _CACHE:
        return _CACHE[key]
    builders = {"cyclic": cyclic, "sym": sym_natural, "sym-essential": sym_essential, "monomial": monomial}
    if family not in builders:
        raise ValueError(f"unknown family {family!r}")
    group = builders[family](*params)
    _CACHE[key] = group
    return group


# --- conjugacy classes and characters ------------------------------------


def conjugacy_classes(group: ReflectionGroup) -> list[ConjugacyClass]:
    if group.family == "cyclic":
        return [ConjugacyClass(f"g^{g.power}", (i,)) for i, g in enumerate(group.elements)]
    if group.family in ("sym", "sym-essential"):
        by_type: dict[Partition, list[int]] = {}
        for i, g in enumerate(group.elements):
            by_type.setdefault(g.cycle_type(), []).append(i)
        order = list(reversed(partitions_of(group.params[0])))
        return [ConjugacyClass(str(mu), tuple(by_type[mu])) for mu in order]
    # generic: conjugation orbits
    inv = group.inverses
    seen: set[int] = set()
    classes = []
    for i in range(group.order):
        if i in seen:
            continue
        orbit = sorted({group.mul(group.mul(h, i), inv[h]) for h in range(group.order)})
        seen.update(orbit)
        classes.append(ConjugacyClass(f"c{len(classes)}", tuple(orbit)))
    return classes


def _sym_table(group: ReflectionGroup) -> CharacterTable:
    n = group.params[0]
    classes = conjugacy_classes(group)
    types = [Partition.parse(cl.label) for cl in classes]
    chars = []
    for lam in partitions_of(n):
        vals = [Fraction(0)] * group.order
        dim = 0
        for cl, mu in zip(classes, types):
            v = Fraction(character_value_sn(lam, mu))
            if mu.parts == (1,) * n:
                dim = int(v)
            for i in cl.members:
                vals[i] = v
        chars.append(Character(str(lam), dim, tuple(vals)))
    return CharacterTable(tuple(classes), tuple(chars), group.order)


def _cyclic_table(group: ReflectionGroup) -> CharacterTable:
    d = group.params[0]
    chars = [
        Character(f"chi{k}", 1, tuple(zeta(d, g.power * k) for g in group.elements)) for k in range(d)
    ]
    return CharacterTable(tuple(conjugacy_classes(group)), tuple(chars), group.order)


def character_table(group: ReflectionGroup) -> CharacterTable:
    """Full irreducible character table (symmetric and cyclic families only)."""
    if group.family == "cyclic":
        return _cyclic_table(group)
    if group.family in ("sym", "sym-essential"):
        return _sym_table(group)
    raise UnsupportedGroup(f"no full character table for {group.descriptor}")


def defining_character(group: ReflectionGroup) -> Character:
    return Character("V", group.dim, tuple(g.trace for g in group.elements))


def det_character(group: ReflectionGroup) -> Character:
    return Character("det", 1, tuple(g.det for g in group.elements))


def linear_characters(group: ReflectionGroup) -> list[Character]:
    """All degree-one characters of the group."""
    if group.family == "cyclic":
        return list(_cyclic_table(group).characters)
    if group.family in ("sym", "sym-essential"):
        n = group.params[0]
        triv = Character(str(Partition((n,))), 1, (Fraction(1),) * group.order)
        sign = Character(
            str(Partition((1,) * n)), 1, tuple(Fraction(sign_of_cycle_type(g.cycle_type().parts)) for g in group.elements)
        )
        return [triv, sign]
    r, n = group.params
    out = []
    for b in range(2 if n >= 2 else 1):
        for a in range(r):
            vals = []
            for g in group.elements:
                s = sign_of_cycle_type(g.cycle_type().parts) if b else 1
                vals.append(zeta(r, a * sum(g.exps)) * s)
            out.append(Character(f"theta^{a}*sgn^{b}", 1, tuple(vals)))
    return out


def _same_values(a: Character, b: Character) -> bool:
    return all(x == y for x, y in zip(a.values, b.values))


def available_characters(group: ReflectionGroup) -> list[Character]:
    if group.family == "monomial":
        return linear_characters(group)
    return list(character_table(group).characters)


def find_character(group: ReflectionGroup, label: str) -> Character:
    """Resolve a user label: a table name, 'triv', 'det', 'det^-1', 'sign', or a partition."""
    chars = available_characters(group)
    key = label.strip()
    lowered = key.lower()
    if lowered in ("triv", "trivial", "1"):
        return next(c for c in chars if all(v == 1 for v in c.values))
    if lowered in ("det", "det^-1", "det^{-1}", "detinv", "sign", "sgn"):
        det = det_character(group)
        target = det if lowered in ("det", "sign", "sgn") else Character("det^-1", 1, tuple(conj(v) for v in det.values))
        return next(c for c in chars if _same_values(c, target))
    for c in chars:
        if c.name == key:
            return c
    if group.family in ("sym", "sym-essential"):
        try:
            lam = Partition.parse(key)
        except ValueError:
            pass
        else:
            for c in chars:
                if c.name == str(lam):
                    return c
    raise KeyError(f"unknown character {label!r} for {group.descriptor}")


def tensor_with(group: ReflectionGroup, chi: Character, psi: Character) -> Character:
    """The irreducible (from the available list) equal to chi*psi, for linear psi."""
    prod_vals = tuple(a * b for a, b in zip(chi.values, psi.values))
    for c in available_characters(group):
        if c.dim == chi.dim and all(x == y for x, y in zip(c.values, prod_vals)):
            return c
    raise UnsupportedGroup("tensor product is not in the available character list")
