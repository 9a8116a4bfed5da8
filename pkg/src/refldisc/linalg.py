"""Polynomial matrices and exact linear algebra over Q and Q(zeta_n)."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .poly import Poly, PolyRing, exact_divide
from .scalars import Cyc, Scalar

__all__ = [
    "PolyMatrix",
    "NoSolution",
    "determinant",
    "compound_matrix",
    "adjugate",
    "adjugate_compound",
    "linear_solve",
    "Echelon",
]


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


def _inv(c: Scalar) -> Scalar:
    return c.inverse() if isinstance(c, Cyc) else Fraction(1) / c


class PolyMatrix:
    """A dense rectangular matrix of polynomials sharing one ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence[Poly | Scalar]]):
        self.ring = ring
        out = []
        width = None
        for row in rows:
            r = tuple(x if isinstance(x, Poly) else ring.const(x) for x in row)
            if width is None:
                width = len(r)
            elif len(r) != width:
                raise ValueError("ragged matrix")
            for x in r:
                if x.ring != ring:
                    raise ValueError("entries must share one ring")
            out.append(r)
        self.rows = tuple(out)

    @classmethod
    def identity(cls, ring: PolyRing, n: int, scale: Poly | Scalar = 1) -> PolyMatrix:
        d = scale if isinstance(scale, Poly) else ring.const(scale)
        z = ring.zero()
        return cls(ring, [[d if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: PolyRing, nrows: int, ncols: int) -> PolyMatrix:
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, ring: PolyRing, entries: Sequence[Poly]) -> PolyMatrix:
        n = len(entries)
        z = ring.zero()
        return cls(ring, [[entries[i] if i == j else z for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, (Poly, int, Fraction, Cyc)):
            return PolyMatrix(self.ring, [[a * other for a in r] for r in self.rows])
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        z = self.ring.zero()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (Poly, int, Fraction, Cyc)):
            return self * other
        return NotImplemented

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [list(c) for c in zip(*self.rows)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def map(self, f) -> PolyMatrix:
        out = [[f(x) for x in r] for r in self.rows]
        ring = out[0][0].ring if out and out[0] else self.ring
        return PolyMatrix(ring, out)

    def is_scalar_multiple_of_identity(self, f: Poly) -> bool:
        if not self.is_square():
            return False
        z = self.ring.zero()
        return all(x == (f if i == j else z) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)

    def determinant(self) -> Poly:
        return determinant(self)


def _det_cofactor(rows: Sequence[Sequence[Poly]], ring: PolyRing) -> Poly:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _det_cofactor(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(rows: Sequence[Sequence[Poly]], ring: PolyRing) -> Poly:
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            # prefer the sparsest nonzero pivot below
            cands = [i for i in range(k + 1, n) if not m[i][k].is_zero()]
            if not cands:
                return ring.zero()
            i = min(cands, key=lambda i: len(m[i][k]))
            m[k], m[i] = m[i], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = piv * m[i][j]
                if not mik.is_zero() and not m[k][j].is_zero():
                    num = num - mik * m[k][j]
                m[i][j] = exact_divide(num, prev) if not num.is_zero() else num
            m[i][k] = ring.zero()
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant(M: PolyMatrix, method: str | None = None) -> Poly:
    """Exact determinant; Bareiss for n >= 4, cofactor expansion below."""
    if not M.is_square():
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    n = M.nrows
    if method is None:
        method = "bareiss" if n >= 4 else "cofactor"
    if method == "cofactor":
        return _det_cofactor(M.rows, M.ring)
    if method == "bareiss":
        return _det_bareiss(M.rows, M.ring) if n else M.ring.one()
    if method == "leibniz":
        return _det_leibniz(M)
    raise ValueError(f"unknown method {method!r}")


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _det_leibniz(M: PolyMatrix) -> Poly:
    total = M.ring.zero()
    for p in permutations(range(M.nrows)):
        term = M.ring.const(_perm_sign(p))
        for i, j in enumerate(p):
            term = term * M.rows[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def _subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), k))


def compound_matrix(M: PolyMatrix, k: int) -> PolyMatrix:
    """k-th compound: k x k minors indexed by lexicographic k-subsets."""
    if not M.is_square():
        raise ValueError("compound matrix needs a square matrix")
    n = M.nrows
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    idx = _subsets(n, k)
    return PolyMatrix(M.ring, [[determinant(M.submatrix(I, J)) for J in idx] for I in idx])


def adjugate_compound(M: PolyMatrix, k: int) -> PolyMatrix:
    """The partner of compound_matrix(M, k): C_k(M) * adj_k(M) = det(M) * I.

    Entry (I, J) is the signed complementary minor (-1)^(|I|+|J|) det M[J^c, I^c],
    with |I| the sum of the (1-based) indices in I.
    """
    if not M.is_square():
        raise ValueError("adjugate compound needs a square matrix")
    n = M.nrows
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    idx = _subsets(n, k)
    comp = {I: tuple(i for i in range(n) if i not in I) for I in idx}
    rows = []
    for I in idx:
        row = []
        for J in idx:
            minor = determinant(M.submatrix(comp[J], comp[I]))
            s = sum(I) + sum(J) + 2 * k  # 1-based index sums
            row.append(minor if s % 2 == 0 else -minor)
        rows.append(row)
    return PolyMatrix(M.ring, rows)


def adjugate(M: PolyMatrix) -> PolyMatrix:
    """Classical adjugate: M * adj(M) = det(M) * I."""
    return adjugate_compound(M, 1)


def linear_solve(A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> list[Scalar]:
    """Exact solution of A x = b; free variables are set to zero.

    Raises NoSolution for an inconsistent system.
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    if len(b) != nrows:
        raise ValueError("right-hand side length mismatch")
    ech = Echelon(ncols)
    for row, rhs in zip(A, b):
        ech.add_equation({j: v for j, v in enumerate(row) if v != 0}, rhs)
    return ech.solution()


class Echelon:
    """Incremental reduced row echelon form over an exact field.

    Rows are sparse dicts {column: value}.  ``add_equation`` keeps the system
    consistent or raises NoSolution; ``reduce`` and ``add_vector`` support
    independence tests without a right-hand side.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, tuple[dict[int, Scalar], Scalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict[int, Scalar], rhs: Scalar) -> tuple[dict[int, Scalar], Scalar]:
        row = dict(row)
        # pivot rows are fully reduced against each other, so one pass suffices
        for col in sorted(c for c in row if c in self.pivots):
            v = row.get(col)
            if not v:
                continue
            prow, prhs = self.pivots[col]
            for c, pv in prow.items():
                w = row.get(c, 0) - v * pv
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
            rhs = rhs - v * prhs
        return row, rhs

    def reduce(self, row: dict[int, Scalar]) -> dict[int, Scalar]:
        return self._reduce(row, 0)[0]

    def add_equation(self, row: dict[int, Scalar], rhs: Scalar = 0) -> bool:
        """Add a row; returns True if it raised the rank."""
        row, rhs = self._reduce({c: v for c, v in row.items() if v != 0}, rhs)
        if not row:
            if rhs != 0:
                raise NoSolution("inconsistent linear system")
            return False
        col = min(row)
        inv = _inv(row[col])
        row = {c: v * inv for c, v in row.items()}
        rhs = rhs * inv
        for pcol, (prow, prhs) in list(self.pivots.items()):
            v = prow.get(col)
            if v:
                new = dict(prow)
                for c, w in row.items():
                    x = new.get(c, 0) - v * w
                    if x:
                        new[c] = x
                    else:
                        new.pop(c, None)
                self.pivots[pcol] = (new, prhs - v * rhs)
        self.pivots[col] = (row, rhs)
        return True

    def add_vector(self, row: dict[int, Scalar]) -> bool:
        return self.add_equation(row, 0)

    def solution(self) -> list[Scalar]:
        x: list[Scalar] = [Fraction(0)] * self.ncols
        for col, (row, rhs) in self.pivots.items():
            x[col] = rhs  # free variables are zero, so other row entries drop out
        return x


class SquareSolver:
    """Repeated solves against one square invertible matrix given by columns.

    The matrix is stored by sparse columns {row: value}.  Elimination is done
    once on the transposed problem, tracking the row transformation.
    """

    def __init__(self, columns: Sequence[dict[int, Scalar]], nrows: int):
        n = len(columns)
        self.nrows = nrows
        self.ncols = n
        # rows of the augmented system [A | I] as sparse dicts
        rows: list[dict[int, Scalar]] = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v != 0:
                    rows[i][j] = v
        trans = [{i: Fraction(1)} for i in range(nrows)]
        pivot_rows: list[int] = []
        pivot_cols: list[int] = []
        used = [False] * nrows
        for j in range(n):
            cands = [i for i in range(nrows) if not used[i] and rows[i].get(j)]
            if not cands:
                raise NoSolution(f"column {j} is dependent: matrix is singular")
            p = min(cands, key=lambda i: len(rows[i]))
            used[p] = True
            inv = _inv(rows[p][j])
            rows[p] = {c: v * inv for c, v in rows[p].items()}
            trans[p] = {c: v * inv for c, v in trans[p].items()}
            for i in range(nrows):
                if i != p:
                    v = rows[i].get(j)
                    if v:
                        for c, w in rows[p].items():
                            x = rows[i].get(c, 0) - v * w
                            if x:
                                rows[i][c] = x
                            else:
                                rows[i].pop(c, None)
                        for c, w in trans[p].items():
                            x = trans[i].get(c, 0) - v * w
                            if x:
                                trans[i][c] = x
                            else:
                                trans[i].pop(c, None)
            pivot_rows.append(p)
            pivot_cols.append(j)
        self._solve_rows = [trans[p] for p in pivot_rows]
        self._check_rows = [trans[i] for i in range(nrows) if not used[i]]

    def solve(self, b: dict[int, Scalar], check: bool = True) -> list[Scalar]:
        if check:
            for t in self._check_rows:
                s = sum((v * b[i] for i, v in t.items() if i in b), Fraction(0))
                if s != 0:
                    raise NoSolution("right-hand side outside the column span")
        return [sum((v * b[i] for i, v in t.items() if i in b), Fraction(0)) for t in self._solve_rows]
