from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from refldisc.linalg import (
    Echelon,
    NoSolution,
    PolyMatrix,
    adjugate,
    adjugate_compound,
    compound_matrix,
    determinant,
    linear_solve,
)
from refldisc.poly import PolyRing

from conftest import XYZ, polys

x, y, z = XYZ.gens()


def test_identity_and_2x2():
    assert determinant(PolyMatrix.identity(XYZ, 5)) == XYZ.one()
    R = PolyRing(("a", "b", "c", "d"))
    a, b, c, d = R.gens()
    assert determinant(PolyMatrix(R, [[a, b], [c, d]])) == a * d - b * c


def test_vandermonde():
    M = PolyMatrix(XYZ, [[1, v, v**2] for v in (x, y, z)])
    assert determinant(M) == (y - x) * (z - x) * (z - y)


def test_methods_agree_on_4x4_vandermonde():
    R = PolyRing(("a", "b", "c", "d"))
    g = R.gens()
    M = PolyMatrix(R, [[v**j for j in range(4)] for v in g])
    expected = R.one()
    for i, j in combinations(range(4), 2):
        expected = expected * (g[j] - g[i])
    for method in ("bareiss", "cofactor", "leibniz"):
        assert determinant(M, method) == expected


def test_bareiss_needs_row_swap():
    M = PolyMatrix(XYZ, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, x, 1], [0, 0, 1, y]])
    assert determinant(M) == -(x * y - 1)


def test_non_square_rejected():
    with pytest.raises(ValueError):
        determinant(PolyMatrix(XYZ, [[x, y]]))


def test_compound_examples():
    I4 = PolyMatrix.identity(XYZ, 4)
    assert compound_matrix(I4, 2) == PolyMatrix.identity(XYZ, 6)
    M = PolyMatrix(XYZ, [[x, y], [z, x + y]])
    assert compound_matrix(M, 1) == M
    assert compound_matrix(M, 2) == PolyMatrix(XYZ, [[determinant(M)]])
    D = PolyMatrix.diagonal(XYZ, [x, y, z])
    assert compound_matrix(D, 2) == PolyMatrix.diagonal(XYZ, [x * y, x * z, y * z])
    with pytest.raises(ValueError):
        compound_matrix(M, 3)


def test_adjugate_identities():
    M = PolyMatrix(XYZ, [[x, y, 1], [z, x, y], [1, z, x]])
    d = determinant(M)
    assert M * adjugate(M) == PolyMatrix.identity(XYZ, 3, d)
    for k in range(4):
        C = compound_matrix(M, k)
        assert C * adjugate_compound(M, k) == PolyMatrix.identity(XYZ, C.nrows, d)
        assert adjugate_compound(M, k) * C == PolyMatrix.identity(XYZ, C.nrows, d)


def test_linear_solve_examples():
    assert linear_solve([[1, 0], [0, 1]], [3, 4]) == [3, 4]
    with pytest.raises(NoSolution):
        linear_solve([[1], [1]], [1, 2])
    # underdetermined: free variables are zero
    assert linear_solve([[1, 1, 0]], [5]) == [5, 0, 0]


def test_random_invertible_system():
    rng = random.Random(7)
    for _ in range(20):
        A = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)] for _ in range(4)]
        b = [Fraction(rng.randint(-9, 9)) for _ in range(4)]
        try:
            sol = linear_solve(A, b)
        except NoSolution:
            continue
        assert [sum(a * s for a, s in zip(row, sol)) for row in A] == b


def test_echelon_rank():
    e = Echelon(3)
    assert e.add_vector({0: 1, 1: 1})
    assert e.add_vector({1: 1})
    assert not e.add_vector({0: 2, 1: 5})
    assert e.rank == 2


mat3 = st.lists(polys(max_terms=2, max_exp=1), min_size=9, max_size=9).map(
    lambda es: PolyMatrix(XYZ, [es[0:3], es[3:6], es[6:9]])
)


@given(mat3, mat3)
def test_determinant_multiplicative(M, N):
    assert determinant(M * N) == determinant(M) * determinant(N)


@given(mat3, mat3, st.integers(1, 3))
def test_compound_multiplicative(M, N, k):
    assert compound_matrix(M * N, k) == compound_matrix(M, k) * compound_matrix(N, k)
