from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hspecht.linalg import ExactSolver, PolynomialBasis, RankDefect, poly_rank, rank, rref
from hspecht.polyalg import Polynomial

entries = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


@given(matrices())
def test_bareiss_rank_matches_rref(A):
    _, pivots = rref(A)
    assert rank(A) == len(pivots)


@given(matrices())
def test_rank_of_transpose(A):
    At = [list(col) for col in zip(*A)]
    assert rank(A) == rank(At)


@given(matrices(cols=st.integers(1, 4)), st.lists(entries, min_size=4, max_size=4))
def test_solver_recovers_solution(A, x):
    k = len(A[0])
    x = x[:k]
    try:
        solver = ExactSolver(A)
    except RankDefect:
        assert rank(A) < k
        return
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    assert solver.solve(b) == x


def test_solver_inconsistent_and_defect():
    solver = ExactSolver([[1, 0], [0, 1], [1, 1]])
    assert solver.solve([1, 2, 3]) == [1, 2]
    assert solver.solve([1, 2, 4]) is None
    with pytest.raises(RankDefect):
        ExactSolver([[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        solver.solve([1, 2])


def test_polynomial_basis_coordinates():
    x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    basis = PolynomialBasis([x1 + x2, x1 - x2])
    assert basis.coordinates(x1) == [Fraction(1, 2), Fraction(1, 2)]
    assert basis.coordinates(x1 * x2) is None
    assert poly_rank([x1, x2, x1 + x2]) == 2
    assert poly_rank([]) == 0
