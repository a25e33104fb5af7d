from fractions import Fraction

import pytest

from kato.algebra.linalg import determinant, row_reduce, solve_square
from kato.algebra.scalars import NumberField
from kato.utils.errors import SingularSystem


def test_solve_square_exact(qq):
    m = [[qq(2), qq(1)], [qq(1), qq(3)]]
    x, det = solve_square(m, [qq(3), qq(5)], qq)
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    assert det == 5


def test_determinant_sign_follows_swaps(qq):
    m = [[qq(0), qq(1)], [qq(1), qq(0)]]
    assert determinant(m, qq) == -1
    assert determinant([], qq) == 1


def test_singular(qq):
    m = [[qq(1), qq(2)], [qq(2), qq(4)]]
    with pytest.raises(SingularSystem):
        solve_square(m, [qq(1), qq(2)], qq)
    assert determinant(m, qq) == 0


def test_overdetermined_consistency(qq):
    m = [[qq(1), qq(0)], [qq(0), qq(1)], [qq(1), qq(1)]]
    red = row_reduce(m, [qq(1), qq(2), qq(3)], qq)
    assert red.consistent
    assert red.rank == 2
    assert red.solution == [1, 2]

    red = row_reduce(m, [qq(1), qq(2), qq(4)], qq)
    assert not red.consistent
    assert red.residual == pytest.approx(1.0)


def test_free_columns_are_zero(qq):
    m = [[qq(1), qq(1), qq(0)]]
    red = row_reduce(m, [qq(2)], qq)
    assert red.solution == [2, 0, 0]
    assert red.pivots == [0]


def test_complex_partial_pivoting(cc):
    m = [[1e-14 + 0j, 1 + 0j], [1 + 0j, 1 + 0j]]
    x, _ = solve_square(m, [1 + 0j, 2 + 0j], cc)
    assert x[0] == pytest.approx(1.0)
    assert x[1] == pytest.approx(1.0)


def test_number_field_system():
    f = NumberField([-2, 0, 1])
    t = f.gen
    m = [[t, f(1)], [f(1), t]]
    x, det = solve_square(m, [f(1), f(0)], f)
    assert det == 1
    assert x[0] * t + x[1] == 1
    assert x[0] + x[1] * t == 0


def test_exact_determinant_matches_domain_matrix(qq):
    from sympy.polys.domains import QQ
    from sympy.polys.matrices import DomainMatrix

    rows = [[2, -1, 0], [Fraction(1, 3), 4, 5], [7, 0, Fraction(-1, 2)]]
    expected = DomainMatrix([[QQ(a.numerator, a.denominator) if isinstance(a, Fraction) else QQ(a)
                              for a in row] for row in rows], (3, 3), QQ).det()
    m = [[qq(a) for a in row] for row in rows]
    assert determinant(m, qq) == Fraction(int(QQ.numer(expected)), int(QQ.denom(expected)))
    x, det = solve_square(m, [qq(1), qq(0), qq(2)], qq)
    assert det == determinant(m, qq)
    assert sum(a * b for a, b in zip(m[1], x)) == 0


def test_number_field_rank_and_free_column():
    f = NumberField([-3, 0, 1])
    t = f.gen
    # second row is t times the first, so the rank over Q(sqrt 3) is 1
    m = [[f(1), t, f(2)], [t, f(3), 2 * t]]
    red = row_reduce(m, [f(1), t], f)
    assert red.consistent
    assert red.rank == 1
    assert red.pivots == [0]
    assert red.solution == [1, 0, 0]
    red = row_reduce(m, [f(1), f(1)], f)
    assert not red.consistent
    assert determinant([[f(1), t], [t, f(3)]], f) == 0
