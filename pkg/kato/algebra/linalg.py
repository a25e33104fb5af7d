"""
Linear systems over a scalar field

Exact fields go through sympy's DomainMatrix over QQ. A system over Q(tau) of degree d
is solved as its rational block form: every entry a becomes the d x d matrix of
multiplication by a in the basis 1, tau, ..., tau^(d-1). Determinants over Q(tau) are
taken over QQ[t] (fraction free) and reduced modulo the defining polynomial.
The complex field keeps Gauss-Jordan elimination with partial pivoting.
Free columns of an underdetermined system are set to zero.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from kato.algebra.scalars import NumberFieldElement, ScalarField
from kato.utils.errors import SingularSystem
from kato.utils.info import PIVOT_TOL, RESIDUAL_TOL


@dataclass
class RowReduction:
    solution: list
    pivots: List[int]
    rank: int
    consistent: bool
    residual: float


def _coords(x, degree: int) -> List[Fraction]:
    if isinstance(x, NumberFieldElement):
        return list(x.coeffs)
    return [Fraction(x)] + [Fraction(0)] * (degree - 1)


def _qq(c: Fraction):
    return QQ(c.numerator, c.denominator)


def _block_form(matrix, rhs, field: ScalarField):
    r"""
    rational rows of the block form of [matrix | rhs]
    """
    d = field.degree
    powers = [field.one]
    for _ in range(d - 1):
        powers.append(powers[-1] * field.gen)
    rows = []
    for i, row in enumerate(matrix):
        block = [[] for _ in range(d)]
        for a in row:
            # column k of the multiplication matrix holds the coordinates of a * tau^k
            cols = [_coords(a * p, d) for p in powers]
            for s in range(d):
                block[s].extend(_qq(cols[k][s]) for k in range(d))
        for s, b in enumerate(_coords(rhs[i], d)):
            block[s].append(_qq(b))
        rows.extend(block)
    return rows


def _residual(matrix, rhs, solution, field: ScalarField) -> float:
    worst = 0.0
    for row, b in zip(matrix, rhs):
        acc = -b
        for a, x in zip(row, solution):
            acc = acc + a * x
        if not field.is_zero(acc):
            worst = max(worst, field.modulus(acc))
    return worst


def _row_reduce_exact(matrix, rhs, field: ScalarField) -> RowReduction:
    d = field.degree
    ncols = len(matrix[0])
    width = ncols * d
    rows = _block_form(matrix, rhs, field)
    rref, qq_pivots = DomainMatrix(rows, (len(rows), width + 1), QQ).rref()

    coords = [QQ.zero] * width
    for r, col in enumerate(qq_pivots):
        if col < width:
            coords[col] = rref[r, width].element
    solution = []
    for j in range(ncols):
        block = [Fraction(int(QQ.numer(c)), int(QQ.denom(c))) for c in coords[j * d:(j + 1) * d]]
        solution.append(field(block) if d > 1 else block[0])

    consistent = width not in qq_pivots
    # the column space is a Q(tau)-subspace, so a pivot block starts with a pivot column
    pivots = [col // d for col in qq_pivots if col < width and col % d == 0]
    residual = 0.0 if consistent else _residual(matrix, rhs, solution, field)
    return RowReduction(solution=solution, pivots=pivots, rank=len(pivots),
                        consistent=consistent, residual=residual)


def _row_reduce_complex(matrix, rhs, field: ScalarField, tol: float, residual_tol: float) -> RowReduction:
    nrows, ncols = len(matrix), len(matrix[0])
    rows = [list(matrix[r]) + [rhs[r]] for r in range(nrows)]
    scale = max((abs(x) for row in matrix for x in row), default=0.0)
    ptol = tol * max(scale, 1.0)

    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        best, best_abs = None, ptol
        for rr in range(r, nrows):
            if abs(rows[rr][col]) > best_abs:
                best, best_abs = rr, abs(rows[rr][col])
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for rr in range(nrows):
            if rr != r and rows[rr][col] != 0:
                f = rows[rr][col]
                rows[rr] = [x - f * y for x, y in zip(rows[rr], rows[r])]
        pivots.append(col)
        r += 1

    solution = [field.zero] * ncols
    for i, col in enumerate(pivots):
        solution[col] = rows[i][ncols]
    residual = max((abs(rows[i][ncols]) for i in range(r, nrows)), default=0.0)
    return RowReduction(solution=solution, pivots=pivots, rank=r,
                        consistent=residual <= residual_tol, residual=residual)


def row_reduce(matrix: Sequence[Sequence], rhs: Sequence, field: ScalarField,
               tol: float = PIVOT_TOL, residual_tol: float = RESIDUAL_TOL) -> RowReduction:
    r"""
    solve matrix * x = rhs in reduced row echelon form

    Parameters:
        matrix: list of rows, every entry a field scalar
        rhs: right hand side, one scalar per row
        field: scalar domain
        tol: relative pivot threshold (complex mode only)
        residual_tol: absolute threshold of the consistency check (complex mode only)
    Returns:
        RowReduction with the particular solution, pivot columns, rank,
        consistency flag and the largest entry of matrix * x - rhs left over
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if ncols == 0:
        residual = max((field.modulus(b) for b in rhs if not field.is_zero(b)), default=0.0)
        return RowReduction(solution=[], pivots=[], rank=0,
                            consistent=residual <= (0.0 if field.is_exact else residual_tol),
                            residual=residual)
    if field.is_exact:
        return _row_reduce_exact(matrix, rhs, field)
    return _row_reduce_complex(matrix, rhs, field, tol, residual_tol)


def determinant(matrix: Sequence[Sequence], field: ScalarField):
    r"""
    det over the field: DomainMatrix for exact fields, numpy for the complex field
    """
    n = len(matrix)
    if n == 0:
        return field.one
    if not field.is_exact:
        return complex(np.linalg.det(np.array(matrix, dtype=np.complex128)))
    if field.degree == 1:
        dm = DomainMatrix([[_qq(Fraction(a)) for a in row] for row in matrix], (n, n), QQ)
        det = dm.det()
        return Fraction(int(QQ.numer(det)), int(QQ.denom(det)))
    d = field.degree
    R, t = ring("t", QQ)
    K = R.to_domain()

    def lift(a):
        return sum((_qq(c) * t ** k for k, c in enumerate(_coords(a, d))), R.zero)

    det = DomainMatrix([[lift(a) for a in row] for row in matrix], (n, n), K).det()
    m = sum((_qq(c) * t ** k for k, c in enumerate(field.minpoly)), R.zero)
    det = det.rem(m)
    coeffs = [det.coeff(t ** k) for k in range(d)]
    return field([Fraction(int(QQ.numer(c)), int(QQ.denom(c))) for c in coeffs])


def solve_square(matrix: Sequence[Sequence], rhs: Sequence, field: ScalarField):
    r"""
    solve a square regular system, returns (solution, determinant)
    """
    n = len(matrix)
    assert all(len(row) == n for row in matrix), "solve_square needs a square matrix"
    if n == 0:
        return [], field.one
    red = row_reduce(matrix, rhs, field)
    if red.rank < n:
        raise SingularSystem(f"determinant vanishes, rank {red.rank} < {n}")
    return red.solution, determinant(matrix, field)
