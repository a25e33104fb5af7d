"""
Intersection matrix of the branch, used as an independent oracle for k(S)
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

from kato.combinatorics.signature import DlousskySeq, branch_selfintersections, seq_to_matrix
from kato.utils.errors import EmptyChain, InvalidInput


@dataclass(frozen=True)
class ChainMatrix:
    r"""
    tridiagonal symmetric matrix with the given diagonal and -1 next to it
    """
    diag: Tuple[int, ...]

    def __post_init__(self):
        if len(self.diag) == 0:
            raise EmptyChain("a branch has at least one curve")
        if any(int(x) < 2 for x in self.diag):
            raise InvalidInput(f"self-intersections must be <= -2, got opposite values {self.diag}")

    def dense(self):
        n = len(self.diag)
        rows = [[0] * n for _ in range(n)]
        for i, x in enumerate(self.diag):
            rows[i][i] = x
            if i + 1 < n:
                rows[i][i + 1] = rows[i + 1][i] = -1
        return rows


def chain_det(m: ChainMatrix) -> int:
    r"""
    continuant D_i = d_i D_{i-1} - D_{i-2} with D_0 = 1, D_{-1} = 0
    """
    prev, cur = 0, 1
    for x in m.diag:
        prev, cur = cur, x * cur - prev
    return cur


def k_invariant(ks: Sequence[int]) -> int:
    r"""
    determinant of the branch matrix of ks, equal to r+s of the compiled matrix
    """
    return chain_det(ChainMatrix(tuple(branch_selfintersections(ks))))


def k_invariant_matches(ks: Sequence[int], l: int = 1) -> bool:
    m = seq_to_matrix(DlousskySeq(tuple(ks), l))
    return k_invariant(ks) == m.r + m.s
