"""
Lattice bookkeeping of the conjugation equations
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Tuple

from kato.combinatorics.signature import BranchSignature


@dataclass(frozen=True)
class LatticeSet:
    r"""
    points (i, j), i in {0, 1}, with i(p+q) + j(r+s) below the bound (strictly when strict)
    """
    bound: Fraction
    points: FrozenSet[Tuple[int, int]]
    strict: bool = True

    def __contains__(self, point) -> bool:
        return tuple(point) in self.points

    def __len__(self) -> int:
        return len(self.points)

    def sorted(self) -> List[Tuple[int, int]]:
        return sorted(self.points)


def _enumerate(sig: BranchSignature, bound: Fraction, strict: bool) -> LatticeSet:
    points = set()
    for i in (0, 1):
        j = 0
        while True:
            weight = i * sig.pq + j * sig.kS
            if weight > bound or (strict and weight == bound):
                break
            points.add((i, j))
            j += 1
    return LatticeSet(bound=bound, points=frozenset(points), strict=strict)


def e_infty(sig: BranchSignature) -> LatticeSet:
    r"""
    E_inf: i(p+q) + j(r+s) < sigma k/(k-1)
    """
    return _enumerate(sig, Fraction(sig.sigma * sig.kS, sig.kS - 1), strict=True)


def e_m(sig: BranchSignature, m: int) -> LatticeSet:
    r"""
    E_m: i(p+q) + j(r+s) <= sigma (1 + 1/k + ... + 1/k^m)
    """
    assert m >= 0, "m must be nonnegative"
    bound = sig.sigma * sum(Fraction(1, sig.kS ** t) for t in range(m + 1))
    return _enumerate(sig, bound, strict=False)


def mu_bound(sig: BranchSignature) -> int:
    return max(sig.d, sig.l + (sig.l - sig.d) // (sig.kS - 1))


def resonances(sig: BranchSignature, degree_cap: int) -> List[Tuple[int, int, int]]:
    r"""
    resonant bidegrees (kk r - p, kk s - q) for kk >= 1 with i + j <= degree_cap,
    each returned as (i, j, gamma) with gamma = kk + l
    """
    assert degree_cap >= 1, "degree cap must be positive"
    out = []
    kk = 1
    while True:
        i, j = kk * sig.r - sig.p, kk * sig.s - sig.q
        if i + j > degree_cap:
            break
        if i >= 0 and j >= 0:
            out.append((i, j, kk + sig.l))
        kk += 1
    return out
