"""
GL(2,Z) word calculus of one-branch signatures

A Dloussky sequence (k_1, ..., k_N) with regular length l compiles to the matrix
prod_i [[0,1],[1,k_i]]; each factor is the block A' A^(k_i - 1) in the letters
A = [[1,1],[0,1]] and A' = [[0,1],[1,1]].
"""

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

from kato.utils.errors import InvalidSignature, NotFactorable
from kato.utils.info import LETTER_MATRIX_DICT


class Letter(enum.Enum):
    A = "A"
    APRIME = "Aprime"

    @property
    def matrix(self) -> "Mat2Z":
        return Mat2Z(*LETTER_MATRIX_DICT[self.value])

    @property
    def primed(self) -> bool:
        return self is Letter.APRIME


@dataclass(frozen=True)
class Mat2Z:
    p: int
    q: int
    r: int
    s: int

    def __matmul__(self, other: "Mat2Z") -> "Mat2Z":
        return Mat2Z(self.p * other.p + self.q * other.r,
                     self.p * other.q + self.q * other.s,
                     self.r * other.p + self.s * other.r,
                     self.r * other.q + self.s * other.s)

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.p, self.q, self.r, self.s)

    @classmethod
    def identity(cls) -> "Mat2Z":
        return cls(1, 0, 0, 1)


@dataclass(frozen=True)
class DlousskySeq:
    ks: Tuple[int, ...]
    l: int

    def __post_init__(self):
        if len(self.ks) < 1:
            raise InvalidSignature("a Dloussky sequence needs at least one singular block")
        if any(int(k) < 1 for k in self.ks):
            raise InvalidSignature(f"sequence entries must be >= 1, got {self.ks}")
        if self.l < 1:
            raise InvalidSignature(f"regular length l must be >= 1, got {self.l}")
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))


@dataclass(frozen=True)
class BranchSignature:
    r"""
    integers (p, q, r, s, l) of a one-branch surface with every derived invariant
    """
    p: int
    q: int
    r: int
    s: int
    l: int
    ks: Tuple[int, ...]
    delta: int
    d: int
    n: int
    sigma: int
    kS: int
    K: int
    twisted: bool
    word: Tuple[Letter, ...] = field(repr=False, compare=False, default=())

    @property
    def matrix(self) -> Mat2Z:
        return Mat2Z(self.p, self.q, self.r, self.s)

    @property
    def pq(self) -> int:
        return self.p + self.q

    @property
    def c_exponent(self) -> Optional[int]:
        r"""
        sigma*k/(k-1) when it is an integer, the degree of the vector-field term
        """
        num = self.sigma * self.kS
        if num % (self.kS - 1):
            return None
        return num // (self.kS - 1)

    def to_dict(self) -> dict:
        return {
            "p": self.p, "q": self.q, "r": self.r, "s": self.s, "l": self.l,
            "ks": list(self.ks), "delta": self.delta, "d": self.d, "n": self.n,
            "sigma": self.sigma, "kS": self.kS, "K": self.K, "twisted": self.twisted,
        }


def block_matrix(k: int) -> Mat2Z:
    return Mat2Z(0, 1, 1, k)


def seq_to_matrix(seq: DlousskySeq) -> Mat2Z:
    r"""
    prod_i [[0,1],[1,k_i]], determinant (-1)^N
    """
    m = Mat2Z.identity()
    for k in seq.ks:
        m = m @ block_matrix(k)
    return m


def ks_to_word(ks: Sequence[int]) -> List[Letter]:
    word: List[Letter] = []
    for k in ks:
        word.append(Letter.APRIME)
        word.extend([Letter.A] * (k - 1))
    return word


def word_to_matrix(word: Sequence[Letter]) -> Mat2Z:
    m = Mat2Z.identity()
    for letter in word:
        m = m @ letter.matrix
    return m


def matrix_to_ks(m: Mat2Z) -> List[int]:
    r"""
    peel blocks [[0,1],[1,k]] off the left: B^-1 M = [[r-kp, s-kq],[p, q]]

    Every step strictly lowers the entry sum, so the depth first search terminates.
    """
    def peel(p: int, q: int, r: int, s: int) -> Optional[List[int]]:
        if (p, q, r, s) == (1, 0, 0, 1):
            return []
        k = 1
        while r - k * p >= 0 and s - k * q >= 0:
            if p == 0 and q == 0:
                return None
            rest = peel(r - k * p, s - k * q, p, q)
            if rest is not None:
                return [k] + rest
            k += 1
        return None

    if min(m.as_tuple()) < 0 or abs(m.det) != 1:
        raise NotFactorable(f"{m.as_tuple()} is not a product of [[0,1],[1,k]] blocks")
    ks = peel(*m.as_tuple())
    if not ks:
        raise NotFactorable(f"{m.as_tuple()} is not a product of [[0,1],[1,k]] blocks")
    return ks


def matrix_to_word(m: Mat2Z) -> List[Letter]:
    r"""
    concatenation of the blocks A' A^(k_i - 1); NotFactorable if there is none
    """
    return ks_to_word(matrix_to_ks(m))


def derive_signature(m: Mat2Z, l: int, ks: Optional[Sequence[int]] = None) -> BranchSignature:
    r"""
    compute delta, d, n, sigma, k(S), K and the twisted flag of (m, l)

    Parameters:
        m: the matrix (p, q, r, s)
        l: length of the regular sequence, >= 1
        ks: Dloussky sequence of m; recovered by factorization when omitted
    """
    if l < 1:
        raise InvalidSignature(f"l must be >= 1, got {l}")
    p, q, r, s = m.as_tuple()
    if min(p, q, r, s) < 0:
        raise InvalidSignature(f"matrix entries must be nonnegative, got {m.as_tuple()}")
    delta = m.det
    if abs(delta) != 1:
        raise InvalidSignature(f"|ps - qr| must be 1, got {delta}")
    if p + q == 0:
        raise InvalidSignature("p + q must be positive")
    kS = r + s
    d = kS - (p + q)
    if not 1 <= d < kS:
        raise InvalidSignature(f"d = (r+s)-(p+q) = {d} must lie in [1, r+s)")
    if ks is None:
        try:
            ks = matrix_to_ks(m)
        except NotFactorable as err:
            raise InvalidSignature(str(err)) from err
    else:
        seq = DlousskySeq(tuple(ks), l)
        if seq_to_matrix(seq) != m:
            raise InvalidSignature(f"sequence {tuple(ks)} does not compile to {m.as_tuple()}")
    ks = tuple(int(k) for k in ks)
    K = max(0, (l - d) // (kS - 1))
    twisted = l >= d and (l - d) % (kS - 1) == 0
    return BranchSignature(p=p, q=q, r=r, s=s, l=l, ks=ks, delta=delta, d=d,
                           n=l + sum(ks), sigma=p + q + l - 1, kS=kS, K=K,
                           twisted=twisted, word=tuple(ks_to_word(ks)))


def signature_from_seq(seq: DlousskySeq) -> BranchSignature:
    return derive_signature(seq_to_matrix(seq), seq.l, seq.ks)


def signature_from_ks(ks: Sequence[int], l: int) -> BranchSignature:
    return signature_from_seq(DlousskySeq(tuple(ks), l))


def branch_selfintersections(ks: Sequence[int]) -> List[int]:
    r"""
    opposite self-intersections of the branch: (k1-1) twos, k2+2, (k3-1) twos, ...
    and for odd N the last block gives k_N twos
    """
    if len(ks) < 1:
        raise InvalidSignature("empty Dloussky sequence")
    chain: List[int] = []
    n = len(ks)
    for pos, k in enumerate(ks, start=1):
        if pos % 2 == 1:
            chain.extend([2] * (k if pos == n else k - 1))
        else:
            chain.append(k + 2)
    return chain


def check_gcd(sig: BranchSignature) -> bool:
    return gcd(sig.pq, sig.kS) == 1
