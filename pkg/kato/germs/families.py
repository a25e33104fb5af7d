"""
Germ families

    - BiratGerm: the birational germ G of a one-branch signature
    - FavreGerm: the polynomial normal form F = (lam z1 z2^sigma + P(z2) + c z2^(sigma k/(k-1)), z2^k)
    - EnokiGerm, IHGerm, HopfGerm: evaluation and iteration only
"""

from dataclasses import dataclass, field as dc_field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from kato.algebra.scalars import ComplexField, ScalarField
from kato.combinatorics.signature import BranchSignature, Mat2Z
from kato.utils.errors import InvalidGerm
from kato.utils.info import ROOT_TOL
from kato.utils.utils import log_warning


@dataclass(frozen=True)
class BiratGerm:
    r"""
    G = (z1^(p+rl) z2^(q+sl) + sum_{i<l} a_i V^(i+1) + a_{l+K} V^(l+K+1), V) with V = z1^r z2^s

    Parameters:
        sig: branch signature
        field: scalar domain of the coefficients
        a0: root coefficient, nonzero
        a: the coefficients a_1, ..., a_{l-1}
        aK: the coefficient a_{l+K}; redundant (treated as 0) when sig is not twisted
    """
    family = "birat"

    sig: BranchSignature
    field: ScalarField
    a0: object
    a: Tuple = ()
    aK: object = 0

    def __post_init__(self):
        f = self.field
        object.__setattr__(self, "a0", f(self.a0))
        object.__setattr__(self, "a", tuple(f(x) for x in self.a))
        object.__setattr__(self, "aK", f(self.aK))
        if len(self.a) != self.sig.l - 1:
            raise InvalidGerm(f"expected {self.sig.l - 1} coefficients a_1..a_(l-1), got {len(self.a)}")
        if f.is_zero(self.a0):
            raise InvalidGerm("a0 must be nonzero")

    @property
    def aK_redundant(self) -> bool:
        return not self.sig.twisted

    @property
    def aK_effective(self):
        return self.field.zero if self.aK_redundant else self.aK

    def normalized(self) -> "BiratGerm":
        r"""copy with the redundant a_{l+K} set to 0"""
        if self.aK_redundant and self.aK != 0:
            log_warning(f"a_(l+K) is redundant for a non-twisted signature, dropping it")
            return replace(self, aK=self.field.zero)
        return self

    def coeff(self, i: int):
        r"""
        a_i for 0 <= i <= l-1 and for i = l+K
        """
        if i == 0:
            return self.a0
        if 1 <= i < self.sig.l:
            return self.a[i - 1]
        if i == self.sig.l + self.sig.K:
            return self.aK_effective
        return self.field.zero

    def coefficient_indices(self) -> List[int]:
        return list(range(self.sig.l)) + [self.sig.l + self.sig.K]

    def numeric(self) -> "BiratGerm":
        r"""the same germ with complex coefficients"""
        if not self.field.is_exact:
            return self
        cf = ComplexField()
        to_c = self.field.to_complex
        return BiratGerm(self.sig, cf, to_c(self.a0), tuple(to_c(x) for x in self.a), to_c(self.aK_effective))

    def evaluate(self, z1, z2):
        r"""
        origin form evaluated at complex points, numpy broadcasting
        """
        g = self.numeric()
        sig = g.sig
        z1 = np.asarray(z1, dtype=np.complex128)
        z2 = np.asarray(z2, dtype=np.complex128)
        v = z1 ** sig.r * z2 ** sig.s
        first = z1 ** (sig.p + sig.r * sig.l) * z2 ** (sig.q + sig.s * sig.l)
        vp = v
        for i in range(sig.l):
            first = first + g.coeff(i) * vp
            vp = vp * v
        if g.aK_effective != 0:
            first = first + g.aK_effective * v ** (sig.l + sig.K + 1)
        return first, v


@dataclass(frozen=True)
class FavreGerm:
    r"""
    F = (lam z1 z2^sigma + sum_i b_i z2^i + c z2^(sigma k/(k-1)), z2^k)

    Parameters:
        field: scalar domain
        lam: nonzero scalar
        sigma: positive integer
        k: integer >= 2
        b: mapping i -> b_i, the lowest nonzero index j satisfies 0 < j < k
        c: vector-field coefficient, zero unless sigma k/(k-1) is an integer and lam = 1
    """
    family = "favre"

    field: ScalarField
    lam: object
    sigma: int
    k: int
    b: Dict[int, object] = dc_field(default_factory=dict)
    c: object = 0

    def __post_init__(self):
        f = self.field
        object.__setattr__(self, "lam", f(self.lam))
        object.__setattr__(self, "c", f(self.c))
        object.__setattr__(self, "b", {int(i): f(v) for i, v in self.b.items() if not f.is_zero(f(v))})
        if self.k < 2 or self.sigma < 1:
            raise InvalidGerm(f"need k >= 2 and sigma >= 1, got k={self.k}, sigma={self.sigma}")
        if f.is_zero(self.lam):
            raise InvalidGerm("lambda must be nonzero")
        if not self.b:
            raise InvalidGerm("P(z2) must not vanish")
        if any(i < 1 or i > self.sigma for i in self.b):
            raise InvalidGerm(f"b indices must lie in [1, sigma], got {sorted(self.b)}")
        if not 0 < self.j < self.k:
            raise InvalidGerm(f"lowest index j={self.j} must satisfy 0 < j < k={self.k}")
        if not f.is_zero(self.c, ROOT_TOL):
            lam_one = f.is_zero(self.lam - 1, ROOT_TOL)
            if self.c_exponent is None or not lam_one:
                raise InvalidGerm("c must vanish unless sigma*k/(k-1) is an integer and lambda = 1")

    @property
    def j(self) -> int:
        return min(self.b)

    @property
    def c_exponent(self) -> Optional[int]:
        num = self.sigma * self.k
        if num % (self.k - 1):
            return None
        return num // (self.k - 1)

    def b_coeff(self, i: int):
        return self.b.get(i, self.field.zero)

    def evaluate(self, z1, z2):
        to_c = self.field.to_complex
        z1 = np.asarray(z1, dtype=np.complex128)
        z2 = np.asarray(z2, dtype=np.complex128)
        first = to_c(self.lam) * z1 * z2 ** self.sigma
        for i, v in self.b.items():
            first = first + to_c(v) * z2 ** i
        if self.c_exponent is not None and self.c != 0:
            first = first + to_c(self.c) * z2 ** self.c_exponent
        return first, z2 ** self.k


@dataclass(frozen=True)
class EnokiGerm:
    r"""
    (t^n z1 z2^n + sum_{i<n} a_i t^(i+1) z2^(i+1), t z2) with 0 < |t| < 1
    """
    family = "enoki"

    t: complex
    a: Tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", complex(self.t))
        object.__setattr__(self, "a", tuple(complex(x) for x in self.a))
        if not 0 < abs(self.t) < 1:
            raise InvalidGerm(f"Enoki germs need 0 < |t| < 1, got |t| = {abs(self.t)}")
        if len(self.a) < 1:
            raise InvalidGerm("Enoki germs need n >= 1 coefficients")

    @property
    def n(self) -> int:
        return len(self.a)

    def evaluate(self, z1, z2):
        z1 = np.asarray(z1, dtype=np.complex128)
        z2 = np.asarray(z2, dtype=np.complex128)
        first = self.t ** self.n * z1 * z2 ** self.n
        for i, ai in enumerate(self.a):
            first = first + ai * (self.t * z2) ** (i + 1)
        return first, self.t * z2


@dataclass(frozen=True)
class IHGerm:
    r"""
    monomial germ (z1^p z2^q, z1^r z2^s)
    """
    family = "ih"

    matrix: Mat2Z

    def __post_init__(self):
        m = self.matrix
        if min(m.as_tuple()) < 0 or abs(m.det) != 1:
            raise InvalidGerm(f"{m.as_tuple()} is not a nonnegative unimodular matrix")
        if m.p + m.q == 0 or m.r + m.s == 0 or m.p + m.q + m.r + m.s <= 2:
            raise InvalidGerm(f"{m.as_tuple()} does not give a contracting germ")

    def evaluate(self, z1, z2):
        m = self.matrix
        z1 = np.asarray(z1, dtype=np.complex128)
        z2 = np.asarray(z2, dtype=np.complex128)
        return z1 ** m.p * z2 ** m.q, z1 ** m.r * z2 ** m.s


@dataclass(frozen=True)
class HopfGerm:
    r"""
    (alpha z1 + lam z2^m, beta z2) with (beta^m - alpha) lam = 0 and 0 < |alpha| <= |beta| < 1
    """
    family = "hopf"

    alpha: complex
    beta: complex
    lam: complex = 0j
    m: int = 1

    def __post_init__(self):
        for name in ("alpha", "beta", "lam"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.m < 1:
            raise InvalidGerm("m must be >= 1")
        if not 0 < abs(self.alpha) <= abs(self.beta) < 1:
            raise InvalidGerm("Hopf germs need 0 < |alpha| <= |beta| < 1")
        if abs((self.beta ** self.m - self.alpha) * self.lam) > ROOT_TOL:
            raise InvalidGerm("Hopf germs need (beta^m - alpha) lam = 0")

    def evaluate(self, z1, z2):
        z1 = np.asarray(z1, dtype=np.complex128)
        z2 = np.asarray(z2, dtype=np.complex128)
        return self.alpha * z1 + self.lam * z2 ** self.m, self.beta * z2
