"""
Points of P^2(C) and the blow-up chain acting on them

Every map returns a representative scaled so that its largest coordinate has modulus one.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from kato.germs.chain import blowup_chain
from kato.germs.families import BiratGerm
from kato.utils.errors import Indeterminate
from kato.utils.info import INDETERMINATE_EPS


@dataclass(frozen=True)
class ProjPoint:
    r"""
    [z0 : z1 : z2] normalized by its max-modulus coordinate
    """
    z0: complex
    z1: complex
    z2: complex

    @classmethod
    def of(cls, z0, z1, z2) -> "ProjPoint":
        coords = np.array([z0, z1, z2], dtype=np.complex128)
        scale = np.max(np.abs(coords))
        if not np.isfinite(scale):
            raise Indeterminate("projective point has a non-finite coordinate")
        if scale < INDETERMINATE_EPS:
            raise Indeterminate("all homogeneous coordinates vanish")
        coords = coords / coords[np.argmax(np.abs(coords))]
        return cls(complex(coords[0]), complex(coords[1]), complex(coords[2]))

    @classmethod
    def affine(cls, u, v) -> "ProjPoint":
        r"""
        the chart embedding (u, v) -> [u : v : 1]
        """
        return cls.of(u, v, 1.0)

    def coords(self) -> Tuple[complex, complex, complex]:
        return self.z0, self.z1, self.z2

    def to_affine(self) -> Tuple[complex, complex]:
        if abs(self.z2) < INDETERMINATE_EPS:
            raise Indeterminate("point lies on the line at infinity")
        return self.z0 / self.z2, self.z1 / self.z2

    def to_list(self) -> list:
        return [[c.real, c.imag] for c in self.coords()]


ORIGIN = ProjPoint(0j, 0j, 1 + 0j)


def projective_distance(P: ProjPoint, Q: ProjPoint) -> float:
    r"""
    max |P_i Q_j - P_j Q_i| on normalized representatives; zero iff P == Q
    """
    p, q = P.coords(), Q.coords()
    return max(abs(p[i] * q[j] - p[j] * q[i]) for i, j in ((0, 1), (0, 2), (1, 2)))


def inverse_blowup_projective(P: ProjPoint, a: complex, generic: bool) -> ProjPoint:
    x, y, w = P.coords()
    if generic:
        return ProjPoint.of((x - a * w) * w, y * y, y * w)
    t = x - a * w
    return ProjPoint.of(y * w, t * t, t * w)


def forward_blowup_projective(P: ProjPoint, a: complex, generic: bool) -> ProjPoint:
    x, y, w = P.coords()
    if generic:
        return ProjPoint.of(x * y + a * w * w, y * w, w * w)
    return ProjPoint.of(y * w + a * w * w, x * y, w * w)


def sigma_bar_projective(g: BiratGerm, P: ProjPoint, inverse: bool = False) -> ProjPoint:
    r"""
    sigma_bar (or its inverse) (u, v) -> (u +- a_{l+K} v^(l+K+1), v) in homogeneous form
    """
    g = g.numeric()
    aK = complex(g.aK_effective)
    if aK == 0:
        return P
    if inverse:
        aK = -aK
    e = g.sig.l + g.sig.K + 1
    x, y, w = P.coords()
    return ProjPoint.of(x * w ** (e - 1) + aK * y ** e, y * w ** (e - 1), w ** e)


def apply_germ_projective(g: BiratGerm, P: ProjPoint) -> ProjPoint:
    r"""
    G = sigma_bar o Pi_0 o ... o Pi_{n-1} on a projective point
    """
    for shift, generic in reversed(blowup_chain(g)):
        P = forward_blowup_projective(P, shift, generic)
    return sigma_bar_projective(g, P)


def apply_inverse_projective(g: BiratGerm, P: ProjPoint) -> ProjPoint:
    P = sigma_bar_projective(g, P, inverse=True)
    for shift, generic in blowup_chain(g):
        P = inverse_blowup_projective(P, shift, generic)
    return P
