"""
Developing map of the universal cover into P^2(C)

A sheet point lives in chart k <= 0. Going from chart k to chart k+1 applies
Pi_i^-1 with i = k mod n, preceded by sigma_bar^-1 when i = 0, so that one full
period (chart -n to chart 0) is G^-1 and Dev(k + n, w) = G(Dev(k, w)).
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from kato.devmap.projective import (
    ORIGIN,
    ProjPoint,
    apply_germ_projective,
    inverse_blowup_projective,
    projective_distance,
    sigma_bar_projective,
)
from kato.germs.chain import blowup_chain
from kato.germs.dynamics import orbit_norms
from kato.germs.families import BiratGerm
from kato.utils.errors import Indeterminate
from kato.utils.info import CONTRACTION_EPS, DEFAULT_DEV_DEPTH
from kato.utils.utils import log_info


@dataclass(frozen=True)
class ChartPoint:
    chart_index: int
    coords: Tuple[complex, complex]

    def __post_init__(self):
        assert self.chart_index <= 0, "sheet charts carry nonpositive indices"
        object.__setattr__(self, "coords", (complex(self.coords[0]), complex(self.coords[1])))


def dev_eval(g: BiratGerm, pt: ChartPoint, depth: int = DEFAULT_DEV_DEPTH) -> ProjPoint:
    r"""
    Dev(pt): the chain of inverse blow-ups from chart pt.chart_index up to chart 0, then [u : v : 1]

    Parameters:
        g: birational germ, evaluated in complex doubles
        pt: sheet point
        depth: number of fundamental domains the chart index may reach back
    """
    g = g.numeric()
    n = g.sig.n
    assert -pt.chart_index <= depth * n, f"chart {pt.chart_index} lies beyond depth {depth}"
    chain = blowup_chain(g)
    P = ProjPoint.affine(*pt.coords)
    for k in range(pt.chart_index, 0):
        i = k % n
        if i == 0:
            P = sigma_bar_projective(g, P, inverse=True)
        shift, generic = chain[i]
        P = inverse_blowup_projective(P, shift, generic)
    return P


def commutativity_residuals(g: BiratGerm, samples: Sequence[ChartPoint],
                            depth: int = DEFAULT_DEV_DEPTH) -> List[float]:
    r"""
    distance between Dev(k + n, w) and G(Dev(k, w)) for each sample (k, w)
    """
    g = g.numeric()
    n = g.sig.n
    out = []
    for pt in samples:
        if pt.chart_index + n > 0:
            raise ValueError(f"chart {pt.chart_index} has no shifted chart, use an index <= {-n}")
        shifted = ChartPoint(pt.chart_index + n, pt.coords)
        left = dev_eval(g, shifted, depth)
        right = apply_germ_projective(g, dev_eval(g, pt, depth))
        out.append(projective_distance(left, right))
    return out


def random_chart_points(rng: np.random.Generator, count: int, chart_index: int,
                        low: float = 0.5, high: float = 1.5) -> List[ChartPoint]:
    r"""
    sheet points with |u|, |v| uniform in [low, high] and uniform arguments
    """
    moduli = rng.uniform(low, high, size=(count, 2))
    angles = rng.uniform(0.0, 2 * np.pi, size=(count, 2))
    z = moduli * np.exp(1j * angles)
    return [ChartPoint(chart_index, (z[t, 0], z[t, 1])) for t in range(count)]


@dataclass
class OrbitReport:
    norms: np.ndarray
    first_below: List[Optional[int]]
    dev_distances: List[float]

    def to_dict(self) -> dict:
        return {
            "norms": self.norms.tolist(),
            "first_below": self.first_below,
            "dev_distances": self.dev_distances,
        }


def orbit_contraction_report(g: BiratGerm, samples: np.ndarray, nsteps: int,
                             eps: float = CONTRACTION_EPS) -> OrbitReport:
    r"""
    orbit norms of every sample, the first step below eps and the distance of [z1 : z2 : 1] to O
    """
    points = np.asarray(samples, dtype=np.complex128).reshape(-1, 2)
    norms = orbit_norms(g, points, nsteps)
    first_below = []
    for row in norms:
        hits = np.nonzero(row < eps)[0]
        first_below.append(int(hits[0]) if hits.size else None)
    dev_distances = [projective_distance(ProjPoint.affine(z1, z2), ORIGIN) for z1, z2 in points]
    log_info(f"{sum(x is not None for x in first_below)} of {len(first_below)} orbits fell below {eps}")
    return OrbitReport(norms=norms, first_below=first_below, dev_distances=dev_distances)


def sphere_preimage_samples(g: BiratGerm, rho: float, tau: float, count: int,
                            depth: int = DEFAULT_DEV_DEPTH,
                            rng: Optional[np.random.Generator] = None,
                            max_tries: int = 10000) -> List[Tuple[ChartPoint, ProjPoint]]:
    r"""
    rejection sampling of sheet points whose image lies in the shell rho - tau <= |Dev(x) - O| <= rho + tau

    Returns at most count pairs; fewer when max_tries runs out.
    """
    assert tau >= 0 and rho > 0, "shell needs rho > 0 and tau >= 0"
    rng = np.random.default_rng() if rng is None else rng
    g = g.numeric()
    lowest = -depth * g.sig.n
    found = []
    tries = 0
    while len(found) < count and tries < max_tries:
        tries += 1
        k = int(rng.integers(lowest, 1))
        pt = random_chart_points(rng, 1, k, low=0.0, high=1.0)[0]
        try:
            P = dev_eval(g, pt, depth)
        except Indeterminate:
            continue
        dist = projective_distance(P, ORIGIN)
        if rho - tau <= dist <= rho + tau:
            found.append((pt, P))
    log_info(f"sphere sampling kept {len(found)} points after {tries} tries")
    return found
