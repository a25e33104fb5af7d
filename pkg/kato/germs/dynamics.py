"""
Forward iteration of germs in complex doubles
"""

from typing import List, Tuple

import numpy as np

from kato.utils.errors import OrbitOverflow
from kato.utils.info import OVERFLOW_BOUND


def _check(z1, z2, step: int):
    with np.errstate(invalid="ignore", over="ignore"):
        bad = ~np.isfinite(z1) | ~np.isfinite(z2) | (np.abs(z1) > OVERFLOW_BOUND) | (np.abs(z2) > OVERFLOW_BOUND)
    if np.any(bad):
        raise OrbitOverflow(f"orbit left the bounded region at step {step}")


def iterate(germ, z: Tuple[complex, complex], nsteps: int) -> List[Tuple[complex, complex]]:
    r"""
    orbit z, G(z), ..., G^nsteps(z) of any germ exposing evaluate(z1, z2)
    """
    assert nsteps >= 0, "number of steps must be nonnegative"
    z1, z2 = complex(z[0]), complex(z[1])
    orbit = [(z1, z2)]
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, nsteps + 1):
            w1, w2 = germ.evaluate(z1, z2)
            _check(w1, w2, step)
            z1, z2 = complex(w1), complex(w2)
            orbit.append((z1, z2))
    return orbit


def orbit_norms(germ, points: np.ndarray, nsteps: int) -> np.ndarray:
    r"""
    Euclidean norms of the orbits of many points at once

    Parameters:
        germ: object with evaluate(z1, z2)
        points: complex array of shape (m, 2)
        nsteps: number of forward steps
    Returns:
        array of shape (m, nsteps + 1)
    """
    points = np.asarray(points, dtype=np.complex128).reshape(-1, 2)
    z1, z2 = points[:, 0], points[:, 1]
    norms = np.empty((points.shape[0], nsteps + 1))
    norms[:, 0] = np.sqrt(np.abs(z1) ** 2 + np.abs(z2) ** 2)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        for step in range(1, nsteps + 1):
            z1, z2 = germ.evaluate(z1, z2)
            _check(z1, z2, step)
            norms[:, step] = np.sqrt(np.abs(z1) ** 2 + np.abs(z2) ** 2)
    return norms
