"""
The blow-up chain behind G = sigma_bar o Pi_0 o ... o Pi_{n-1}, in complex doubles

Each Pi_i is recorded as (shift, generic):
    generic:  (u, v) -> (u v + shift, v)
    primed:   (u, v) -> (v + shift, u v)
"""

from typing import List, Tuple

from kato.combinatorics.signature import Letter
from kato.germs.families import BiratGerm
from kato.utils.errors import Indeterminate, WordMismatch
from kato.utils.info import INDETERMINATE_EPS

Point = Tuple[complex, complex]


def blowup_chain(g: BiratGerm) -> List[Tuple[complex, bool]]:
    r"""
    (shift, generic) of Pi_0, ..., Pi_{n-1} with complex shifts
    """
    g = g.numeric()
    sig = g.sig
    word = list(sig.word)
    if len(word) != sig.n - sig.l:
        raise WordMismatch(f"word of length {len(word)} does not fill n - l = {sig.n - sig.l} blow-ups")
    chain = []
    for i in range(sig.l):
        shift = 0j if i == 0 else complex(g.coeff(i - 1))
        chain.append((shift, True))
    for t, letter in enumerate(word):
        shift = complex(g.coeff(sig.l - 1)) if t == 0 else 0j
        chain.append((shift, letter is Letter.A))
    return chain


def forward_blowup(point: Point, a: complex, generic: bool) -> Point:
    u, v = point
    if generic:
        return u * v + a, v
    return v + a, u * v


def inverse_blowup(point: Point, a: complex, generic: bool) -> Point:
    r"""
    ((u - a)/v, v) on a generic chart, (v/(u - a), u - a) on a primed one
    """
    u, v = complex(point[0]), complex(point[1])
    a = complex(a)
    den = v if generic else u - a
    if abs(den) < INDETERMINATE_EPS:
        raise Indeterminate(f"inverse blow-up is undefined at ({u}, {v})")
    if generic:
        return (u - a) / v, v
    return v / den, den


def sigma_bar(g: BiratGerm, point: Point) -> Point:
    g = g.numeric()
    e = g.sig.l + g.sig.K + 1
    u, v = point
    return u + complex(g.aK_effective) * v ** e, v


def sigma_bar_inverse(g: BiratGerm, point: Point) -> Point:
    g = g.numeric()
    e = g.sig.l + g.sig.K + 1
    u, v = point
    return u - complex(g.aK_effective) * v ** e, v


def birat_chain_eval(g: BiratGerm, point: Point) -> Point:
    r"""
    G evaluated by running the blow-ups forward
    """
    z = (complex(point[0]), complex(point[1]))
    for shift, generic in reversed(blowup_chain(g)):
        z = forward_blowup(z, shift, generic)
    return sigma_bar(g, z)


def birat_inverse_chain(g: BiratGerm, point: Point) -> Point:
    r"""
    G^-1 = Pi_{n-1}^-1 o ... o Pi_0^-1 o sigma_bar^-1; Indeterminate on an exceptional curve
    """
    z = sigma_bar_inverse(g, (complex(point[0]), complex(point[1])))
    for shift, generic in blowup_chain(g):
        z = inverse_blowup(z, shift, generic)
    return z
