"""
Closed-form invariants of one-branch signatures and their germs
"""

from fractions import Fraction
from math import gcd
from typing import List, Tuple

from kato.algebra.scalars import ScalarField, root_power
from kato.combinatorics.signature import BranchSignature
from kato.germs.families import FavreGerm
from kato.utils.errors import NonIntegerExponent, NonTerminating, NotTwisted
from kato.utils.info import ROOT_TOL


def uv_exponents(sig: BranchSignature) -> Tuple[Fraction, Fraction]:
    r"""
    solve r(u+v) = p + r(l+1) - 1 + u and s(u+v) = q + s(l+1) - 1 + v
    """
    p, q, r, s, l = sig.p, sig.q, sig.r, sig.s, sig.l
    # (r-1) u + r v = e1,  s u + (s-1) v = e2
    e1 = p + r * (l + 1) - 1
    e2 = q + s * (l + 1) - 1
    det = (r - 1) * (s - 1) - r * s
    u = Fraction(e1 * (s - 1) - r * e2, det)
    v = Fraction((r - 1) * e2 - s * e1, det)
    return u, v


def index(sig: BranchSignature) -> int:
    return (sig.kS - 1) // gcd(sig.kS - 1, sig.sigma)


def vf_exponent(sig: BranchSignature) -> int:
    return (sig.K + 1) * sig.r - sig.p + 1


def vf_condition(sig: BranchSignature, field: ScalarField, a0):
    r"""
    1 - delta (r+s) a0^((K+1)r - p + 1); zero exactly when a global vector field exists
    """
    if not sig.twisted:
        raise NotTwisted(f"signature with l={sig.l}, d={sig.d} carries no twisted vector field")
    return 1 - sig.delta * sig.kS * (field(a0) ** vf_exponent(sig))


def global_vector_field(sig: BranchSignature, field: ScalarField, a0, tol: float = ROOT_TOL) -> bool:
    if not sig.twisted:
        return False
    return field.is_zero(vf_condition(sig, field, a0), tol)


def lambda_exponent(sig: BranchSignature) -> Fraction:
    return Fraction(sig.p - 1) - Fraction(sig.r * sig.sigma, sig.kS - 1)


def lambda_of(sig: BranchSignature, field: ScalarField, a0, eps=1):
    r"""
    lam = delta / (eps^sigma k) a0^(p - 1 - r sigma/(k-1))

    Exact mode reads the fractional power off a0 = tau^(k-1); FractionalPower otherwise.
    """
    a0 = field(a0)
    eps = field(eps)
    power = root_power(field, a0, lambda_exponent(sig))
    return power * sig.delta / (eps ** sig.sigma * sig.kS)


def kappa_exponent(sig: BranchSignature) -> Fraction:
    mu = index(sig)
    return mu * (Fraction(sig.r * sig.sigma, sig.kS - 1) - sig.p + 1)


def kappa_of(sig: BranchSignature, field: ScalarField, a0):
    r"""
    kappa = delta^mu a0^(mu (r sigma/(k-1) - p + 1)) with mu the index
    """
    e = kappa_exponent(sig)
    if e.denominator != 1:
        raise NonIntegerExponent(f"kappa exponent {e} is not an integer")
    mu = index(sig)
    return (sig.delta ** mu) * field(a0) ** int(e)


def favre_type(f: FavreGerm) -> Tuple[List[int], int]:
    r"""
    the type (m_1, ..., m_rho): m_1 = j, then the next index m with b_m != 0 whose gcd
    with the running gcd i drops, until i reaches 1
    """
    ms = [f.j]
    i = gcd(f.k, f.j)
    while i > 1:
        nxt = [m for m in sorted(f.b) if m > ms[-1] and gcd(i, m) < i]
        if not nxt:
            raise NonTerminating(f"gcd stays at {i} after {ms}, not a normal form")
        ms.append(nxt[0])
        i = gcd(i, nxt[0])
    return ms, len(ms)
