"""
Finite group actions on germs

    - the diagonal group L acting on birational germs: a'_i = B^(i+1) a_i / A
    - the (k-1)-th roots of unity acting on Favre germs
"""

from dataclasses import replace
from typing import List, Tuple

from kato.algebra.scalars import ScalarField, root_of_unity
from kato.combinatorics.signature import BranchSignature
from kato.germs.families import BiratGerm, FavreGerm
from kato.utils.errors import InvalidInput
from kato.utils.info import ROOT_TOL


def l_group_order(sig: BranchSignature) -> int:
    r"""
    m with L inside U_m x U_m
    """
    return sig.p + sig.s + sig.r * sig.l - sig.delta - 1


def _in_l(sig: BranchSignature, field: ScalarField, A, B) -> bool:
    lhs1 = (A ** sig.r) * (B ** sig.s) - B
    lhs2 = (A ** (sig.p + sig.r * sig.l)) * (B ** (sig.q + sig.s * sig.l)) - A
    return field.is_zero(lhs1, ROOT_TOL) and field.is_zero(lhs2, ROOT_TOL)


def l_group(sig: BranchSignature, field: ScalarField) -> List[Tuple[object, object]]:
    r"""
    elements (A, B) of L: B = A^r B^s and A = A^(p+rl) B^(q+sl)

    Complex mode walks all of U_m x U_m; exact mode only the rational roots +-1.
    """
    m = l_group_order(sig)
    if field.is_exact:
        roots = [field.one] + ([-field.one] if m % 2 == 0 else [])
    else:
        roots = [root_of_unity(m, t) for t in range(m)]
    return [(A, B) for A in roots for B in roots if _in_l(sig, field, A, B)]


def apply_l_action(g: BiratGerm, A, B) -> BiratGerm:
    r"""
    the conjugate germ phi^-1 G phi with phi = (A z1, B z2)
    """
    f = g.field
    A, B = f(A), f(B)
    if not _in_l(g.sig, f, A, B):
        raise InvalidInput("(A, B) is not in the diagonal group of this signature")
    a0 = B * g.a0 / A
    a = tuple(B ** (i + 1) * g.coeff(i) / A for i in range(1, g.sig.l))
    e = g.sig.l + g.sig.K
    aK = B ** (e + 1) * g.aK_effective / A
    return replace(g, a0=a0, a=a, aK=aK)


def apply_eps_action(f: FavreGerm, eps) -> FavreGerm:
    r"""
    lam -> eps^sigma lam, b_i -> eps^(i-j) b_i, c -> eps^(sigma k/(k-1)) c
    """
    field = f.field
    eps = field(eps)
    if not field.is_zero(eps ** (f.k - 1) - 1, ROOT_TOL):
        raise InvalidInput("eps must be a (k-1)-th root of unity")
    j = f.j
    b = {i: v * eps ** (i - j) for i, v in f.b.items()}
    c = f.c
    if f.c_exponent is not None:
        c = c * eps ** f.c_exponent
    return replace(f, lam=f.lam * eps ** f.sigma, b=b, c=c)
