"""
Equivalence of germs under the finite groups acting on the normal forms

    - Favre germs: (k-1)-th roots of unity eps
    - birational germs: the diagonal group L
"""

from typing import Optional, Tuple

from kato.algebra.scalars import root_of_unity
from kato.germs.actions import apply_eps_action, apply_l_action, l_group
from kato.germs.families import BiratGerm, FavreGerm
from kato.utils.errors import ParameterMismatch
from kato.utils.info import ROOT_TOL
from kato.utils.utils import log_info


def eps_candidates(field, k: int) -> list:
    r"""
    (k-1)-th roots of unity available in the scalar domain
    """
    if field.is_exact:
        return [field.one] + ([-field.one] if (k - 1) % 2 == 0 else [])
    return [root_of_unity(k - 1, t) for t in range(k - 1)]


def _same_favre(f1: FavreGerm, f2: FavreGerm, tol: float) -> bool:
    field = f1.field
    if not field.is_zero(f1.lam - f2.lam, tol):
        return False
    if not field.is_zero(f1.c - f2.c, tol):
        return False
    for i in set(f1.b) | set(f2.b):
        if not field.is_zero(f1.b_coeff(i) - f2.b_coeff(i), tol):
            return False
    return True


def favre_equivalent(f1: FavreGerm, f2: FavreGerm, tol: float = ROOT_TOL):
    r"""
    eps with f2 = eps . f1, or None

    Parameters:
        f1, f2: Favre germs over the same scalar domain
        tol: matching tolerance of complex mode
    """
    if (f1.k, f1.sigma) != (f2.k, f2.sigma):
        raise ParameterMismatch(f"(k, sigma) differ: {(f1.k, f1.sigma)} vs {(f2.k, f2.sigma)}")
    if f1.field != f2.field:
        raise ParameterMismatch("germs live over different scalar domains")
    for eps in eps_candidates(f1.field, f1.k):
        if _same_favre(apply_eps_action(f1, eps), f2, tol):
            log_info(f"Favre germs are equivalent with eps = {eps!r}")
            return eps
    return None


def _same_birat(g1: BiratGerm, g2: BiratGerm, tol: float) -> bool:
    field = g1.field
    return all(field.is_zero(g1.coeff(i) - g2.coeff(i), tol) for i in g1.coefficient_indices())


def birat_equivalent(g1: BiratGerm, g2: BiratGerm, tol: float = ROOT_TOL) -> Optional[Tuple[object, object]]:
    r"""
    (A, B) in L with g2 = (A, B) . g1, or None
    """
    if g1.sig != g2.sig:
        raise ParameterMismatch("germs have different signatures")
    if g1.field != g2.field:
        raise ParameterMismatch("germs live over different scalar domains")
    if not g1.field.is_zero(g1.a0 - g2.a0, tol):
        raise ParameterMismatch("a0 is invariant under L, the germs have different a0")
    g1, g2 = g1.normalized(), g2.normalized()
    for A, B in l_group(g1.sig, g1.field):
        if _same_birat(apply_l_action(g1, A, B), g2, tol):
            return A, B
    return None
