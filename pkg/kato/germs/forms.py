"""
Polynomial forms of the birational germ G

    - origin chart form, used by the composition oracle and the Jacobian check
    - generic chart form (G1, G2) = (()^p z2^q, ()^r z2^s) with
      () = z1 z2^l + sum_{i<l} a_i z2^(i+1) + a_{l+K} z2^(l+K+1), used by the solver
"""

from typing import Optional, Tuple

from kato.algebra.series import TruncSeries2
from kato.combinatorics.signature import Letter, word_to_matrix
from kato.germs.families import BiratGerm
from kato.utils.errors import WordMismatch

Pair = Tuple[TruncSeries2, TruncSeries2]


def origin_degree(g: BiratGerm) -> int:
    sig = g.sig
    deg = max(sig.pq + sig.kS * sig.l, sig.kS * sig.l)
    if g.aK_effective != 0:
        deg = max(deg, sig.kS * (sig.l + sig.K + 1))
    return deg


def generic_degree(g: BiratGerm) -> int:
    sig = g.sig
    inner = sig.l + 1
    if g.aK_effective != 0:
        inner = max(inner, sig.l + sig.K + 1)
    return max(sig.p * inner + sig.q, sig.r * inner + sig.s)


def birat_origin_form(g: BiratGerm, order: Optional[int] = None) -> Pair:
    r"""
    exact polynomial pair of the origin chart (truncated when order is below its degree)
    """
    sig, f = g.sig, g.field
    order = origin_degree(g) if order is None else order
    first = {(sig.p + sig.r * sig.l, sig.q + sig.s * sig.l): f.one}
    for i in g.coefficient_indices():
        value = g.coeff(i)
        if value != 0:
            first[(sig.r * (i + 1), sig.s * (i + 1))] = value
    return (TruncSeries2(f, order, first),
            TruncSeries2.monomial(f, order, sig.r, sig.s))


def generic_bracket(g: BiratGerm, order: int) -> TruncSeries2:
    sig, f = g.sig, g.field
    coeffs = {(1, sig.l): f.one}
    for i in g.coefficient_indices():
        value = g.coeff(i)
        if value != 0:
            coeffs[(0, i + 1)] = value
    return TruncSeries2(f, order, coeffs)


def birat_generic_form(g: BiratGerm, order: Optional[int] = None) -> Pair:
    r"""
    generic chart pair (()^p z2^q, ()^r z2^s)
    """
    sig, f = g.sig, g.field
    order = generic_degree(g) if order is None else order
    bracket = generic_bracket(g, order)
    first = (bracket ** sig.p) * TruncSeries2.monomial(f, order, 0, sig.q)
    second = (bracket ** sig.r) * TruncSeries2.monomial(f, order, 0, sig.s)
    return first, second


def compose_blowups_oracle(g: BiratGerm, order: int) -> Pair:
    r"""
    sigma_bar o Pi_0 o ... o Pi_{n-1} built chart by chart

    Pi_i for i < l is generic, (u, v) -> (u v + a_{i-1}, v) with a_{-1} = 0;
    Pi_l is the first letter of the word and carries a_{l-1};
    the later Pi follow the letters, A: (u, v) -> (u v, v), A': (u, v) -> (v, u v).
    """
    sig, f = g.sig, g.field
    word = list(sig.word)
    if not word or word_to_matrix(word) != sig.matrix:
        raise WordMismatch(f"no letter word compiles to {sig.matrix.as_tuple()}")
    u, v = TruncSeries2.variables(f, order)
    for idx in range(sig.n - 1, sig.l - 1, -1):
        letter = word[idx - sig.l]
        if letter is Letter.A:
            u, v = u * v, v
        else:
            u, v = v, u * v
        if idx == sig.l:
            u = u + g.coeff(sig.l - 1)
    for i in range(sig.l - 1, -1, -1):
        u = u * v
        if i >= 1:
            u = u + g.coeff(i - 1)
    e = sig.l + sig.K + 1
    if g.aK_effective != 0:
        u = u + (v ** e).scale(g.aK_effective)
    return u, v


def jacobian_det(g: BiratGerm) -> TruncSeries2:
    r"""
    det DG of the origin form, computed symbolically from partial derivatives
    """
    order = 2 * origin_degree(g) + 2
    g1, g2 = birat_origin_form(g, order)
    return g1.derivative(0) * g2.derivative(1) - g1.derivative(1) * g2.derivative(0)


def jacobian_monomial(g: BiratGerm, order: int) -> TruncSeries2:
    r"""
    delta z1^(p+r(l+1)-1) z2^(q+s(l+1)-1)
    """
    sig = g.sig
    return TruncSeries2.monomial(g.field, order,
                                 sig.p + sig.r * (sig.l + 1) - 1,
                                 sig.q + sig.s * (sig.l + 1) - 1,
                                 sig.delta)
