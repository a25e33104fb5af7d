"""
Truncated bivariate power series

A TruncSeries2 stores the monomials z1^i z2^j with i+j <= order in a sparse dict,
never holding a zero coefficient. Arithmetic between two series truncates at the
smaller of the two orders.
"""

from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from kato.algebra.scalars import ScalarField
from kato.utils.errors import ModeMismatch, NonUnitConstant, NonVanishingSubstituent


Monomial = Tuple[int, int]


class TruncSeries2(object):
    r"""
    truncated power series in z1, z2 over an exact or complex scalar field
    """

    __slots__ = ("field", "order", "coeffs")

    def __init__(self, field: ScalarField, order: int, coeffs: Optional[Dict[Monomial, object]] = None):
        r"""
        Parameters:
            field: scalar domain of every coefficient
            order: total degree truncation bound
            coeffs: mapping (i, j) -> coefficient of z1^i z2^j; values are coerced into the field
        """
        assert order >= 0, "truncation order must be nonnegative"
        self.field = field
        self.order = order
        clean = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0 or i + j > order:
                continue
            c = field(c)
            if c != 0:
                clean[(i, j)] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, field: ScalarField, order: int, coeffs: Dict[Monomial, object]) -> "TruncSeries2":
        out = cls.__new__(cls)
        out.field = field
        out.order = order
        out.coeffs = coeffs
        return out

    # ----- constructors -----
    @classmethod
    def zero(cls, field: ScalarField, order: int) -> "TruncSeries2":
        return cls._raw(field, order, {})

    @classmethod
    def constant(cls, field: ScalarField, order: int, value=1) -> "TruncSeries2":
        return cls(field, order, {(0, 0): value})

    @classmethod
    def monomial(cls, field: ScalarField, order: int, i: int, j: int, value=1) -> "TruncSeries2":
        return cls(field, order, {(i, j): value})

    @classmethod
    def variables(cls, field: ScalarField, order: int) -> Tuple["TruncSeries2", "TruncSeries2"]:
        r"""
        the pair (z1, z2)
        """
        return cls.monomial(field, order, 1, 0), cls.monomial(field, order, 0, 1)

    # ----- access -----
    def coeff(self, i: int, j: int):
        return self.coeffs.get((i, j), self.field.zero)

    def items(self) -> Iterable:
        return self.coeffs.items()

    def constant_term(self):
        return self.coeff(0, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_order(self) -> int:
        r"""
        least total degree of a stored monomial; order+1 for the zero series
        """
        if not self.coeffs:
            return self.order + 1
        return min(i + j for (i, j) in self.coeffs)

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(i + j for (i, j) in self.coeffs)

    def truncate(self, order: int) -> "TruncSeries2":
        order = min(order, self.order)
        return TruncSeries2._raw(self.field, order,
                                 {k: c for k, c in self.coeffs.items() if k[0] + k[1] <= order})

    def with_order(self, order: int) -> "TruncSeries2":
        r"""
        same coefficients, new bound; raising the bound is only sound for polynomials
        """
        return TruncSeries2._raw(self.field, order,
                                 {k: c for k, c in self.coeffs.items() if k[0] + k[1] <= order})

    def max_abs(self) -> float:
        if not self.coeffs:
            return 0.0
        return max(self.field.modulus(c) for c in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, TruncSeries2):
            return NotImplemented
        return self.field == other.field and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return f"0 + O({self.order + 1})"
        terms = []
        for (i, j) in sorted(self.coeffs, key=lambda k: (k[0] + k[1], k)):
            mono = "*".join(x for x in (
                "" if i == 0 else ("z1" if i == 1 else f"z1^{i}"),
                "" if j == 0 else ("z2" if j == 1 else f"z2^{j}")) if x)
            terms.append(f"({self.coeffs[(i, j)]!r})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms) + f" + O({self.order + 1})"

    # ----- ring operations -----
    def _check(self, other: "TruncSeries2") -> int:
        if self.field != other.field:
            raise ModeMismatch(f"cannot combine {self.field!r} with {other.field!r}")
        return min(self.order, other.order)

    def _lift(self, other) -> "TruncSeries2":
        if isinstance(other, TruncSeries2):
            return other
        return TruncSeries2.constant(self.field, self.order, other)

    def __add__(self, other):
        other = self._lift(other)
        order = self._check(other)
        out = {k: c for k, c in self.coeffs.items() if k[0] + k[1] <= order}
        for k, c in other.coeffs.items():
            if k[0] + k[1] > order:
                continue
            v = out.get(k)
            v = c if v is None else v + c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return TruncSeries2._raw(self.field, order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries2._raw(self.field, self.order, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> "TruncSeries2":
        value = self.field(value)
        if value == 0:
            return TruncSeries2.zero(self.field, self.order)
        return TruncSeries2._raw(self.field, self.order, {k: c * value for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncSeries2):
            return self.scale(other)
        order = self._check(other)
        out: Dict[Monomial, object] = {}
        right = [(i, j, c) for (i, j), c in other.coeffs.items() if i + j <= order]
        for (i1, j1), c1 in self.coeffs.items():
            room = order - i1 - j1
            if room < 0:
                continue
            for i2, j2, c2 in right:
                if i2 + j2 > room:
                    continue
                key = (i1 + i2, j1 + j2)
                v = out.get(key)
                out[key] = c1 * c2 if v is None else v + c1 * c2
        return TruncSeries2._raw(self.field, order, {k: v for k, v in out.items() if v != 0})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers take a nonnegative integer, use pow_rational otherwise")
        result = TruncSeries2.constant(self.field, self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_rational(self, e) -> "TruncSeries2":
        r"""
        f^e = sum_n binom(e, n) (f - 1)^n for a series with constant term 1
        """
        if self.constant_term() != 1:
            raise NonUnitConstant("pow_rational needs a series with constant term 1")
        e = Fraction(e)
        u = self - 1
        result = TruncSeries2.constant(self.field, self.order, 1)
        term = TruncSeries2.constant(self.field, self.order, 1)
        binom = Fraction(1)
        n = 0
        while True:
            n += 1
            binom = binom * (e - n + 1) / n
            term = term * u
            if term.is_zero() or binom == 0:
                break
            result = result + term.scale(binom)
        return result

    def derivative(self, var: int) -> "TruncSeries2":
        r"""
        d/dz1 (var=0) or d/dz2 (var=1); the bound drops by one
        """
        out = {}
        for (i, j), c in self.coeffs.items():
            e = i if var == 0 else j
            if e == 0:
                continue
            key = (i - 1, j) if var == 0 else (i, j - 1)
            out[key] = c * e
        return TruncSeries2._raw(self.field, max(self.order - 1, 0), out)

    def compose_pair(self, g1: "TruncSeries2", g2: "TruncSeries2") -> "TruncSeries2":
        r"""
        f(g1, g2) truncated at the common order; g1 and g2 must vanish at the origin
        """
        if g1.constant_term() != 0 or g2.constant_term() != 0:
            raise NonVanishingSubstituent("substituted series must have zero constant term")
        order = min(self._check(g1), self._check(g2))
        g1 = g1.truncate(order)
        g2 = g2.truncate(order)
        pow1 = _PowerCache(g1)
        pow2 = _PowerCache(g2)
        result = TruncSeries2.zero(self.field, order)
        for (i, j), c in self.coeffs.items():
            if i * g1.min_order() + j * g2.min_order() > order:
                continue
            term = pow1[i] * pow2[j]
            if not term.is_zero():
                result = result + term.scale(c)
        return result

    # ----- numerics -----
    def to_numeric(self):
        r"""
        exponent arrays and complex coefficients for numpy evaluation
        """
        keys = list(self.coeffs)
        ei = np.array([k[0] for k in keys], dtype=np.int64)
        ej = np.array([k[1] for k in keys], dtype=np.int64)
        cs = np.array([self.field.to_complex(self.coeffs[k]) for k in keys], dtype=np.complex128)
        return ei, ej, cs

    def evaluate(self, z1, z2):
        r"""
        evaluate the stored polynomial at complex points (scalars or numpy arrays)
        """
        ei, ej, cs = self.to_numeric()
        z1 = np.asarray(z1, dtype=np.complex128)
        z2 = np.asarray(z2, dtype=np.complex128)
        if cs.size == 0:
            return np.zeros(np.broadcast(z1, z2).shape, dtype=np.complex128)
        return np.sum(cs * z1[..., None] ** ei * z2[..., None] ** ej, axis=-1)


class _PowerCache(object):
    r"""lazy cache of g^0, g^1, ... for repeated substitution"""

    def __init__(self, g: TruncSeries2):
        self.powers = [TruncSeries2.constant(g.field, g.order, 1)]
        self.g = g

    def __getitem__(self, n: int) -> TruncSeries2:
        while len(self.powers) <= n:
            self.powers.append(self.powers[-1] * self.g)
        return self.powers[n]


def power_cache(g: TruncSeries2) -> _PowerCache:
    return _PowerCache(g)
