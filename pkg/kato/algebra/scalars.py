"""
Scalar domains of kato

Two domains exist and a computation never mixes them:
    - NumberField: exact arithmetic in Q(tau) = Q[t]/(m(t)), m given by the caller,
      elements are sympy ANP polynomials reduced modulo m
    - ComplexField: IEEE complex doubles
A degree-one number field hands out plain Fractions, so Q itself costs nothing extra.
"""

import cmath
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np
import sympy
from sympy.polys.densearith import dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.polyclasses import ANP
from sympy.polys.polyerrors import NotInvertible

from kato.utils.errors import FractionalPower, InvalidInput, ModeMismatch, ReducibleMinpoly
from kato.utils.info import MAX_GEN_LOG
from kato.utils.utils import format_rational, parse_rational


def _to_qq(c: Fraction):
    return QQ(c.numerator, c.denominator)


def _from_qq(c) -> Fraction:
    return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))


class ScalarField(object):
    r"""Common interface of the two scalar domains"""

    is_exact = False
    name = ""

    def __call__(self, value: Any):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_zero(self, x, tol: Optional[float] = None) -> bool:
        return x == 0

    def to_complex(self, x) -> complex:
        raise NotImplementedError

    def modulus(self, x) -> float:
        return abs(self.to_complex(x))

    def format(self, x):
        raise NotImplementedError

    def parse(self, value):
        return self(value)

    def describe(self) -> dict:
        return {"mode": self.name}


class NumberFieldElement(object):
    r"""
    element sum_t coeffs[t] tau^t of a number field of degree >= 2, stored as a sympy ANP
    """

    __slots__ = ("field", "rep")

    def __init__(self, field: "NumberField", rep: ANP):
        self.field = field
        self.rep = rep

    @property
    def coeffs(self) -> tuple:
        r"""rational coordinates in the basis 1, tau, ..., tau^(n-1)"""
        low = [_from_qq(c) for c in reversed(self.rep.to_list())]
        return tuple(low + [Fraction(0)] * (self.field.degree - len(low)))

    def _other(self, other) -> Optional[ANP]:
        if isinstance(other, NumberFieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ModeMismatch("elements of different number fields")
            return other.rep
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field._anp([Fraction(other)])
        return None

    def _wrap(self, rep: ANP) -> "NumberFieldElement":
        return NumberFieldElement(self.field, rep)

    def __add__(self, other):
        rep = self._other(other)
        if rep is None:
            return NotImplemented
        return self._wrap(self.rep + rep)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.rep)

    def __pos__(self):
        return self

    def __sub__(self, other):
        rep = self._other(other)
        if rep is None:
            return NotImplemented
        return self._wrap(self.rep - rep)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        rep = self._other(other)
        if rep is None:
            return NotImplemented
        return self._wrap(self.rep * rep)

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        if not self:
            raise ZeroDivisionError("division by zero in number field")
        try:
            inv = dup_invert(self.rep.to_list(), self.field._mod, QQ)
        except NotInvertible:
            raise ReducibleMinpoly("element is a zero divisor, the defining polynomial is reducible")
        return self._wrap(ANP(inv, self.field._mod, QQ))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero in number field")
            return self * (1 / Fraction(other))
        if isinstance(other, NumberFieldElement):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        return self._wrap(base.rep ** abs(n))

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, NumberFieldElement)) or isinstance(other, bool):
            return False
        return self.rep.to_list() == self._other(other).to_list()

    def __hash__(self):
        coeffs = self.coeffs
        if all(c == 0 for c in coeffs[1:]):
            return hash(coeffs[0])
        return hash(coeffs)

    def __bool__(self):
        return bool(self.rep.to_list())

    def __repr__(self):
        terms = []
        for t, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if t == 0 else ("t" if t == 1 else f"t^{t}")
            coef = format_rational(c)
            terms.append(coef if not mono else (mono if c == 1 else f"{coef}*{mono}"))
        return " + ".join(terms) if terms else "0"


class NumberField(ScalarField):
    r"""
    Exact field Q(tau) with tau a root of the defining polynomial m

    Parameters:
        minpoly: coefficients of m from the constant term upward; rescaled to be monic.
                 Irreducibility is the caller's business, only rational roots are screened.
    """

    is_exact = True
    name = "exact"

    def __init__(self, minpoly: Sequence[Any]):
        coeffs = [parse_rational(c) for c in minpoly]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise InvalidInput("defining polynomial must have degree >= 1")
        lead = coeffs[-1]
        self.minpoly = tuple(c / lead for c in coeffs)
        self.degree = len(self.minpoly) - 1
        # dense representation for sympy, highest degree first
        self._mod = [_to_qq(c) for c in reversed(self.minpoly)]
        self._embedding = None
        if self.degree >= 2:
            self._check_rational_roots()
            self._gen = NumberFieldElement(self, self._anp([Fraction(0), Fraction(1)]))
        else:
            self._gen = -self.minpoly[0]

    @classmethod
    def rationals(cls) -> "NumberField":
        r"""Q with generator 0"""
        return cls([0, 1])

    @classmethod
    def from_tau(cls, tau: Any) -> "NumberField":
        r"""Q with the rational generator tau"""
        return cls([-parse_rational(tau), 1])

    def _check_rational_roots(self):
        t = sympy.Symbol("t")
        poly = sympy.Poly(self._mod, t, domain=QQ)
        roots = poly.ground_roots()
        if roots:
            raise ReducibleMinpoly(f"defining polynomial has rational roots {sorted(roots)}")

    def _anp(self, coeffs: Sequence[Fraction]) -> ANP:
        r"""
        the ANP of sum_t coeffs[t] tau^t, reduced modulo m
        """
        rep = dup_strip([_to_qq(c) for c in reversed(coeffs)])
        if len(rep) > self.degree:
            rep = dup_rem(rep, self._mod, QQ)
        return ANP(rep, self._mod, QQ)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(("exact", self.minpoly))

    def __repr__(self):
        return f"NumberField({[format_rational(c) for c in self.minpoly]})"

    @property
    def gen(self):
        return self._gen

    def __call__(self, value: Any):
        if self.degree == 1:
            if isinstance(value, NumberFieldElement):
                raise ModeMismatch("element of another number field")
            if isinstance(value, (list, tuple)):
                if len(value) != 1:
                    raise InvalidInput("rational field elements take one coefficient")
                value = value[0]
            return parse_rational(value)
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                raise ModeMismatch("element of another number field")
            return value
        if isinstance(value, (list, tuple)):
            return NumberFieldElement(self, self._anp([parse_rational(c) for c in value]))
        return NumberFieldElement(self, self._anp([parse_rational(value)]))

    def embed(self) -> complex:
        r"""
        numeric value of tau: the largest real root of m, else the root of largest modulus
        """
        if self._embedding is None:
            if self.degree == 1:
                self._embedding = complex(float(self._gen))
            else:
                roots = np.roots([float(c) for c in reversed(self.minpoly)])
                real = [r.real for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r))]
                if real:
                    self._embedding = complex(max(real))
                else:
                    self._embedding = complex(max(roots, key=abs))
        return self._embedding

    def to_complex(self, x) -> complex:
        if isinstance(x, NumberFieldElement):
            tau = self.embed()
            return complex(sum(float(c) * tau ** t for t, c in enumerate(x.coeffs)))
        return complex(float(x))

    def log_gen(self, x) -> Optional[int]:
        r"""
        the integer j with x == tau^j, searched for |j| <= MAX_GEN_LOG; None if there is none
        """
        gen = self._gen
        if gen == 0:
            return 0 if x == 1 else None
        pos, neg = self.one, self.one
        inv = 1 / gen
        for j in range(MAX_GEN_LOG + 1):
            if pos == x:
                return j
            if j and neg == x:
                return -j
            pos = pos * gen
            neg = neg * inv
        return None

    def format(self, x):
        if self.degree == 1:
            return format_rational(x)
        return [format_rational(c) for c in self(x).coeffs]

    def describe(self) -> dict:
        return {"mode": self.name, "minpoly": [format_rational(c) for c in self.minpoly]}


class ComplexField(ScalarField):
    r"""IEEE complex doubles"""

    is_exact = False
    name = "complex"

    def __eq__(self, other):
        return isinstance(other, ComplexField)

    def __hash__(self):
        return hash("complex")

    def __repr__(self):
        return "ComplexField()"

    def __call__(self, value: Any) -> complex:
        if isinstance(value, NumberFieldElement):
            return value.field.to_complex(value)
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise InvalidInput("complex scalars are written [re, im]")
            return complex(float(value[0]), float(value[1]))
        if isinstance(value, str):
            text = value.strip()
            try:
                return complex(float(Fraction(text)))
            except ValueError:
                return complex(text.replace("i", "j"))
        return complex(value)

    def is_zero(self, x, tol: Optional[float] = None) -> bool:
        return abs(x) <= (tol or 0.0)

    def to_complex(self, x) -> complex:
        return complex(x)

    def format(self, x):
        x = complex(x)
        return [x.real, x.imag]


def root_of_unity(m: int, index: int = 1) -> complex:
    r"""
    exp(2 pi i index / m)
    """
    return cmath.exp(2j * cmath.pi * index / m)


def _rational_root(a: Fraction, den: int) -> Optional[Fraction]:
    sign = 1
    if a < 0:
        if den % 2 == 0:
            return None
        sign, a = -1, -a
    num_root, num_exact = sympy.integer_nthroot(a.numerator, den)
    den_root, den_exact = sympy.integer_nthroot(a.denominator, den)
    if not (num_exact and den_exact):
        return None
    return sign * Fraction(int(num_root), int(den_root))


def root_power(field: ScalarField, a, e: Any):
    r"""
    a^e for a rational exponent e

    Complex mode takes the principal branch. Exact mode first writes a as a power
    of the generator, then (over Q) tries a rational root; FractionalPower otherwise.
    """
    e = Fraction(e)
    if e.denominator == 1:
        return a ** e.numerator
    if not field.is_exact:
        return complex(a) ** float(e)
    j = field.log_gen(a)
    if j is not None and (j * e).denominator == 1:
        return field.gen ** int(j * e)
    if field.degree == 1:
        root = _rational_root(Fraction(a), e.denominator)
        if root is not None:
            return root ** e.numerator
    raise FractionalPower(f"{field.format(a)}^({e}) is not representable in {field!r}")


def make_field(mode: str = "exact", minpoly: Optional[Sequence[Any]] = None, tau: Any = None) -> ScalarField:
    r"""
    build the scalar domain of one invocation
    """
    if mode == "complex":
        return ComplexField()
    if mode != "exact":
        raise InvalidInput(f"unknown mode {mode!r}")
    if minpoly is not None:
        return NumberField(minpoly)
    if tau is not None:
        return NumberField.from_tau(tau)
    return NumberField.rationals()
