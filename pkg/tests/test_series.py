from fractions import Fraction

import pytest

from kato.algebra.scalars import ComplexField, NumberField
from kato.algebra.series import TruncSeries2
from kato.utils.errors import ModeMismatch, NonUnitConstant, NonVanishingSubstituent


def _series(field, order, terms):
    return TruncSeries2(field, order, terms)


def test_mul_examples(qq):
    f = _series(qq, 4, {(0, 0): 1, (1, 0): 1})
    g = _series(qq, 4, {(0, 0): 1, (1, 0): -1})
    assert (f * g).coeffs == {(0, 0): 1, (2, 0): -1}

    z1, z2 = TruncSeries2.variables(qq, 1)
    assert (z2 * z2).is_zero()

    z1, z2 = TruncSeries2.variables(qq, 2)
    h = (1 + z1 + z2) ** 2
    assert h.coeffs == {(0, 0): 1, (1, 0): 2, (0, 1): 2, (2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_no_zero_coefficients_are_stored(qq):
    z1, z2 = TruncSeries2.variables(qq, 3)
    assert (z1 + z2 - z1).coeffs == {(0, 1): 1}
    assert TruncSeries2(qq, 3, {(1, 1): 0, (4, 0): 1}).is_zero()


def test_common_order_truncation(qq):
    f = TruncSeries2.monomial(qq, 5, 2, 2)
    g = TruncSeries2.monomial(qq, 3, 0, 1)
    prod = f * g
    assert prod.order == 3
    assert prod.is_zero()
    assert (f + g).order == 3


def test_mode_mismatch(qq):
    f = TruncSeries2.constant(qq, 2)
    g = TruncSeries2.constant(ComplexField(), 2)
    with pytest.raises(ModeMismatch):
        f + g


def test_pow_rational_examples(qq):
    z1, z2 = TruncSeries2.variables(qq, 2)
    root = (1 + z2).pow_rational(Fraction(1, 2))
    assert root.coeffs == {(0, 0): 1, (0, 1): Fraction(1, 2), (0, 2): Fraction(-1, 8)}

    inv = (1 + z2).pow_rational(-1)
    assert inv.coeffs == {(0, 0): 1, (0, 1): -1, (0, 2): 1}

    z1, z2 = TruncSeries2.variables(qq, 5)
    assert ((1 + z2) ** 2).pow_rational(Fraction(1, 2)) == 1 + z2


def test_pow_rational_exponent_laws(qq):
    z1, z2 = TruncSeries2.variables(qq, 5)
    f = 1 + z1 - 2 * z2 + z1 * z2
    a, b = Fraction(1, 3), Fraction(2, 5)
    assert f.pow_rational(a) * f.pow_rational(b) == f.pow_rational(a + b)
    assert f.pow_rational(3) == f ** 3


def test_pow_rational_needs_unit(qq):
    z1, _ = TruncSeries2.variables(qq, 3)
    with pytest.raises(NonUnitConstant):
        (2 + z1).pow_rational(Fraction(1, 2))


def test_compose_examples(qq):
    z1, z2 = TruncSeries2.variables(qq, 6)
    assert (z1 * z2).compose_pair(z2, z1) == z1 * z2
    assert z1.compose_pair(z1 * z1, z2) == z1 * z1
    f = z1 + z2 * z2
    assert f.compose_pair(z2, z1 * z2) == z2 + z1 * z1 * z2 * z2


def test_compose_is_associative(qq):
    z1, z2 = TruncSeries2.variables(qq, 6)
    f = z1 * z2 + z2 ** 2
    g = (z1 + z1 * z2, z2 - z1 ** 2)
    h = (z2 + 2 * z1 ** 2, z1)
    gh = (g[0].compose_pair(*h), g[1].compose_pair(*h))
    assert f.compose_pair(*gh) == f.compose_pair(*g).compose_pair(*h)


def test_compose_rejects_constant_substituent(qq):
    z1, z2 = TruncSeries2.variables(qq, 3)
    with pytest.raises(NonVanishingSubstituent):
        z1.compose_pair(1 + z1, z2)


def test_min_order(qq):
    z1, z2 = TruncSeries2.variables(qq, 7)
    assert (z1 ** 2 * z2 + z2 ** 5).min_order() == 3
    assert TruncSeries2.zero(qq, 7).min_order() == 8
    assert ((z1 * z2) ** 3).min_order() == 6


def test_derivative(qq):
    z1, z2 = TruncSeries2.variables(qq, 4)
    f = z1 ** 2 * z2 + 3 * z2 ** 3
    assert f.derivative(0) == (2 * z1 * z2).with_order(3)
    assert f.derivative(1) == (z1 ** 2 + 9 * z2 ** 2).with_order(3)


def test_exact_matches_complex():
    exact = NumberField.from_tau("1/3")
    cc = ComplexField()
    terms = {(0, 0): 1, (1, 0): Fraction(1, 3), (0, 1): Fraction(-2, 7), (1, 1): Fraction(5, 2)}
    fe = TruncSeries2(exact, 5, terms).pow_rational(Fraction(2, 3))
    fc = TruncSeries2(cc, 5, {k: complex(float(v)) for k, v in terms.items()}).pow_rational(Fraction(2, 3))
    for key, value in fe.items():
        assert fc.coeff(*key).real == pytest.approx(float(value), rel=1e-10)


def test_evaluate(qq):
    z1, z2 = TruncSeries2.variables(qq, 3)
    f = z1 * z2 + 2 * z2 ** 2
    assert f.evaluate(1.0, 2.0).real == pytest.approx(10.0)
    assert TruncSeries2.zero(qq, 3).evaluate(1.0, 1.0) == 0
