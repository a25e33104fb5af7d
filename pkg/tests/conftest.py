import random
from fractions import Fraction

import pytest

from kato.algebra.scalars import ComplexField, NumberField
from kato.combinatorics.signature import Mat2Z, derive_signature
from kato.germs.families import BiratGerm


def make_sig(p, q, r, s, l):
    return derive_signature(Mat2Z(p, q, r, s), l)


def make_birat(sig, field, a0=None, a=None, aK=0):
    r"""
    germ with a0 = tau^(r+s-1) by default
    """
    if a0 is None:
        a0 = field.gen ** (sig.kS - 1)
    if a is None:
        a = (0,) * (sig.l - 1)
    return BiratGerm(sig, field, a0, tuple(a), aK)


# signatures of the normalization suite, (p, q, r, s, l)
NORMALIZE_SUITE = [
    (0, 1, 1, 1, 1),
    (0, 1, 1, 1, 2),
    (0, 1, 1, 1, 3),
    (0, 1, 1, 2, 1),
    (0, 1, 1, 2, 2),
    (1, 1, 1, 2, 1),
    (1, 1, 1, 2, 2),
    (0, 1, 1, 3, 1),
    (0, 1, 1, 3, 2),
    (1, 2, 1, 3, 1),
]


@pytest.fixture
def rng():
    return random.Random(7)


@pytest.fixture
def qq():
    return NumberField.rationals()


@pytest.fixture
def half():
    r"""Q with tau = 1/2"""
    return NumberField.from_tau(Fraction(1, 2))


@pytest.fixture
def cc():
    return ComplexField()
