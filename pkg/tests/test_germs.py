import random
from fractions import Fraction

import numpy as np
import pytest

from kato.algebra.scalars import NumberField
from kato.algebra.series import TruncSeries2
from kato.combinatorics.signature import Mat2Z, signature_from_ks
from kato.germs import (
    BiratGerm,
    FavreGerm,
    HopfGerm,
    IHGerm,
    apply_eps_action,
    apply_l_action,
    birat_chain_eval,
    birat_generic_form,
    birat_inverse_chain,
    birat_origin_form,
    compose_blowups_oracle,
    favre_type,
    global_vector_field,
    index,
    inverse_blowup,
    iterate,
    jacobian_det,
    jacobian_monomial,
    kappa_of,
    l_group,
    lambda_of,
    orbit_norms,
    uv_exponents,
    vf_condition,
)
from kato.germs.actions import l_group_order
from kato.utils.errors import Indeterminate, InvalidGerm, InvalidInput, NonTerminating, NotTwisted
from kato.utils.utils import random_rational

from conftest import make_birat, make_sig


def _random_germ(rng, field, max_blocks=3, max_k=3, max_l=3):
    ks = [rng.randint(1, max_k) for _ in range(rng.randint(1, max_blocks))]
    sig = signature_from_ks(ks, rng.randint(1, max_l))
    a0 = random_rational(rng, nonzero=True)
    a = [random_rational(rng) for _ in range(sig.l - 1)]
    aK = random_rational(rng) if sig.twisted else 0
    return BiratGerm(sig, field, a0, tuple(a), aK)


# ----- forms -----

def test_origin_form_examples(qq):
    g = make_birat(make_sig(0, 1, 1, 1, 1), qq, a0=Fraction(2, 3))
    g1, g2 = birat_origin_form(g)
    assert g1.coeffs == {(1, 2): 1, (1, 1): Fraction(2, 3)}
    assert g2.coeffs == {(1, 1): 1}

    g = make_birat(make_sig(1, 1, 1, 2, 1), qq, a0=5)
    g1, g2 = birat_origin_form(g)
    assert g1.coeffs == {(2, 3): 1, (1, 2): 5}
    assert g2.coeffs == {(1, 2): 1}


def test_origin_form_second_component_is_monomial(qq, rng):
    for _ in range(10):
        g = _random_germ(rng, qq)
        _, g2 = birat_origin_form(g)
        assert g2.coeffs == {(g.sig.r, g.sig.s): 1}


def test_generic_form_examples(qq):
    g = make_birat(make_sig(0, 1, 1, 1, 1), qq, a0=2, aK=3)
    g1, g2 = birat_generic_form(g, 6)
    assert g1.coeffs == {(0, 1): 1}
    # (z1 z2 + 2 z2 + 3 z2^2) z2
    assert g2.coeffs == {(1, 2): 1, (0, 2): 2, (0, 3): 3}

    g = make_birat(make_sig(1, 1, 1, 2, 1), qq, a0=2, aK=3)
    g1, g2 = birat_generic_form(g, 8)
    bracket = TruncSeries2(qq, 8, {(1, 1): 1, (0, 1): 2, (0, 2): 3})
    z2 = TruncSeries2.monomial(qq, 8, 0, 1)
    assert g1 == bracket * z2
    assert g2 == bracket * z2 * z2


def test_generic_form_min_order(qq, rng):
    for _ in range(10):
        g = _random_germ(rng, qq)
        _, g2 = birat_generic_form(g)
        assert g2.min_order() == g.sig.kS


def test_oracle_example(qq):
    g = make_birat(make_sig(0, 1, 1, 1, 1), qq, a0=Fraction(-1, 2))
    g1, g2 = compose_blowups_oracle(g, 10)
    assert g1.coeffs == {(1, 2): 1, (1, 1): Fraction(-1, 2)}
    assert g2.coeffs == {(1, 1): 1}


def test_oracle_monomial_when_coefficients_vanish(qq):
    sig = make_sig(1, 1, 1, 2, 1)
    g = BiratGerm(sig, qq, 1)
    _, g2 = compose_blowups_oracle(g, 12)
    assert g2.coeffs == {(1, 2): 1}


def test_oracle_matches_origin_form(qq):
    rng = random.Random(2024)
    for _ in range(25):
        g = _random_germ(rng, qq)
        assert compose_blowups_oracle(g, 20) == birat_origin_form(g, 20)


def test_oracle_matches_origin_form_complex(cc):
    rng = random.Random(5)
    for _ in range(5):
        ks = [rng.randint(1, 3) for _ in range(rng.randint(1, 2))]
        sig = signature_from_ks(ks, rng.randint(1, 2))
        a = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(sig.l - 1))
        g = BiratGerm(sig, cc, 0.5 + 0.25j, a, 0.3j if sig.twisted else 0)
        o1, o2 = compose_blowups_oracle(g, 16)
        f1, f2 = birat_origin_form(g, 16)
        assert (o1 - f1).max_abs() < 1e-12
        assert (o2 - f2).max_abs() < 1e-12


def test_jacobian_examples(qq):
    g = make_birat(make_sig(0, 1, 1, 1, 1), qq, a0=7)
    det = jacobian_det(g)
    assert det.coeffs == {(1, 2): -1}

    g = make_birat(make_sig(1, 1, 1, 2, 1), qq, a0=7)
    det = jacobian_det(g)
    assert det.coeffs == {(2, 4): 1}


def test_jacobian_is_monomial(qq):
    rng = random.Random(11)
    for _ in range(15):
        g = _random_germ(rng, qq)
        det = jacobian_det(g)
        assert det == jacobian_monomial(g, det.order)
        assert det.coeffs[next(iter(det.coeffs))] == g.sig.delta


def test_birat_germ_validation(qq):
    sig = make_sig(0, 1, 1, 2, 2)
    with pytest.raises(InvalidGerm):
        BiratGerm(sig, qq, 0, (1,))
    with pytest.raises(InvalidGerm):
        BiratGerm(sig, qq, 1, ())


def test_redundant_aK_is_dropped(qq):
    sig = make_sig(1, 1, 1, 2, 2)
    assert not sig.twisted
    g = BiratGerm(sig, qq, 1, (0,), 5)
    assert g.aK_redundant
    assert g.normalized().aK == 0
    assert birat_origin_form(g) == birat_origin_form(g.normalized())


# ----- invariants -----

@pytest.mark.parametrize("sig, uv", [
    ((0, 1, 1, 1, 1), (2, 1)),
    ((0, 1, 1, 2, 2), (2, 2)),
])
def test_uv_exponents(sig, uv):
    assert uv_exponents(make_sig(*sig)) == uv


def test_uv_integral_iff_twisted():
    for ks in [(1,), (2,), (3,), (1, 1), (1, 2), (2, 1), (2, 3), (1, 1, 1)]:
        for l in range(1, 7):
            sig = signature_from_ks(ks, l)
            u, v = uv_exponents(sig)
            assert (u.denominator == 1 and v.denominator == 1) == sig.twisted


def test_index():
    assert index(make_sig(0, 1, 1, 2, 2)) == 1
    assert index(make_sig(1, 1, 1, 2, 2)) == 2
    assert index(make_sig(0, 1, 1, 1, 3)) == 1


def test_vf_condition(qq):
    assert vf_condition(make_sig(1, 1, 1, 2, 1), qq, Fraction(1, 3)) == 0
    assert global_vector_field(make_sig(1, 1, 1, 2, 1), qq, Fraction(1, 3))
    assert vf_condition(make_sig(0, 1, 1, 1, 1), qq, 1) == 3
    assert not global_vector_field(make_sig(1, 1, 1, 2, 2), qq, 1)
    with pytest.raises(NotTwisted):
        vf_condition(make_sig(1, 1, 1, 2, 2), qq, 1)


def test_lambda_examples(qq, half):
    assert lambda_of(make_sig(0, 1, 1, 1, 1), qq, 3) == Fraction(-1, 18)
    assert lambda_of(make_sig(1, 1, 1, 2, 1), qq, Fraction(1, 3)) == 1
    assert lambda_of(make_sig(0, 1, 1, 2, 2), half, Fraction(1, 4)) == Fraction(-16, 3)


def test_kappa_examples(qq):
    assert kappa_of(make_sig(0, 1, 1, 1, 1), qq, 3) == -9
    assert kappa_of(make_sig(0, 1, 1, 2, 2), qq, 2) == -4


def test_lambda_kappa_k_is_one():
    rng = random.Random(606)
    for ks in [(1,), (2,), (1, 1), (3,)]:
        for l in (1, 2, 3):
            sig = signature_from_ks(ks, l)
            if index(sig) != 1:
                continue
            for _ in range(20):
                f = NumberField.from_tau(random_rational(rng, height=9, nonzero=True))
                a0 = f.gen ** (sig.kS - 1)
                assert lambda_of(sig, f, a0) * kappa_of(sig, f, a0) * sig.kS == 1


def test_vf_locus_is_lambda_one(half):
    # a0 = 1/3 lies on both loci, a0 = 1/4 on neither
    sig = make_sig(1, 1, 1, 2, 1)
    f = NumberField([-3, 0, 1])
    a0 = f.gen ** -2
    assert lambda_of(sig, f, a0) == 1
    assert vf_condition(sig, f, a0) == 0
    assert lambda_of(sig, half, Fraction(1, 4)) != 1
    assert vf_condition(sig, half, Fraction(1, 4)) != 0
    rng = random.Random(607)
    for _ in range(20):
        g = NumberField.from_tau(random_rational(rng, height=9, nonzero=True))
        a0 = g.gen ** (sig.kS - 1)
        assert (lambda_of(sig, g, a0) == 1) == (vf_condition(sig, g, a0) == 0)


def test_favre_type(qq):
    f = FavreGerm(qq, 2, 2, 3, {1: 5})
    assert favre_type(f) == ([1], 1)
    f = FavreGerm(qq, 2, 3, 4, {2: 1, 3: 7})
    assert favre_type(f) == ([2, 3], 2)
    with pytest.raises(NonTerminating):
        favre_type(FavreGerm(qq, 2, 4, 4, {2: 1, 4: 1}))


def test_favre_type_of_normal_forms_has_one_step():
    for ks in [(1,), (2,), (1, 1), (2, 3)]:
        sig = signature_from_ks(ks, 2)
        f = FavreGerm(NumberField.rationals(), 1, sig.sigma, sig.kS, {sig.pq: 1})
        assert favre_type(f) == ([sig.pq], 1)


def test_favre_germ_validation(qq):
    with pytest.raises(InvalidGerm):
        FavreGerm(qq, 1, 2, 3, {})
    with pytest.raises(InvalidGerm):
        FavreGerm(qq, 0, 2, 3, {1: 1})
    with pytest.raises(InvalidGerm):
        FavreGerm(qq, 1, 2, 3, {2: 0, 3: 0})
    # c is only allowed on the lambda = 1 locus
    with pytest.raises(InvalidGerm):
        FavreGerm(qq, 2, 2, 3, {1: 1}, c=1)
    FavreGerm(qq, 1, 2, 3, {1: 1}, c=1)


# ----- actions -----

def test_l_group(qq):
    sig = make_sig(0, 1, 1, 2, 2)
    assert l_group_order(sig) == 4
    assert l_group(sig, qq) == [(1, 1), (-1, -1)]


def test_l_group_complex_contains_exact(qq, cc):
    sig = make_sig(0, 1, 1, 2, 2)
    elems = l_group(sig, cc)
    assert len(elems) >= 2
    assert any(abs(A - 1) < 1e-9 and abs(B - 1) < 1e-9 for A, B in elems)
    for A, B in elems:
        assert abs(A ** sig.r * B ** sig.s - B) < 1e-9


def test_apply_l_action(qq):
    sig = make_sig(0, 1, 1, 2, 2)
    g = BiratGerm(sig, qq, Fraction(1, 4), (3,), 2)
    h = apply_l_action(g, -1, -1)
    assert h.a0 == Fraction(1, 4)
    assert h.a == (-3,)
    assert h.aK == 2
    assert apply_l_action(h, -1, -1) == g
    with pytest.raises(InvalidInput):
        apply_l_action(g, 1, -1)


def test_apply_eps_action(qq):
    f = FavreGerm(qq, 3, 2, 3, {1: 2, 2: 5})
    h = apply_eps_action(f, -1)
    assert h.lam == 3
    assert h.b == {1: 2, 2: -5}
    assert apply_eps_action(h, -1) == f
    with pytest.raises(InvalidInput):
        apply_eps_action(f, 2)


# ----- dynamics and the blow-up chain -----

def test_fixed_point_orbit(qq):
    g = make_birat(make_sig(0, 1, 1, 1, 1), qq, a0=1)
    assert iterate(g, (0, 0), 4) == [(0, 0)] * 5


def test_hopf_orbit():
    g = HopfGerm(0.25, 0.5)
    orbit = iterate(g, (1, 1), 3)
    assert orbit[3][0] == pytest.approx(0.25 ** 3)
    assert orbit[3][1] == pytest.approx(0.5 ** 3)
    with pytest.raises(InvalidGerm):
        HopfGerm(0.5, 0.25)


def test_superattracting_orbit(qq):
    g = make_birat(make_sig(0, 1, 1, 1, 1), qq, a0=1)
    z1, z2 = iterate(g, (0.05, 0.05), 5)[-1]
    assert abs(z1) < 1e-6 and abs(z2) < 1e-6


def test_orbit_norms_shape(qq):
    g = make_birat(make_sig(0, 1, 1, 1, 1), qq, a0=1)
    points = np.array([[0.1, 0.1], [0.2j, 0.05]])
    norms = orbit_norms(g, points, 4)
    assert norms.shape == (2, 5)
    assert np.all(norms[:, -1] < norms[:, 0])


def test_ih_germ():
    g = IHGerm(Mat2Z(1, 1, 1, 2))
    w1, w2 = g.evaluate(0.5, 0.5)
    assert complex(w1) == pytest.approx(0.25)
    assert complex(w2) == pytest.approx(0.125)
    with pytest.raises(InvalidGerm):
        IHGerm(Mat2Z(1, 0, 0, 1))


def test_inverse_blowup_examples():
    a = 0.3 - 0.2j
    assert inverse_blowup((a + 1, 1), a, True) == pytest.approx((1, 1))
    with pytest.raises(Indeterminate):
        inverse_blowup((a, 1e-320), a, True)
    with pytest.raises(Indeterminate):
        inverse_blowup((a, 2.0), a, False)


@pytest.mark.parametrize("sig", [(0, 1, 1, 1, 1), (0, 1, 1, 2, 2), (1, 1, 1, 2, 2), (0, 1, 1, 1, 3)])
def test_chain_matches_evaluate(cc, sig):
    sig = make_sig(*sig)
    a = tuple(0.5 - 0.1j * i for i in range(1, sig.l))
    g = BiratGerm(sig, cc, 0.25 + 0.1j, a, 0.7 if sig.twisted else 0)
    z = (0.3 + 0.1j, 0.4 - 0.2j)
    w = birat_chain_eval(g, z)
    e1, e2 = g.evaluate(*z)
    assert w[0] == pytest.approx(complex(e1), rel=1e-9)
    assert w[1] == pytest.approx(complex(e2), rel=1e-9)
    back = birat_inverse_chain(g, w)
    assert back[0] == pytest.approx(z[0], rel=1e-6)
    assert back[1] == pytest.approx(z[1], rel=1e-6)
