"""Hyperbolic realization: theta, evaluation, and the spectrum classifier."""

import random

import pytest

from uqfk.scalars import field_for_m
from uqfk.algebra import Algebra, fm_laurent
from uqfk.hyperbolic import (CharacterPoint, RElement, SpectrumClass,
                             classify_point, classify_report, evaluate,
                             orbit_distinct, theta_apply,
                             theta_apply_stepwise, theta_xi,
                             xi_orbit_vanishing)


def test_theta_inverse_of_xi():
    # theta^-1(xi) = xi - (K^m - K^-m)/(q - q^-1)
    for m in (1, 2):
        field = field_for_m(m)
        t_inv = (field.q - field.q_power(-1)).inverse()
        expected = RElement(field, {(1, 0): field.one,
                                    (0, m): -t_inv, (0, -m): t_inv})
        assert theta_xi(-1, m) == expected


def test_theta_zero_is_identity():
    field = field_for_m(2)
    r = RElement(field, {(2, -1): field.q, (0, 3): field.one})
    assert theta_apply(r, 0, 2) == r


def test_theta_closed_form_equals_double_step():
    for m in (1, 2):
        xi = RElement.xi(field_for_m(m))
        once = theta_apply_stepwise(xi, 1, m)
        twice = theta_apply_stepwise(once, 1, m)
        assert theta_apply(xi, 2, m) == twice


@pytest.mark.parametrize("m", [1, 2, 3])
def test_theta_forward_backward_inverse(m):
    field = field_for_m(m)
    rng = random.Random(5 * m)
    for _ in range(4):
        terms = {}
        for _ in range(3):
            terms[(rng.randint(0, 2), rng.randint(-2, 2))] = \
                field.q_power(rng.randint(-1, 1))
        r = RElement(field, terms)
        for n in (1, 3, 10):
            assert theta_apply(theta_apply(r, n, m), -n, m) == r


def test_hyperbolic_commutation_identities_in_algebra():
    # E (EF) = theta(EF) E and F (EF) = theta^-1(EF) F after normalization
    for m in (1, 2):
        alg = Algebra.standard(m)
        xi_elem = alg.E() * alg.F()
        left = alg.E() * xi_elem
        right = theta_xi(1, m).to_algebra_element(alg) * alg.E()
        assert left == right
        left = alg.F() * xi_elem
        right = theta_xi(-1, m).to_algebra_element(alg) * alg.F()
        assert left == right
        # and xi = EF = theta(K)-twisted product: E K = theta(K) E
        field = alg.field
        assert alg.E() * alg.K() == alg.K().scale(field.q_power(-2)) * alg.E()


def test_evaluate_examples():
    field = field_for_m(1)
    p = CharacterPoint(field.q_power(2), field.q_power(3), 1)
    assert evaluate(RElement.xi(field), p) == p.alpha
    assert evaluate(RElement.k_power(field, -1), p) == p.beta.inverse()
    t_inv = (field.q - field.q_power(-1)).inverse()
    expected = p.alpha - (p.beta - p.beta.inverse()) * t_inv
    assert evaluate(theta_xi(-1, 1), p) == expected


def test_orbit_distinct():
    field = field_for_m(1)
    p = CharacterPoint(field.one, field.q_power(2), 1)
    assert orbit_distinct(p, 20)
    assert orbit_distinct(p, 1)


def test_character_point_validation():
    field = field_for_m(1)
    with pytest.raises(ValueError):
        CharacterPoint(field.one, field.zero, 1)
    with pytest.raises(ValueError):
        CharacterPoint(field_for_m(2).one, field_for_m(2).q, 1)


def test_classify_spec_examples():
    field = field_for_m(1)
    assert classify_point(CharacterPoint(field.one, field.q, 1)) \
        == SpectrumClass("Finite1N", 1)
    assert classify_point(CharacterPoint(field.zero, field.one, 1)) \
        == SpectrumClass("TwoSided11")
    assert classify_point(CharacterPoint(field.q_power(7), field.q_power(3), 1)) \
        == SpectrumClass("DenseInfInf")


def test_classify_finite_iff_boundary_and_power():
    # Finite1N(n) exactly when alpha = (b - 1/b)/(q - q^-1) and b = +-q^(mn)
    for m in (1, 2):
        field = field_for_m(m)
        t_inv = (field.q - field.q_power(-1)).inverse()
        for k in range(2 * m):
            for n in (1, 2, 4):
                beta = field.zeta_power(k) * field.q_power(n)
                b = beta ** m
                alpha = (b - b.inverse()) * t_inv
                cls = classify_point(CharacterPoint(alpha, beta, m))
                assert cls == SpectrumClass("Finite1N", n)
                # exact-equality stability: spoiling alpha leaves the locus
                cls2 = classify_point(CharacterPoint(alpha + field.one, beta, m))
                assert cls2.kind != "Finite1N"


def test_classify_highest_weight_cases():
    field = field_for_m(1)
    t_inv = (field.q - field.q_power(-1)).inverse()
    # beta not of the form +-q^n: boundary alpha gives the infinite class
    beta = field.from_int(2) * field.q
    alpha = (beta - beta.inverse()) * t_inv
    assert classify_point(CharacterPoint(alpha, beta, 1)) \
        == SpectrumClass("HighestWeight1Inf")
    # beta = q^-3 puts the second vanishing below the start: still
    # highest-weight (no forward zero)
    beta = field.q_power(-3)
    alpha = (beta - beta.inverse()) * t_inv
    cls = classify_point(CharacterPoint(alpha, beta, 1))
    assert cls == SpectrumClass("HighestWeight1Inf")
    p = CharacterPoint(alpha, beta, 1)
    assert xi_orbit_vanishing(p, -6, 6) == [-3, -1]


def test_classify_lowest_weight_cases():
    field = field_for_m(1)
    beta = field.from_int(3)
    assert classify_point(CharacterPoint(field.zero, beta, 1)) \
        == SpectrumClass("LowestWeightInf1")
    # beta = q^2: alpha = 0 kills xi but theta^-3(xi) also vanishes; the
    # classifier's fallback files this under DenseInfInf (the point is an
    # orbit shift of a finite-type point, not a lowest-weight base point)
    p = CharacterPoint(field.zero, field.q_power(-2), 1)
    assert classify_point(p) == SpectrumClass("DenseInfInf")
    assert xi_orbit_vanishing(p, -6, 6) == [-3, 0]


def test_classifier_consistent_with_direct_scan():
    # on a grid of points, the class agrees with the literal vanishing scan
    for m in (1, 2):
        field = field_for_m(m)
        t_inv = (field.q - field.q_power(-1)).inverse()
        points = []
        for k in range(2 * m):
            for e in (-2, 0, 1, 3):
                beta = field.zeta_power(k) * field.q_power(e)
                b = beta ** m
                bd = (b - b.inverse()) * t_inv
                points += [CharacterPoint(bd, beta, m),
                           CharacterPoint(field.zero, beta, m),
                           CharacterPoint(bd + field.one, beta, m)]
        for p in points:
            zeros = set(xi_orbit_vanishing(p, -9, 9))
            cls = classify_point(p)
            if cls.kind == "TwoSided11":
                assert {-1, 0} <= zeros
            elif cls.kind == "Finite1N":
                assert -1 in zeros and cls.n in zeros
                assert not any(0 <= z < cls.n for z in zeros)
            elif cls.kind == "HighestWeight1Inf":
                assert -1 in zeros and not any(z >= 0 for z in zeros)
            elif cls.kind == "LowestWeightInf1":
                assert 0 in zeros and not any(z <= -1 for z in zeros)


def test_classify_report_fields():
    field = field_for_m(1)
    rep = classify_report(CharacterPoint(field.one, field.q, 1))
    assert rep.hw_boundary and not rep.lw_boundary
    assert rep.beta_power_exponent == 1
    assert str(rep.spectrum_class) == "Finite1N(1)"


def test_nonmonomial_beta_accepted():
    field = field_for_m(1)
    beta = field.q + field.one
    cls = classify_point(CharacterPoint(field.one, beta, 1))
    assert cls.kind in ("DenseInfInf", "HighestWeight1Inf")
