"""Ground-field arithmetic: cyclotomic integers and rational functions in q."""

import pytest
from hypothesis import given, settings, strategies as st

from uqfk.scalars import (RAT, Scalar, ScalarDivisionError, QPoly,
                          cyclotomic_polynomial, cyclo_field, field_for_m,
                          q_number, qpoly_gcd, scalar_arith, scalar_field)


def _poly_divide_ints(num, den):
    # oracle-side long division over Q, dense ascending lists
    num = [RAT(c) for c in num]
    den = [RAT(c) for c in den]
    quo = [RAT(0)] * (len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        c = num[-1] / den[-1]
        k = len(num) - len(den)
        quo[k] = c
        for i, d in enumerate(den):
            num[k + i] -= c * d
    assert not any(num), "division not exact"
    return quo


def test_cyclotomic_base_cases():
    assert cyclotomic_polynomial(1) == (RAT(-1), RAT(1))
    assert cyclotomic_polynomial(2) == (RAT(1), RAT(1))


def test_cyclotomic_6_against_division_oracle():
    # divide z^6 - 1 by Phi_1 * Phi_2 * Phi_3 computed by hand
    phi1 = [-1, 1]
    phi2 = [1, 1]
    phi3 = [1, 1, 1]
    prod = [RAT(0)] * 5
    tmp = [RAT(0)] * 3
    for i, a in enumerate(phi1):
        for j, b in enumerate(phi2):
            tmp[i + j] += RAT(a) * RAT(b)
    for i, a in enumerate(tmp):
        for j, b in enumerate(phi3):
            prod[i + j] += a * RAT(b)
    z6m1 = [-1, 0, 0, 0, 0, 0, 1]
    expected = _poly_divide_ints(z6m1, prod)
    assert list(cyclotomic_polynomial(6)) == expected
    assert expected == [RAT(1), RAT(-1), RAT(1)]  # z^2 - z + 1


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_degrees_multiply_up(n):
    # product over divisors of Phi_d recovers z^n - 1 degree-wise
    total = sum(len(cyclotomic_polynomial(d)) - 1
                for d in range(1, n + 1) if n % d == 0)
    assert total == n


def test_root_of_unity_relations():
    for m in (1, 2, 3, 4):
        field = field_for_m(m)
        n = 2 * m
        assert (field.z ** n - field.one).is_zero()
        # Phi_N(z) = 0
        cyc = field.cyclo
        acc = cyc.zero
        power = cyc.one
        for c in cyclotomic_polynomial(n):
            acc = acc + power.scale(c)
            power = power * cyc.z
        assert acc.is_zero()


def test_zeta_squared_is_minus_one_at_n4():
    field = scalar_field(4)
    assert (field.z * field.z + field.one).is_zero()


def test_scalar_arith_examples():
    field = field_for_m(1)
    t = field.q - field.q_power(-1)
    assert scalar_arith(t, t.inverse(), "mul").is_one()
    assert scalar_arith(field.q, -field.q, "add").is_zero()
    with pytest.raises(ScalarDivisionError):
        scalar_arith(field.one, field.zero, "div")


def test_q_number_values():
    assert q_number(0, 1).is_zero()
    assert q_number(1, 1).is_one()
    field = field_for_m(1)
    expected = field.q + field.q_power(-1)  # (q^2-q^-2)/(q-q^-1) expanded
    assert (q_number(2, 1) - expected).is_zero()
    assert (q_number(-3, 2) + q_number(3, 2)).is_zero()


def test_canonical_form_idempotent():
    field = field_for_m(2)
    q = field.q
    s = (q ** 3 - q) / (q ** 2 - field.one)
    again = Scalar.make(s.num, s.den)
    assert again.num == s.num and again.den == s.den
    # denominator is monic, fraction reduced
    g = qpoly_gcd(s.num, s.den)
    assert g.degree() == 0 and g.is_monomial()
    assert s.den.leading() == field.cyclo.one


def _scalars(field):
    q = field.q
    base = [field.one, -field.one, q, q ** -1, field.z,
            field.from_rat(RAT(2, 3)), q ** 2 - field.one,
            (q - q ** -1).inverse(), field.z * q ** 3 + field.one]
    return base


joined = st.integers(min_value=0, max_value=8)


@settings(max_examples=60, deadline=None)
@given(i=joined, j=joined, k=joined)
def test_field_axioms_sampled(i, j, k):
    field = field_for_m(2)
    xs = _scalars(field)
    a, b, c = xs[i], xs[j], xs[k]
    assert ((a + b) + c - (a + (b + c))).is_zero()
    assert ((a * b) * c - (a * (b * c))).is_zero()
    assert (a * (b + c) - (a * b + a * c)).is_zero()
    if not a.is_zero():
        assert (a * a.inverse() - field.one).is_zero()


@settings(max_examples=60, deadline=None)
@given(i=joined, j=joined)
def test_equality_agrees_with_subtraction(i, j):
    field = field_for_m(1)
    xs = _scalars(field)
    a, b = xs[i], xs[j]
    assert (a == b) == (a - b).is_zero()


def test_monomial_decomposition():
    field = field_for_m(2)
    s = -(field.z * field.q_power(-3))
    c, e = s.as_q_monomial()
    assert e == -3 and c == -field.cyclo.z
    assert ((field.q + field.one) / field.q).as_q_monomial() is None


def test_mixed_fields_rejected():
    from uqfk.scalars import FieldMismatchError
    with pytest.raises(FieldMismatchError):
        field_for_m(1).q + field_for_m(2).q


def test_evaluate_at_rational_point():
    field = field_for_m(1)
    s = (field.q ** 2 - field.one) / (field.q - field.one)  # = q + 1
    assert s.evaluate_at(RAT(2)).as_rational() == RAT(3)
    with pytest.raises(ScalarDivisionError):
        ((field.one) / (field.q - field.from_int(2))).evaluate_at(RAT(2))
