"""Weight-module construction, the quotient oracle, and the irrep census."""

import pytest

from uqfk.scalars import field_for_m
from uqfk.algebra import AlgebraElement, casimir, pbw_monomials_up_to
from uqfk.hyperbolic import CharacterPoint, SpectrumClass, classify_point
from uqfk.weightmod import (WeightModule, are_isomorphic, casimir_scalar,
                            construct_weight_module, enumerate_finite_irreps,
                            invariant_coordinate_subspaces,
                            is_irreducible_finite, quotient_oracle_action,
                            verify_relations)


def _point(field, alpha, beta, m):
    return CharacterPoint(alpha, beta, m)


def _boundary_alpha(field, beta, m):
    b = beta ** m
    return (b - b.inverse()) / (field.q - field.q_power(-1))


def test_two_dim_module_m1():
    field = field_for_m(1)
    mod = construct_weight_module(_point(field, field.one, field.q, 1))
    assert mod.dimension == 2
    assert [str(mod.k_eigen(i)) for i in mod.indices()] == ["q", "(1)/(q)"]
    assert mod.e_coeff(1) == field.one        # chi(theta^0 xi) = alpha
    assert mod.e_coeff(0).is_zero()
    assert mod.e_coeff(2).is_zero()           # boundary consistency
    ok, failures = verify_relations(mod)
    assert ok, failures


def test_one_dim_module():
    field = field_for_m(1)
    mod = construct_weight_module(_point(field, field.zero, field.one, 1))
    assert mod.spectrum_class == SpectrumClass("TwoSided11")
    assert mod.dimension == 1
    mats = mod.matrices()
    assert all(x.is_zero() for row in mats["E"].rows for x in row)
    assert all(x.is_zero() for row in mats["F"].rows for x in row)
    assert mats["K"].rows[0][0].is_one()


def test_dim3_module_m2():
    field = field_for_m(2)
    beta = field.q_power(2)                  # beta^2 = q^4 = q^(2*2)
    mod = construct_weight_module(
        _point(field, _boundary_alpha(field, beta, 2), beta, 2))
    assert mod.dimension == 3
    ok, failures = verify_relations(mod)
    assert ok, failures


def test_quotient_oracle_examples():
    field = field_for_m(1)
    p = _point(field, field.one, field.q, 1)
    cls = classify_point(p)
    alg = construct_weight_module(p).algebra
    assert quotient_oracle_action(alg.E(), 0, p, cls) == {}
    out = quotient_oracle_action(alg.K(), 1, p, cls)
    assert out == {1: field.q_power(-2) * field.q}
    out = quotient_oracle_action(alg.E() * alg.F(), 0, p, cls)
    assert out == {0: p.alpha}


@pytest.mark.parametrize("m", [1, 2])
def test_oracle_matches_closed_form_small(m):
    field = field_for_m(m)
    for dim in (1, 2, 3):
        for mod in enumerate_finite_irreps(dim, m):
            for mono in pbw_monomials_up_to(2):
                u = AlgebraElement(mod.algebra, {mono: field.one})
                for i in mod.indices():
                    closed = mod.act(u, mod.basis_vector(i))
                    oracle = quotient_oracle_action(u, i, mod.point,
                                                    mod.spectrum_class)
                    keys = set(closed) | set(oracle)
                    assert all((closed.get(k, field.zero)
                                - oracle.get(k, field.zero)).is_zero()
                               for k in keys)


def test_verify_relations_negative_control():
    field = field_for_m(1)
    mod = construct_weight_module(_point(field, field.one, field.q, 1))
    mod._e_cache[1] = field.q_power(5)  # corrupt one coefficient
    ok, failures = verify_relations(mod)
    assert not ok
    assert any(idx in (0, 1) and "EF - FE" in rel for idx, rel in failures)


def test_is_irreducible_and_subspace_search():
    field = field_for_m(1)
    for dim in (2, 3, 4):
        mod = enumerate_finite_irreps(dim, 1)[0]
        assert is_irreducible_finite(mod)
        assert invariant_coordinate_subspaces(mod) == []
    # hand-built direct sum of two 1-dim modules: E = F = 0 on both vectors
    p = _point(field, field.one, field.q, 1)
    broken = WeightModule(SpectrumClass("Finite1N", 1), p,
                          e_override={0: field.zero, 1: field.zero})
    assert not is_irreducible_finite(broken)
    assert invariant_coordinate_subspaces(broken) != []


def test_irreducibility_equivalence_dim_le_4():
    # e-coefficient criterion == exhaustive coordinate-subspace search
    field = field_for_m(1)
    candidates = [enumerate_finite_irreps(d, 1)[0] for d in (2, 3, 4)]
    p = _point(field, field.one, field.q, 1)
    candidates.append(WeightModule(SpectrumClass("Finite1N", 1), p,
                                   e_override={0: field.zero, 1: field.zero}))
    for mod in candidates:
        assert is_irreducible_finite(mod) == \
            (invariant_coordinate_subspaces(mod) == [])


def test_enumerate_m1():
    field = field_for_m(1)
    mods = enumerate_finite_irreps(1, 1)
    assert len(mods) == 2
    assert sorted(str(m_.point.beta) for m_ in mods) == ["-1", "1"]
    mods = enumerate_finite_irreps(2, 1)
    assert sorted(str(m_.point.beta) for m_ in mods) == ["-q", "q"]
    assert sorted(str(m_.point.alpha) for m_ in mods) == ["-1", "1"]


def test_enumerate_m2_dim2():
    field = field_for_m(2)
    mods = enumerate_finite_irreps(2, 2)
    assert len(mods) == 4
    betas = {str(m_.point.beta) for m_ in mods}
    assert betas == {"q", "-q", "(z)*q", "(-z)*q"}


def test_pairwise_non_isomorphic():
    mods = enumerate_finite_irreps(3, 2)
    for i in range(len(mods)):
        assert are_isomorphic(mods[i], mods[i])
        for j in range(i + 1, len(mods)):
            assert not are_isomorphic(mods[i], mods[j])


def test_casimir_scalar_examples():
    field = field_for_m(1)
    one_dim = construct_weight_module(_point(field, field.zero, field.one, 1))
    d = ((field.q_power(2) - field.one) * (field.q - field.q_power(-1))).inverse()
    expected = (field.q_power(2) + field.one) * d
    assert casimir_scalar(one_dim) == expected
    two_dim = construct_weight_module(_point(field, field.one, field.q, 1))
    s = casimir_scalar(two_dim)  # raises if not constant across the basis
    # the Casimir matrix is scalar, so it commutes with E and F matrices
    mats = two_dim.matrices()
    omega = casimir(1)
    ovals = [two_dim.act(omega, two_dim.basis_vector(i)) for i in (0, 1)]
    assert ovals[0] == {0: s} and ovals[1] == {1: s}


def test_casimir_scalar_rejects_corruption():
    field = field_for_m(1)
    mod = construct_weight_module(_point(field, field.one, field.q, 1))
    mod._e_cache[1] = field.q_power(4)
    with pytest.raises(ValueError):
        casimir_scalar(mod)


def test_m1_recovers_uq_sl2_weight_theory():
    # (EF - FE) v_i = (K - K^-1)/(q - q^-1) v_i on the (n+1)-dim module
    field = field_for_m(1)
    for dim in (2, 3):
        mod = enumerate_finite_irreps(dim, 1)[0]
        t_inv = (field.q - field.q_power(-1)).inverse()
        for i in mod.indices():
            v = mod.basis_vector(i)
            lhs = mod.act(mod.algebra.E(), mod.act(mod.algebra.F(), v))
            rhs = mod.act(mod.algebra.F(), mod.act(mod.algebra.E(), v))
            diff = {k: lhs.get(k, field.zero) - rhs.get(k, field.zero)
                    for k in set(lhs) | set(rhs)}
            kv = mod.k_eigen(i)
            expected = (kv - kv.inverse()) * t_inv
            assert diff.get(i, field.zero) == expected
            assert all(v_.is_zero() for k, v_ in diff.items() if k != i)


def test_infinite_classes_window_relations():
    field = field_for_m(1)
    t_inv = (field.q - field.q_power(-1)).inverse()
    # highest weight: boundary alpha, beta not +-q^n
    beta = field.from_int(2)
    alpha = (beta - beta.inverse()) * t_inv
    hw = construct_weight_module(CharacterPoint(alpha, beta, 1), truncation=5)
    assert hw.spectrum_class == SpectrumClass("HighestWeight1Inf")
    assert hw.indices() == list(range(6))
    ok, failures = verify_relations(hw)
    assert ok, failures
    # lowest weight: alpha = 0, beta generic
    lw = construct_weight_module(CharacterPoint(field.zero, field.from_int(3), 1),
                                 truncation=5)
    assert lw.spectrum_class == SpectrumClass("LowestWeightInf1")
    assert lw.indices() == list(range(-5, 1))
    assert all(not lw.e_coeff(i).is_zero() for i in range(-5, 1))
    ok, failures = verify_relations(lw)
    assert ok, failures
    # dense: both boundary conditions fail
    dense = construct_weight_module(
        CharacterPoint(field.q_power(7), field.q_power(3), 1), truncation=4)
    assert dense.spectrum_class == SpectrumClass("DenseInfInf")
    assert dense.indices() == list(range(-4, 5))
    ok, failures = verify_relations(dense)
    assert ok, failures
    eigs = [str(dense.k_eigen(i)) for i in dense.indices()]
    assert len(set(eigs)) == len(eigs)  # pairwise distinct in the window


def test_export_json_layout():
    field = field_for_m(1)
    mod = construct_weight_module(CharacterPoint(field.one, field.q, 1))
    data = mod.export_json()
    assert data["m"] == 1 and data["dimension"] == 2
    assert data["class"] == "Finite1N(1)"
    assert data["matrices"]["E"][0][1] == "1"
    assert data["matrices"]["F"][1][0] == "1"
    assert data["matrices"]["K"][0][0] == "q"
    assert data["matrices"]["K^-1"][1][1] == "q"
