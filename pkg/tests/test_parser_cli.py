"""Expression parser, canonical-rendering round trips, and the CLI."""

import json
import os

import pytest

from uqfk.scalars import field_for_m
from uqfk.algebra import Algebra, casimir, is_central
from uqfk.exprs import (ParseError, evaluate, evaluate_scalar, parse,
                        evaluate_center_poly, syntactic_center_roots)
from uqfk.cli import main


@pytest.fixture(scope="module")
def alg1():
    return Algebra.standard(1)


def test_defining_relation_evaluates_to_f(alg1):
    value = evaluate("E*F - F*E", alg1)
    assert value == alg1.from_laurent(alg1.f)


def test_k_zero_power(alg1):
    assert evaluate("K^0", alg1) == alg1.one()


def test_central_polynomial(alg1):
    value = evaluate("Omega^2 - 3*Omega + 1", alg1)
    assert is_central(value)


def test_precedence(alg1):
    field = alg1.field
    # '^' binds tighter than unary minus, which binds tighter than '*'
    assert evaluate_scalar("-q^2", alg1) == -(field.q ** 2)
    assert evaluate_scalar("2*q^-1", alg1) == field.from_int(2) * field.q ** -1
    assert evaluate_scalar("1 - 2 - 3", alg1) == field.from_int(-4)
    assert evaluate_scalar("12/3/2", alg1) == field.from_int(2)
    assert evaluate_scalar("3/2*z^2", alg1) == \
        field.from_rat(3) / field.from_rat(2) * field.z ** 2


def test_juxtaposition_multiplication(alg1):
    assert evaluate("F K^2 E", alg1) == alg1.F() * alg1.K(2) * alg1.E()
    assert evaluate_scalar("2 q", alg1) == alg1.field.from_int(2) * alg1.field.q


def test_errors_carry_positions(alg1):
    with pytest.raises(ParseError) as err:
        parse("E + Q")
    assert err.value.pos == 4
    with pytest.raises(ParseError) as err:
        parse("K^x")
    assert err.value.pos == 2
    with pytest.raises(ParseError) as err:
        parse("(E + F")
    with pytest.raises(ParseError):
        evaluate("E/F", alg1)           # division by a non-scalar
    with pytest.raises(ParseError):
        evaluate("F^-1", alg1)          # non-invertible element
    with pytest.raises(ParseError):
        evaluate("1/0", alg1)
    assert evaluate("K^-3", alg1) == alg1.K(-3)


def test_scalar_rendering_round_trip(alg1):
    field = alg1.field
    samples = [field.one, -field.one, field.q ** -3,
               (field.q ** 2 - field.one) / (field.q ** 3 + field.from_int(2)),
               field.from_rat(7) / field.from_rat(3),
               (field.q - field.q ** -1).inverse()]
    f2 = field_for_m(2)
    alg2 = Algebra.standard(2)
    samples2 = [f2.z * f2.q ** 2 + f2.one, (f2.z + f2.one) / (f2.q - f2.z)]
    for s in samples:
        assert evaluate_scalar(str(s), alg1) == s
    for s in samples2:
        assert evaluate_scalar(str(s), alg2) == s


def test_element_rendering_round_trip():
    for m in (1, 2):
        alg = Algebra.standard(m)
        samples = [alg.one(), alg.E() * alg.F(),
                   casimir(m), casimir(m) ** 2,
                   alg.F(2) * alg.K(-3) * alg.E() + alg.K(5).scale(alg.field.z)]
        for e in samples:
            assert evaluate(str(e), alg) == e


def test_center_poly_evaluation(alg1):
    coeffs = evaluate_center_poly(parse("Omega^2 - 3*Omega + 1"), alg1)
    field = alg1.field
    assert [str(c) for c in coeffs] == ["1", "-3", "1"]
    roots = syntactic_center_roots(parse("(Omega - q)^2 * (Omega - q^3)"), alg1)
    assert [(str(r), mult) for r, mult in roots] == [("q", 2), ("q^3", 1)]
    assert syntactic_center_roots(parse("Omega^2 - 3*Omega + 1"), alg1) is None


# ---------------------------------------------------------------------------
# CLI

def test_cli_eval(capsys):
    assert main(["eval", "E*F-F*E-(K-K^-1)/(q-q^-1)"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_cli_eval_m_env(capsys, monkeypatch):
    monkeypatch.setenv("UQFK_M", "2")
    assert main(["eval", "E*F-F*E-(K^2-K^-2)/(q-q^-1)"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_cli_classify(capsys):
    assert main(["classify", "--alpha", "1", "--beta", "q"]) == 0
    assert capsys.readouterr().out.strip() == "Finite1N(1) dim=2"


def test_cli_classify_sweep_csv(tmp_path, capsys):
    rc = main(["--format", "csv", "--output-dir", str(tmp_path),
               "classify", "--sweep", "--exp-lo", "-1", "--exp-hi", "1"])
    assert rc == 0
    path = tmp_path / "classify_sweep_m1_boundary.csv"
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "m,alpha,beta,class,n"
    assert len(lines) == 1 + 2 * 3  # 2 roots x 3 exponents
    assert any("Finite1N(1),1" in line for line in lines)


def test_cli_classify_sweep_plot(tmp_path):
    rc = main(["--output-dir", str(tmp_path), "--plot",
               "classify", "--sweep", "--exp-lo", "-1", "--exp-hi", "1"])
    assert rc == 0
    assert (tmp_path / "classify_sweep_m1_boundary.png").exists()
    assert (tmp_path / "classify_sweep_m1_boundary.csv").exists()


def test_cli_irreps(tmp_path, capsys):
    rc = main(["--format", "json", "--output-dir", str(tmp_path),
               "irreps", "--dim", "1"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "2 simple modules of dimension 1" in out
    data = json.loads((tmp_path / "irreps_m1_dim1.json").read_text())
    assert len(data) == 2
    assert {d["beta"] for d in data} == {"1", "-1"}


def test_cli_relcheck(capsys):
    assert main(["relcheck", "--max-m", "2"]) == 0


def test_cli_whittaker_vectors(capsys):
    rc = main(["whittaker", "--g", "(Omega - q)^2", "--eta", "1", "--vectors"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "dimension 2" in out


def test_cli_whittaker_lattice(tmp_path, capsys):
    rc = main(["--format", "dot", "--output-dir", str(tmp_path), "--plot",
               "whittaker", "--g", "(Omega - q)^2 * (Omega - q^3)",
               "--lattice"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "submodules: 6; composition length 3; summands 2" in out
    dot = (tmp_path / "lattice.dot").read_text()
    assert dot.count("->") == 7  # covering edges of the (2+1)x(1+1) grid
    assert (tmp_path / "lattice.png").exists()


def test_cli_whittaker_endo(capsys):
    rc = main(["whittaker", "--g", "Omega - q", "--endo"])
    assert rc == 0
    assert "endomorphism dimension: 1" in capsys.readouterr().out


def test_cli_whittaker_irreducible(capsys):
    rc = main(["whittaker", "--g", "Omega - q", "--irreducible"])
    assert rc == 0
    assert "irreducible: True" in capsys.readouterr().out


def test_cli_rejects_singular_eta(capsys):
    rc = main(["whittaker", "--g", "Omega - q", "--eta", "0", "--vectors"])
    assert rc == 2


def test_cli_rejects_zero_beta(capsys):
    rc = main(["classify", "--alpha", "1", "--beta", "0"])
    assert rc == 2


def test_cli_parse_error_exit(capsys):
    rc = main(["eval", "E + Q"])
    assert rc == 2
    assert "parse error" in capsys.readouterr().err
