"""Command-line interface.

Subcommands:

    eval <expr>            print the canonical PBW normal form
    relcheck               verify the defining relations and Casimir centrality
    classify               classify one character point, or sweep a grid (CSV)
    irreps --dim n         enumerate the 2m simple modules of a dimension
    whittaker --g <poly>   Whittaker-module analyses (vectors, lattice, ...)
    selftest               run the library invariant suite

The session parameter m (so the ground field Q(zeta_2m)(q) and the algebra
U_q(f_m(K))) comes from --m or the environment variable UQFK_M.  Report
commands write delimited artifacts (CSV for classification sweeps, DOT for
submodule lattices, JSON for matrices) into --output-dir, and --plot renders
matplotlib figures next to them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .scalars import Scalar, field_for_m, q_number
from .algebra import (Algebra, casimir, commutator, express_in_omega,
                      is_central, center_membership, pbw_monomial_count,
                      pbw_monomials_up_to, weight_decompose, AlgebraElement)
from .hyperbolic import (CharacterPoint, classify_point, classify_report,
                         evaluate as r_evaluate, orbit_distinct,
                         theta_apply, theta_apply_stepwise, theta_xi, RElement)
from .weightmod import (WeightModule, construct_weight_module,
                        enumerate_finite_irreps, verify_relations,
                        is_irreducible_finite, are_isomorphic, casimir_scalar,
                        quotient_oracle_action)
from .whittaker import (CenterIdeal, WhittakerCharacter, WhittakerModule,
                        annihilator_slice_check, endomorphism_dimension,
                        eta_value, is_irreducible_whittaker,
                        minimal_central_annihilator, pi_omega, pi_projection,
                        reduced_action, submodule_lattice, verify_freeness,
                        whittaker_vectors)
from . import exprs


class CliError(Exception):
    """User-facing command error: reported on stderr with exit status 2."""


def _default_m() -> int:
    env = os.environ.get("UQFK_M")
    if env:
        m = int(env)
        if m < 1:
            raise CliError("UQFK_M must be a positive integer")
        return m
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uqfk", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--m", type=int, default=None,
                   help="algebra parameter m >= 1 (default: $UQFK_M or 1)")
    p.add_argument("--format", choices=("text", "json", "csv", "dot"),
                   default="text", help="output format where applicable")
    p.add_argument("--output-dir", default=".",
                   help="directory for report artifacts (CSV/DOT/JSON/PNG)")
    p.add_argument("--plot", action="store_true",
                   help="also render matplotlib figures on report paths")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="normalize an algebra expression")
    sp.add_argument("expr")

    sp = sub.add_parser("relcheck", help="verify relations and centrality")
    sp.add_argument("--max-m", type=int, default=None,
                    help="check every m up to this bound (default: just --m)")

    sp = sub.add_parser("classify", help="spectrum classification")
    sp.add_argument("--alpha", help="scalar expression for alpha")
    sp.add_argument("--beta", help="scalar expression for beta (nonzero)")
    sp.add_argument("--sweep", action="store_true",
                    help="classify a grid of beta = z^k q^e points (CSV)")
    sp.add_argument("--exp-lo", type=int, default=-3)
    sp.add_argument("--exp-hi", type=int, default=3)
    sp.add_argument("--alpha-rule", choices=("boundary", "zero", "generic"),
                    default="boundary",
                    help="sweep rule: highest-weight boundary alpha, alpha=0, "
                         "or a generic alpha")

    sp = sub.add_parser("irreps", help="enumerate finite-dimensional simples")
    sp.add_argument("--dim", type=int, required=True)

    sp = sub.add_parser("whittaker", help="Whittaker module analyses")
    sp.add_argument("--g", required=True,
                    help="monic polynomial in Omega, e.g. '(Omega - q)^2'")
    sp.add_argument("--eta", default="1", help="scalar eta(E) != 0")
    sp.add_argument("--lattice", action="store_true")
    sp.add_argument("--vectors", action="store_true")
    sp.add_argument("--endo", action="store_true")
    sp.add_argument("--irreducible", action="store_true")
    sp.add_argument("--annihilator", type=int, metavar="DEGREE",
                    help="run the truncated annihilator checks")
    sp.add_argument("--j-window", type=int, default=None)

    sub.add_parser("selftest", help="run the full invariant suite")
    return p


def _session_m(args) -> int:
    m = args.m if args.m is not None else _default_m()
    if m < 1:
        raise CliError("m must be a positive integer")
    return m


def _emit(args, name: str, text: str) -> str:
    os.makedirs(args.output_dir, exist_ok=True)
    path = os.path.join(args.output_dir, name)
    with open(path, "w") as fh:
        fh.write(text)
    return path


# ---------------------------------------------------------------------------
# subcommands

def cmd_eval(args) -> int:
    alg = Algebra.standard(_session_m(args))
    value = exprs.evaluate(args.expr, alg)
    if isinstance(value, Scalar):
        print(str(value))
    else:
        print(str(value))
    return 0


def cmd_relcheck(args) -> int:
    ms = range(1, args.max_m + 1) if args.max_m else [_session_m(args)]
    failures = []
    for m in ms:
        alg = Algebra.standard(m)
        E, F, K, Kinv = alg.E(), alg.F(), alg.K(), alg.K(-1)
        q2 = alg.field.q_power(2)
        f_elem = alg.from_laurent(alg.f)
        checks = [
            ("KE - q^2 EK", K * E - (E * K).scale(q2)),
            ("KF - q^-2 FK", K * F - (F * K).scale(alg.field.q_power(-2))),
            ("K K^-1 - 1", K * Kinv - alg.one()),
            ("EF - FE - f(K)", E * F - F * E - f_elem),
        ]
        omega = alg.casimir_element()
        from .algebra import casimir_ef_constant
        ef_form = E * F + alg.from_laurent(casimir_ef_constant(m, alg.field))
        checks.append(("Omega(FE form) - Omega(EF form)", omega - ef_form))
        for gen_name, gen in (("E", E), ("F", F), ("K", K)):
            checks.append(("[Omega, %s]" % gen_name, commutator(omega, gen)))
        for name, elem in checks:
            ok = elem.is_zero()
            print("m=%d  %-28s %s" % (m, name, "= 0" if ok else "NONZERO"))
            if not ok:
                failures.append((m, name))
    return 1 if failures else 0


def _classify_row(m, alpha, beta):
    p = CharacterPoint(alpha, beta, m)
    cls = classify_point(p)
    n = cls.n if cls.kind == "Finite1N" else ""
    return p, cls, n


def cmd_classify(args) -> int:
    m = _session_m(args)
    alg = Algebra.standard(m)
    field = alg.field
    if not args.sweep:
        if not (args.alpha and args.beta):
            raise CliError("classify needs --alpha and --beta (or --sweep)")
        alpha = exprs.evaluate_scalar(args.alpha, alg)
        beta = exprs.evaluate_scalar(args.beta, alg)
        if beta.is_zero():
            raise CliError("beta must be nonzero")
        p, cls, _ = _classify_row(m, alpha, beta)
        if cls.dimension is not None:
            print("%s dim=%d" % (cls, cls.dimension))
        else:
            print(str(cls))
        return 0

    t_inv = field.q_minus_qinv().inverse()
    rows = []
    csv_lines = ["m,alpha,beta,class,n"]
    for k in range(2 * m):
        for e in range(args.exp_lo, args.exp_hi + 1):
            beta = field.zeta_power(k) * field.q_power(e)
            b = beta ** m
            if args.alpha_rule == "boundary":
                alpha = (b - b.inverse()) * t_inv
            elif args.alpha_rule == "zero":
                alpha = field.zero
            else:
                alpha = field.one + (b - b.inverse()) * t_inv
            p, cls, n = _classify_row(m, alpha, beta)
            rows.append({"root": k, "exp": e, "cls": str(cls)})
            csv_lines.append("%d,%s,%s,%s,%s" % (m, alpha, beta, cls, n))
    csv_text = "\n".join(csv_lines) + "\n"
    if args.format == "csv" or args.plot:
        path = _emit(args, "classify_sweep_m%d_%s.csv" % (m, args.alpha_rule),
                     csv_text)
        print("wrote %s" % path)
    else:
        sys.stdout.write(csv_text)
    if args.plot:
        from .plots import render_sweep_figure
        png = os.path.join(args.output_dir,
                           "classify_sweep_m%d_%s.png" % (m, args.alpha_rule))
        render_sweep_figure(rows, png, m,
                            title="m=%d, alpha rule: %s" % (m, args.alpha_rule))
        print("wrote %s" % png)
    return 0


def cmd_irreps(args) -> int:
    m = _session_m(args)
    modules = enumerate_finite_irreps(args.dim, m)
    print("%d simple modules of dimension %d (m=%d)" % (len(modules), args.dim, m))
    payload = []
    for mod in modules:
        ok, failures = verify_relations(mod)
        irr = is_irreducible_finite(mod)
        print("  beta=%s  alpha=%s  class=%s  relations=%s  irreducible=%s"
              % (mod.point.beta, mod.point.alpha, mod.spectrum_class,
                 "ok" if ok else failures, irr))
        payload.append(mod.export_json())
    if args.format == "json":
        path = _emit(args, "irreps_m%d_dim%d.json" % (m, args.dim),
                     json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print("wrote %s" % path)
    return 0


def _parse_center_ideal(text: str, alg: Algebra) -> CenterIdeal:
    ast = exprs.parse(text)
    roots = exprs.syntactic_center_roots(ast, alg)
    if roots is not None:
        return CenterIdeal.from_roots(alg.field, roots)
    coeffs = exprs.evaluate_center_poly(ast, alg)
    if coeffs and not coeffs[-1].is_one():
        raise CliError("g must be monic (leading coefficient 1)")
    return CenterIdeal.from_coeffs(alg.field, coeffs)


def cmd_whittaker(args) -> int:
    m = _session_m(args)
    alg = Algebra.standard(m)
    eta_s = exprs.evaluate_scalar(args.eta, alg)
    if eta_s.is_zero():
        raise CliError("eta(E) must be nonzero (non-singular character)")
    eta = WhittakerCharacter(eta_s)
    g = _parse_center_ideal(args.g, alg)
    module = WhittakerModule(g, eta, m)
    print("module V(g, eta): g = %s, eta(E) = %s, m = %d" % (g, eta_s, m))
    if module.N is None:
        print("g = 0: free basis {F^i K^j w : i >= 0, j in Z}")
    else:
        print("basis {F^i K^j w : 0 <= i <= %d, j in Z}" % (module.N - 1))
        rule = " + ".join("(%s) F^%d K^%d w" % (c, i, j)
                          for (i, j), c in sorted(module.reduction.items()))
        print("F^%d w = %s" % (module.N, rule))
    did = False
    if args.vectors:
        did = True
        vecs = whittaker_vectors(module, args.j_window)
        print("Whittaker vectors: dimension %d" % len(vecs))
        for k, vec in enumerate(vecs):
            triples = ["(%d, %d, %s)" % (i, j, s) for (i, j), s in sorted(vec.items())]
            print("  v%d: %s" % (k, ", ".join(triples)))
    if args.irreducible:
        did = True
        verdict, cert = is_irreducible_whittaker(module)
        print("irreducible: %s" % verdict)
        if verdict:
            print("  reduction trace: %s" % (cert["reduction_trace"],))
        else:
            print("  witness: %s" % cert)
    if args.lattice:
        did = True
        lat = submodule_lattice(module)
        print("submodules: %d; composition length %d; summands %d"
              % (lat.count, lat.composition_length, len(lat.summands)))
        dot = lat.to_dot()
        if args.format == "dot" or args.plot:
            path = _emit(args, "lattice.dot", dot + "\n")
            print("wrote %s" % path)
        else:
            print(dot)
        if args.plot:
            from .plots import render_lattice_figure
            png = os.path.join(args.output_dir, "lattice.png")
            render_lattice_figure(lat, png)
            print("wrote %s" % png)
    if args.endo:
        did = True
        print("endomorphism dimension: %d" % endomorphism_dimension(module))
    if args.annihilator is not None:
        did = True
        ok, report = annihilator_slice_check(module, args.annihilator,
                                             args.j_window)
        print("annihilator checks (degree bound %d): %s"
              % (args.annihilator, "ok" if ok else "FAILED"))
        print("  inclusion: %s" % report.inclusion_ok)
        print("  w-slice:   span %d == nullspace %d: %s"
              % (report.w_span_dim, report.w_slice_dim, report.w_equality))
        print("  V-slice:   span %d == nullspace %d: %s"
              % (report.module_span_dim, report.module_slice_dim,
                 report.module_equality))
        return 0 if ok else 1
    if not did:
        print("(use --vectors/--lattice/--endo/--irreducible/--annihilator)")
    return 0


# ---------------------------------------------------------------------------
# selftest

def _selftest_checks():
    def scalars_axioms():
        field = field_for_m(2)
        q, z, one = field.q, field.z, field.one
        samples = [one, q, z, q + one, (q - q ** -1).inverse(),
                   z * q ** 3 - field.from_rat(2), (q ** 2 - one) / (q + one)]
        for a in samples:
            for b in samples:
                for c in samples:
                    assert ((a + b) + c - (a + (b + c))).is_zero()
                    assert (a * (b + c) - (a * b + a * c)).is_zero()
            if not a.is_zero():
                assert (a * a.inverse() - one).is_zero()
        assert (field.z ** field.N - one).is_zero()
        assert (q_number(2, 1) - (field_for_m(1).q + field_for_m(1).q_power(-1))).is_zero()

    def relations():
        for m in (1, 2):
            alg = Algebra.standard(m)
            assert (alg.K() * alg.E() - (alg.E() * alg.K()).scale(alg.field.q_power(2))).is_zero()
            assert (alg.E() * alg.F() - alg.F() * alg.E() - alg.from_laurent(alg.f)).is_zero()
            omega = alg.casimir_element()
            for gen in (alg.E(), alg.F(), alg.K()):
                assert commutator(omega, gen).is_zero()
            assert is_central(omega ** 2) and center_membership(omega ** 2)
            assert not is_central(alg.K())

    def confluence():
        alg = Algebra.standard(1)
        xs = [alg.E() + alg.F(), alg.K(-1) * alg.E(), alg.F() * alg.K() + alg.one()]
        for u in xs:
            for v in xs:
                for w in xs:
                    assert ((u * v) * w - u * (v * w)).is_zero()

    def theta_paths():
        for m in (1, 2):
            xi = RElement.xi(field_for_m(m))
            for n in range(-6, 7):
                assert theta_apply(xi, n, m) == theta_apply_stepwise(xi, n, m)
            r = theta_apply(xi ** 2, 5, m)
            assert theta_apply(r, -5, m) == xi ** 2

    def classify_examples():
        f1 = field_for_m(1)
        assert str(classify_point(CharacterPoint(f1.one, f1.q, 1))) == "Finite1N(1)"
        assert str(classify_point(CharacterPoint(f1.zero, f1.one, 1))) == "TwoSided11"
        assert str(classify_point(CharacterPoint(f1.q_power(7), f1.q_power(3), 1))) \
            == "DenseInfInf"
        assert orbit_distinct(CharacterPoint(f1.one, f1.q, 1), 20)

    def census_small():
        for m in (1, 2):
            for n in (1, 2, 3):
                mods = enumerate_finite_irreps(n, m)
                assert len(mods) == 2 * m
                for mod in mods:
                    ok, _ = verify_relations(mod)
                    assert ok and is_irreducible_finite(mod)
                for i in range(len(mods)):
                    for j in range(i + 1, len(mods)):
                        assert not are_isomorphic(mods[i], mods[j])

    def oracle_small():
        mods = enumerate_finite_irreps(2, 1)
        for mod in mods:
            for mono in pbw_monomials_up_to(2):
                u = AlgebraElement(mod.algebra, {mono: mod.field.one})
                for i in mod.indices():
                    closed = mod.act(u, mod.basis_vector(i))
                    oracle = quotient_oracle_action(u, i, mod.point,
                                                    mod.spectrum_class)
                    keys = set(closed) | set(oracle)
                    for k in keys:
                        d = closed.get(k, mod.field.zero) - oracle.get(k, mod.field.zero)
                        assert d.is_zero()

    def whittaker_core():
        m = 1
        alg = Algebra.standard(m)
        field = alg.field
        eta = WhittakerCharacter(field.one)
        pom = pi_omega(alg, eta)
        from .algebra import casimir_fe_constant
        lam = casimir_fe_constant(m, field)
        assert pom == alg.F() + alg.from_laurent(lam)
        assert reduced_action(alg.E(), pom, eta).is_zero()
        kj = alg.K(3)
        expect = kj.scale(eta.eta_E * (field.q_power(-6) - field.one))
        assert reduced_action(alg.E(), kj, eta) == expect
        a, b = field.q, field.q_power(3)
        for roots, dim in ((((a, 1),), 1), (((a, 2),), 2), (((a, 1), (b, 1)), 2)):
            mod = WhittakerModule(CenterIdeal.from_roots(field, roots), eta, m)
            assert len(whittaker_vectors(mod)) == dim
            assert minimal_central_annihilator(mod).coeffs == mod.g.coeffs
        mod1 = WhittakerModule(CenterIdeal.from_roots(field, ((a, 1),)), eta, m)
        verdict, _ = is_irreducible_whittaker(mod1)
        assert verdict
        lat = submodule_lattice(WhittakerModule(
            CenterIdeal.from_roots(field, ((a, 2), (b, 1))), eta, m))
        assert lat.count == 6 and lat.composition_length == 3
        assert len(lat.summands) == 2
        assert endomorphism_dimension(mod1) == 1
        for n in (0, 1, 2):
            assert verify_freeness(n, eta, m)

    return [
        ("scalar field axioms and roots of unity", scalars_axioms),
        ("defining relations and Casimir centrality", relations),
        ("associativity of normalized products", confluence),
        ("theta closed forms vs iteration", theta_paths),
        ("spectrum classification examples", classify_examples),
        ("finite irrep census (small)", census_small),
        ("closed-form action vs quotient oracle (small)", oracle_small),
        ("Whittaker model core identities", whittaker_core),
    ]


def cmd_selftest(args) -> int:
    failures = 0
    for name, check in _selftest_checks():
        start = time.time()
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures += 1
            print("FAIL  %-45s (%s)" % (name, exc))
            continue
        print("ok    %-45s %.2fs" % (name, time.time() - start))
    if failures:
        print("%d check(s) failed" % failures)
        return 1
    print("all checks passed")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "relcheck":
            return cmd_relcheck(args)
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "irreps":
            return cmd_irreps(args)
        if args.command == "whittaker":
            return cmd_whittaker(args)
        if args.command == "selftest":
            return cmd_selftest(args)
    except exprs.ParseError as exc:
        print("parse error %s" % exc, file=sys.stderr)
        return 2
    except (CliError, ValueError, ZeroDivisionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    raise SystemExit("unknown command")


if __name__ == "__main__":
    sys.exit(main())
