"""Irreducible weight representations of U_q(f_m(K)).

A classified character point (alpha, beta) yields action data on a basis
indexed by integers:

    K v_i = q^-2i beta v_i,    F v_i = v_(i+1),    E v_i = e(i) v_(i-1),

with e(i) the value of theta^(i-1)(xi) at the point.  The index set depends
on the class: {0..n} for Finite1N(n), {0} for TwoSided11, the naturals for
HighestWeight1Inf, the non-positive integers for LowestWeightInf1 (same
uniform formulas, mirrored index set), and all of Z for DenseInfInf.  In the
classes with a top index, F kills the top vector; in the classes with a
bottom index, e(bottom) = 0 holds automatically, so E kills the bottom
vector.  Infinite modules are lazy: coefficients are computed on demand and
a finite truncation window is only used for verification and matrix export.

``quotient_oracle_action`` recomputes the action of the finite modules a
second, independent way: u . F^i w is put in PBW normal form and reduced
modulo the defining left ideal (E acts by zero on the cyclic vector, F^(n+1)
is killed, K-Laurent parts evaluate at beta).  Tests drive the closed-form
action against this oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import Scalar, field_for_m
from .algebra import (Algebra, AlgebraElement, casimir_fe_constant, fm_laurent)
from .hyperbolic import (CharacterPoint, SpectrumClass, classify_point,
                         evaluate, theta_xi)


class WeightModule:
    """Basis-indexed action data for one of the weight-module families."""

    def __init__(self, spectrum_class: SpectrumClass, point: CharacterPoint,
                 truncation: int = 6, e_override: dict | None = None):
        if truncation < 1:
            raise ValueError("truncation must be >= 1")
        self.spectrum_class = spectrum_class
        self.point = point
        self.m = point.m
        self.field = point.field
        self.algebra = Algebra.standard(point.m)
        self.truncation = truncation
        self._e_cache = dict(e_override) if e_override else {}
        kind = spectrum_class.kind
        if kind == "TwoSided11":
            self.bottom, self.top = 0, 0
        elif kind == "Finite1N":
            self.bottom, self.top = 0, spectrum_class.n
        elif kind == "HighestWeight1Inf":
            self.bottom, self.top = 0, None
        elif kind == "LowestWeightInf1":
            self.bottom, self.top = None, 0
        else:
            self.bottom, self.top = None, None

    # -- bookkeeping -----------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.bottom is not None and self.top is not None

    @property
    def dimension(self) -> int | None:
        if self.is_finite:
            return self.top - self.bottom + 1
        return None

    def indices(self) -> list:
        """Basis indices: exact for finite classes, a window otherwise."""
        if self.is_finite:
            return list(range(self.bottom, self.top + 1))
        if self.bottom is not None:
            return list(range(self.bottom, self.bottom + self.truncation + 1))
        if self.top is not None:
            return list(range(self.top - self.truncation, self.top + 1))
        return list(range(-self.truncation, self.truncation + 1))

    def index_set_description(self) -> str:
        if self.is_finite:
            return "{%d..%d}" % (self.bottom, self.top)
        if self.bottom == 0:
            return "N"
        if self.top == 0:
            return "-N"
        return "Z"

    # -- action data -------------------------------------------------------------
    def k_eigen(self, i: int) -> Scalar:
        return self.field.q_power(-2 * i) * self.point.beta

    def e_coeff(self, i: int) -> Scalar:
        """Coefficient in E v_i = e(i) v_(i-1): theta^(i-1)(xi) at the point."""
        got = self._e_cache.get(i)
        if got is None:
            got = evaluate(theta_xi(i - 1, self.m), self.point)
            self._e_cache[i] = got
        return got

    def act_monomial(self, mono, i: int) -> dict:
        """Action of F^a K^b E^c on v_i as {index: Scalar}."""
        a, b, c = mono
        coeff = self.field.one
        idx = i
        for _ in range(c):
            coeff = coeff * self.e_coeff(idx)
            if coeff.is_zero():
                return {}
            idx -= 1
        if b:
            coeff = coeff * self.k_eigen(idx) ** b
        if a:
            if self.top is not None and idx + a > self.top:
                return {}
            idx += a
        return {idx: coeff}

    def act(self, u: AlgebraElement, vec: dict) -> dict:
        """Action of an algebra element on {index: Scalar}."""
        out = {}
        for mono, s in u.terms.items():
            for i, v in vec.items():
                for j, w in self.act_monomial(mono, i).items():
                    t = out.get(j, self.field.zero) + s * v * w
                    if t.is_zero():
                        out.pop(j, None)
                    else:
                        out[j] = t
        return out

    def basis_vector(self, i: int) -> dict:
        return {i: self.field.one}

    # -- matrices ------------------------------------------------------------------
    def matrices(self, window: list | None = None) -> dict:
        """Generator matrices over the (finite or truncated) basis."""
        idx = window if window is not None else self.indices()
        pos = {i: r for r, i in enumerate(idx)}
        out = {}
        for name, u in (("E", self.algebra.E()), ("F", self.algebra.F()),
                        ("K", self.algebra.K()), ("K^-1", self.algebra.K(-1))):
            rows = [[self.field.zero] * len(idx) for _ in idx]
            for col, i in enumerate(idx):
                for j, v in self.act(u, self.basis_vector(i)).items():
                    if j in pos:
                        rows[pos[j]][col] = v
            out[name] = GeneratorMatrix(name, tuple(tuple(r) for r in rows))
        return out

    def export_json(self, window: list | None = None) -> dict:
        """Stable JSON layout: metadata plus row-major matrices of scalar strings."""
        idx = window if window is not None else self.indices()
        mats = self.matrices(idx)
        return {
            "m": self.m,
            "class": str(self.spectrum_class),
            "alpha": str(self.point.alpha),
            "beta": str(self.point.beta),
            "dimension": self.dimension,
            "basis_indices": list(idx),
            "k_eigenvalues": [str(self.k_eigen(i)) for i in idx],
            "matrices": {name: [[str(x) for x in row] for row in gm.rows]
                         for name, gm in mats.items()},
        }

    def __str__(self):
        return "WeightModule(%s at %s)" % (self.spectrum_class, self.point)


@dataclass(frozen=True)
class GeneratorMatrix:
    generator: str
    rows: tuple

    def __getitem__(self, rc):
        return self.rows[rc[0]][rc[1]]


def construct_weight_module(p: CharacterPoint, truncation: int = 6) -> WeightModule:
    """Classify the point and build the corresponding weight module."""
    cls = classify_point(p)
    return WeightModule(cls, p, truncation=truncation)


def quotient_oracle_action(u: AlgebraElement, i: int, p: CharacterPoint,
                           spectrum_class: SpectrumClass) -> dict:
    """Action of u on F^i w in the finite quotient, by left-ideal reduction.

    Independent of the closed-form module action: u * F^i is normalized in
    the PBW engine and reduced term by term (monomials with an E factor die
    on the cyclic vector, F-powers beyond the top die, K-powers evaluate at
    beta).  Only valid for the finite classes.
    """
    if not spectrum_class.is_finite:
        raise ValueError("the quotient oracle only covers finite classes")
    n_top = 0 if spectrum_class.kind == "TwoSided11" else spectrum_class.n
    if not (0 <= i <= n_top):
        raise ValueError("basis index %d outside 0..%d" % (i, n_top))
    alg = u.algebra
    alg.require_fm()
    if alg.m != p.m:
        raise ValueError("algebra and point disagree on m")
    prod = u * alg.F(i) if i else u
    out = {}
    for (a, b, c), s in prod.terms.items():
        if c > 0 or a > n_top:
            continue
        v = out.get(a, p.field.zero) + s * p.beta ** b
        if v.is_zero():
            out.pop(a, None)
        else:
            out[a] = v
    return out


def verify_relations(module: WeightModule):
    """Check the defining relations on every (windowed) basis vector.

    Returns (ok, failures); each failure names the index and the relation.
    """
    alg = module.algebra
    E, F, K, Kinv = alg.E(), alg.F(), alg.K(), alg.K(-1)
    f = fm_laurent(module.m, module.field)
    q2 = module.field.q_power(2)
    failures = []

    def scaled(vec, s):
        return {i: v * s for i, v in vec.items()}

    def diff_zero(v1, v2):
        keys = set(v1) | set(v2)
        return all((v1.get(k, module.field.zero) - v2.get(k, module.field.zero)).is_zero()
                   for k in keys)

    for i in module.indices():
        v = module.basis_vector(i)
        ke = module.act(K, module.act(E, v))
        ek = module.act(E, module.act(K, v))
        if not diff_zero(ke, scaled(ek, q2)):
            failures.append((i, "KE = q^2 EK"))
        kf = module.act(K, module.act(F, v))
        fk = module.act(F, module.act(K, v))
        if not diff_zero(scaled(kf, q2), fk):
            failures.append((i, "KF = q^-2 FK"))
        ef = module.act(E, module.act(F, v))
        fe = module.act(F, module.act(E, v))
        lhs = {j: ef.get(j, module.field.zero) - fe.get(j, module.field.zero)
               for j in set(ef) | set(fe)}
        rhs = scaled(v, f.evaluate(module.k_eigen(i)))
        if not diff_zero(lhs, rhs):
            failures.append((i, "EF - FE = f(K)"))
        if not diff_zero(module.act(K, module.act(Kinv, v)), v):
            failures.append((i, "K K^-1 = 1"))
    return (not failures), failures


def is_irreducible_finite(module: WeightModule) -> bool:
    """A finite weight module is simple iff every interior E-coefficient is nonzero.

    The K-spectrum is multiplicity free, so any submodule is spanned by a
    subset of basis vectors; e(i) != 0 for 1 <= i <= n rules all such
    subsets out.  (Tests confirm the equivalence against an exhaustive
    coordinate-subspace search in small dimension.)
    """
    if not module.is_finite:
        raise ValueError("is_irreducible_finite needs a finite module")
    return all(not module.e_coeff(i).is_zero()
               for i in range(module.bottom + 1, module.top + 1))


def invariant_coordinate_subspaces(module: WeightModule):
    """All proper nonzero invariant coordinate subspaces (brute force).

    Exhaustive over subsets of basis indices; exponential, intended for the
    dim <= 4 cross-check of is_irreducible_finite.
    """
    if not module.is_finite:
        raise ValueError("finite modules only")
    idx = module.indices()
    found = []
    for mask in range(1, 2 ** len(idx) - 1):
        subset = {idx[k] for k in range(len(idx)) if mask >> k & 1}
        ok = True
        for i in subset:
            if i + 1 <= module.top and i + 1 not in subset:  # F-closure
                ok = False
                break
            if not module.e_coeff(i).is_zero() and i - 1 >= module.bottom \
                    and i - 1 not in subset:                 # E-closure
                ok = False
                break
        if ok:
            found.append(sorted(subset))
    return found


def enumerate_finite_irreps(n: int, m: int, truncation: int = 6):
    """The 2m pairwise non-isomorphic simple modules of dimension n.

    beta runs over zeta q^(n-1) for the 2m-th roots of unity zeta (so that
    beta^m = +-q^(m(n-1))), and alpha is forced by the highest-weight
    boundary condition alpha = (beta^m - beta^-m)/(q - q^-1).
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    field = field_for_m(m)
    t = field.q_minus_qinv()
    out = []
    for k in range(2 * m):
        beta = field.zeta_power(k) * field.q_power(n - 1)
        b = beta ** m
        alpha = (b - b.inverse()) / t
        p = CharacterPoint(alpha, beta, m)
        cls = classify_point(p)
        if cls.dimension != n:
            raise AssertionError("expected a dimension-%d class at %s, got %s"
                                 % (n, p, cls))
        out.append(WeightModule(cls, p, truncation=truncation))
    return out


def casimir_scalar(module: WeightModule) -> Scalar:
    """The scalar by which the Casimir acts; raises if the action is not scalar.

    Omega = FE + lambda(K) acts on v_i by e(i) + lambda(q^-2i beta); the
    value must be independent of i.
    """
    lam = casimir_fe_constant(module.m, module.field)
    values = []
    for i in module.indices():
        values.append(module.e_coeff(i) + lam.evaluate(module.k_eigen(i)))
    first = values[0]
    for v in values[1:]:
        if not (v - first).is_zero():
            raise ValueError("Casimir does not act by a scalar "
                             "(construction bug or corrupted module)")
    return first


def are_isomorphic(m1: WeightModule, m2: WeightModule) -> bool:
    """Complete-invariant test: dimension, K-spectrum multiset, Casimir scalar.

    Valid for these multiplicity-free finite weight modules; the invariants
    determine the module up to isomorphism.
    """
    if not (m1.is_finite and m2.is_finite):
        raise ValueError("isomorphism test covers finite modules only")
    if m1.m != m2.m or m1.dimension != m2.dimension:
        return False
    spec1 = sorted(str(m1.k_eigen(i)) for i in m1.indices())
    spec2 = sorted(str(m2.k_eigen(i)) for i in m2.indices())
    if spec1 != spec2:
        return False
    return (casimir_scalar(m1) - casimir_scalar(m2)).is_zero()
