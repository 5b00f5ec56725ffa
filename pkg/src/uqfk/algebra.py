"""The associative algebras U_q(f(K)) in PBW normal form.

Generators E, F, K^(+-1) satisfy

    K E = q^2 E K,   K F = q^-2 F K,   K K^-1 = K^-1 K = 1,
    E F - F E = f(K)

for a Laurent polynomial f(K).  Every element is kept in the PBW normal form
sum c_{abc} F^a K^b E^c, stored as {(a, b, c): Scalar} with no zero
coefficients, so equality of elements is equality of maps.  K^-1 is not a
separate generator: the K-exponent b ranges over all integers.

Rewriting uses the closed commutation rule

    E F^a = F^a E + F^(a-1) * G_a(K),   G_a(K) = sum_{j<a} f(q^-2j K),

applied recursively (memoized per algebra) instead of generic critical-pair
completion; the system is terminating for this relation shape and the direct
recursion is auditable.  Elements are immutable values and multiplication is
pure, so independent products can be computed in parallel.

The distinguished family f_m(K) = (K^m - K^-m)/(q - q^-1) gives the quantum
group case with Casimir element

    Omega = F E + (q^2m K^m + K^-m) / ((q^2m - 1)(q - q^-1))
          = E F + (K^m + q^2m K^-m) / ((q^2m - 1)(q - q^-1)).
"""

from __future__ import annotations

import functools

from .scalars import Scalar, ScalarField, field_for_m


class AlgebraMismatchError(ValueError):
    """Operands belong to algebras with different parameters."""


class LaurentPoly:
    """Finitely supported map {K-exponent: Scalar}; no zero coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ScalarField, coeffs: dict):
        self.field = field
        self.coeffs = {b: c for b, c in coeffs.items() if not c.is_zero()}

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            s = out.get(b, self.field.zero) + c
            if s.is_zero():
                out.pop(b, None)
            else:
                out[b] = s
        return LaurentPoly(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPoly(self.field, {b: -c for b, c in self.coeffs.items()})

    def __mul__(self, other):
        out = {}
        for b1, c1 in self.coeffs.items():
            for b2, c2 in other.coeffs.items():
                b = b1 + b2
                s = out.get(b, self.field.zero) + c1 * c2
                if s.is_zero():
                    out.pop(b, None)
                else:
                    out[b] = s
        return LaurentPoly(self.field, out)

    def scale(self, s: Scalar):
        if s.is_zero():
            return LaurentPoly(self.field, {})
        return LaurentPoly(self.field, {b: c * s for b, c in self.coeffs.items()})

    def twist(self, t: int):
        """Substitute K -> q^(2t) K, i.e. coefficient c_b picks up q^(2tb)."""
        return LaurentPoly(self.field,
                           {b: c * self.field.q_power(2 * t * b)
                            for b, c in self.coeffs.items()})

    def evaluate(self, beta: Scalar) -> Scalar:
        out = self.field.zero
        for b, c in self.coeffs.items():
            out = out + c * beta ** b
        return out

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.field.N == other.field.N
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.N, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for b in sorted(self.coeffs):
            c = self.coeffs[b]
            mono = "1" if b == 0 else ("K" if b == 1 else "K^%d" % b)
            if b == 0:
                parts.append("(%s)" % c)
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append("(%s)*%s" % (c, mono))
        return " + ".join(parts)


def fm_laurent(m: int, field: ScalarField | None = None) -> LaurentPoly:
    """f_m(K) = (K^m - K^-m)/(q - q^-1)."""
    field = field or field_for_m(m)
    t = field.q_minus_qinv().inverse()
    return LaurentPoly(field, {m: t, -m: -t})


class Algebra:
    """U_q(f(K)) over a fixed ground field; holds rewriting caches."""

    def __init__(self, field: ScalarField, f: LaurentPoly, m: int | None = None):
        if f.field.N != field.N:
            raise AlgebraMismatchError("f lives over a different ground field")
        self.field = field
        self.f = f
        self.m = m
        self._ga_cache = {}
        self._ef_cache = {}
        self._casimir = None

    @staticmethod
    @functools.lru_cache(maxsize=None)
    def standard(m: int) -> Algebra:
        """U_q(f_m(K)) over Q(zeta_2m)(q)."""
        field = field_for_m(m)
        return Algebra(field, fm_laurent(m, field), m)

    @property
    def is_fm(self) -> bool:
        return self.m is not None and self.f == fm_laurent(self.m, self.field)

    def require_fm(self):
        if not self.is_fm:
            raise AlgebraMismatchError("operation requires the algebra U_q(f_m(K))")

    # -- element constructors ------------------------------------------------
    def element(self, terms: dict) -> AlgebraElement:
        return AlgebraElement(self, {mono: c for mono, c in terms.items()
                                     if not c.is_zero()})

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {(0, 0, 0): self.field.one})

    def E(self, c: int = 1) -> AlgebraElement:
        return AlgebraElement(self, {(0, 0, c): self.field.one})

    def F(self, a: int = 1) -> AlgebraElement:
        return AlgebraElement(self, {(a, 0, 0): self.field.one})

    def K(self, b: int = 1) -> AlgebraElement:
        return AlgebraElement(self, {(0, b, 0): self.field.one})

    def scalar(self, s: Scalar) -> AlgebraElement:
        return self.element({(0, 0, 0): s})

    def from_laurent(self, p: LaurentPoly) -> AlgebraElement:
        return self.element({(0, b, 0): c for b, c in p.coeffs.items()})

    # -- rewriting core --------------------------------------------------------
    def _g(self, a: int) -> LaurentPoly:
        """G_a(K) = sum_{j=0}^{a-1} f(q^-2j K)."""
        got = self._ga_cache.get(a)
        if got is None:
            got = LaurentPoly(self.field, {})
            for j in range(a):
                got = got + self.f.twist(-j)
            self._ga_cache[a] = got
        return got

    def _ef(self, c: int, a: int) -> dict:
        """Normal form of E^c F^a as {(a', b', c'): Scalar}."""
        if c == 0 or a == 0:
            return {(a, 0, c): self.field.one}
        key = (c, a)
        got = self._ef_cache.get(key)
        if got is not None:
            return got
        # E^c F^a = (E^(c-1) F^a) E + (E^(c-1) F^(a-1)) * G_a(K)
        out = {}
        for (a1, b1, c1), s in self._ef(c - 1, a).items():
            key1 = (a1, b1, c1 + 1)
            prev = out.get(key1, self.field.zero) + s
            if prev.is_zero():
                out.pop(key1, None)
            else:
                out[key1] = prev
        g = self._g(a)
        for (a1, b1, c1), s in self._ef(c - 1, a - 1).items():
            for b, gc in g.coeffs.items():
                # E^c1 K^b = q^(-2*c1*b) K^b E^c1
                coeff = s * gc * self.field.q_power(-2 * c1 * b)
                key1 = (a1, b1 + b, c1)
                prev = out.get(key1, self.field.zero) + coeff
                if prev.is_zero():
                    out.pop(key1, None)
                else:
                    out[key1] = prev
        self._ef_cache[key] = out
        return out

    def _mul_monomials(self, m1, m2) -> dict:
        """Normal form of (F^a1 K^b1 E^c1)(F^a2 K^b2 E^c2)."""
        a1, b1, c1 = m1
        a2, b2, c2 = m2
        out = {}
        core = self._ef(c1, a2)
        for (a, b, c), s in core.items():
            # move K^b1 left of F^a and K^b2 left of E^(c+c2)
            coeff = s * self.field.q_power(-2 * a * b1 - 2 * c * b2)
            key = (a1 + a, b1 + b + b2, c + c2)
            prev = out.get(key, self.field.zero) + coeff
            if prev.is_zero():
                out.pop(key, None)
            else:
                out[key] = prev
        return out

    # -- casimir ---------------------------------------------------------------
    def casimir_element(self) -> AlgebraElement:
        """Omega in PBW normal form (requires f = f_m)."""
        if self._casimir is None:
            self.require_fm()
            lam = casimir_fe_constant(self.m, self.field)
            terms = {(1, 0, 1): self.field.one}
            for b, c in lam.coeffs.items():
                terms[(0, b, 0)] = c
            self._casimir = self.element(terms)
        return self._casimir


def casimir_fe_constant(m: int, field: ScalarField | None = None) -> LaurentPoly:
    """lambda(K) with Omega = FE + lambda(K): (q^2m K^m + K^-m)/((q^2m-1)(q-q^-1))."""
    field = field or field_for_m(m)
    d = ((field.q_power(2 * m) - field.one) * field.q_minus_qinv()).inverse()
    return LaurentPoly(field, {m: field.q_power(2 * m) * d, -m: d})


def casimir_ef_constant(m: int, field: ScalarField | None = None) -> LaurentPoly:
    """mu(K) with Omega = EF + mu(K): (K^m + q^2m K^-m)/((q^2m-1)(q-q^-1))."""
    field = field or field_for_m(m)
    d = ((field.q_power(2 * m) - field.one) * field.q_minus_qinv()).inverse()
    return LaurentPoly(field, {m: d, -m: field.q_power(2 * m) * d})


class AlgebraElement:
    """Finitely supported Scalar combination of PBW monomials F^a K^b E^c."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def _check(self, other):
        if other.algebra is not self.algebra and (
                other.algebra.field.N != self.algebra.field.N
                or other.algebra.f != self.algebra.f):
            raise AlgebraMismatchError("elements of different algebras")

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, self.algebra.field.zero) + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, s: Scalar) -> AlgebraElement:
        if s.is_zero():
            return self.algebra.zero()
        return AlgebraElement(self.algebra,
                              {m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        alg = self.algebra
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for mono, s in alg._mul_monomials(m1, m2).items():
                    v = out.get(mono, alg.field.zero) + c12 * s
                    if v.is_zero():
                        out.pop(mono, None)
                    else:
                        out[mono] = v
        return AlgebraElement(alg, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of algebra elements")
        out = self.algebra.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def commutator(self, other) -> AlgebraElement:
        return self * other - other * self

    def filtration_degree(self) -> int:
        """max(a + |b| + c) over the support; -1 for zero."""
        if not self.terms:
            return -1
        return max(a + abs(b) + c for (a, b, c) in self.terms)

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement)
                and self.algebra.field.N == other.algebra.field.N
                and self.algebra.f == other.algebra.f
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            a, b, c = mono
            pieces = []
            if a:
                pieces.append("F" if a == 1 else "F^%d" % a)
            if b:
                pieces.append("K" if b == 1 else "K^%d" % b)
            if c:
                pieces.append("E" if c == 1 else "E^%d" % c)
            mono_s = " ".join(pieces) if pieces else "1"
            coeff = self.terms[mono]
            if coeff.is_one() and pieces:
                parts.append(mono_s)
            elif pieces:
                parts.append("(%s) * %s" % (coeff, mono_s))
            else:
                parts.append("(%s)" % coeff)
        return " + ".join(parts)

    def __repr__(self):
        return "AlgebraElement(%s)" % self


# ---------------------------------------------------------------------------
# module-level operations mirroring the algebra API

def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    return u * v


def commutator(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    return u * v - v * u


def casimir(m: int) -> AlgebraElement:
    """The Casimir element of U_q(f_m(K)) in PBW normal form."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return Algebra.standard(m).casimir_element()


class WeightDecomposition:
    """Split of an element into components u_n with K u_n = q^2n u_n K."""

    def __init__(self, components: dict):
        self.components = components  # {n: AlgebraElement}

    def component(self, n: int) -> AlgebraElement:
        for k, u in self.components.items():
            if k == n:
                return u
        raise KeyError(n)

    def weights(self):
        return sorted(self.components)

    def total(self) -> AlgebraElement:
        items = list(self.components.values())
        out = items[0].algebra.zero() if items else None
        for u in items:
            out = out + u
        return out


def weight_decompose(u: AlgebraElement) -> WeightDecomposition:
    """Group PBW terms by weight n = c - a (so K u_n = q^2n u_n K)."""
    buckets = {}
    for (a, b, c), coeff in u.terms.items():
        n = c - a
        buckets.setdefault(n, {})[(a, b, c)] = coeff
    return WeightDecomposition({n: AlgebraElement(u.algebra, t)
                                for n, t in buckets.items()})


class OmegaPolynomial:
    """Polynomial in the Casimir with Laurent-in-K coefficients.

    coeffs[p] is the LaurentPoly multiplying Omega^p; substituting the
    Casimir's normal form back reproduces the original element.
    """

    def __init__(self, algebra: Algebra, coeffs: list):
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.algebra = algebra
        self.coeffs = coeffs

    def degree(self):
        return len(self.coeffs) - 1

    def substitute(self) -> AlgebraElement:
        omega = self.algebra.casimir_element()
        out = self.algebra.zero()
        power = self.algebra.one()
        for p, lp in enumerate(self.coeffs):
            if p:
                power = power * omega
            if not lp.is_zero():
                out = out + self.algebra.from_laurent(lp) * power
        return out

    def k_exponents(self):
        out = set()
        for lp in self.coeffs:
            out.update(lp.coeffs)
        return sorted(out)

    def is_constant_in_k(self) -> bool:
        return all(set(lp.coeffs) <= {0} for lp in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for p, lp in enumerate(self.coeffs):
            if lp.is_zero():
                continue
            if p == 0:
                parts.append("(%s)" % lp)
            elif p == 1:
                parts.append("(%s) * Omega" % lp)
            else:
                parts.append("(%s) * Omega^%d" % (lp, p))
        return " + ".join(parts)


def _omega_poly_mul(field, p1: list, p2: list) -> list:
    out = [LaurentPoly(field, {}) for _ in range(len(p1) + len(p2) - 1)]
    for i, a in enumerate(p1):
        if a.is_zero():
            continue
        for j, b in enumerate(p2):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * b
    return out


def express_in_omega(u: AlgebraElement, m: int | None = None,
                     check: bool = True) -> OmegaPolynomial:
    """Rewrite a weight-0 element as sum_i f_i(Omega) K^i.

    Each monomial F^a K^b E^a equals q^(2ab) * prod_{k=1..a} theta^-k(xi) * K^b
    inside the commutative weight-0 subalgebra, and xi = EF substitutes to
    Omega - mu(K).  Raises if the input has terms of nonzero weight; when
    ``check`` is set, the result is substituted back and compared with the
    input exactly.
    """
    alg = u.algebra
    alg.require_fm()
    if m is not None and m != alg.m:
        raise AlgebraMismatchError("m=%d does not match this algebra (m=%d)" % (m, alg.m))
    field = alg.field
    mu = casimir_ef_constant(alg.m, field)
    one_lp = LaurentPoly(field, {0: field.one})

    @functools.lru_cache(maxsize=None)
    def fe_power(a: int):
        # F^a E^a = prod_{k=1..a} (xi - c_k),  c_k = sum_{j<k} f(q^2j K); xi = Omega - mu
        if a == 0:
            return (one_lp,)
        prev = list(fe_power(a - 1))
        c_k = LaurentPoly(field, {})
        for j in range(a):
            c_k = c_k + alg.f.twist(j)
        factor = [-(mu + c_k), one_lp]  # (Omega - mu - c_k)
        return tuple(_omega_poly_mul(field, prev, factor))

    coeffs = [LaurentPoly(field, {})]
    for (a, b, c), s in u.terms.items():
        if c != a:
            raise ValueError("element has weight %+d terms; "
                             "express_in_omega needs weight 0" % (c - a))
        k_shift = LaurentPoly(field, {b: s * field.q_power(2 * a * b)})
        contrib = [lp * k_shift for lp in fe_power(a)]
        if len(contrib) > len(coeffs):
            coeffs += [LaurentPoly(field, {})] * (len(contrib) - len(coeffs))
        for p, lp in enumerate(contrib):
            coeffs[p] = coeffs[p] + lp
    out = OmegaPolynomial(alg, coeffs)
    if check and not (out.substitute() - u).is_zero():
        raise AssertionError("express_in_omega reconstruction failed")
    return out


def is_central(u: AlgebraElement) -> bool:
    """True iff u commutes with E, F and K."""
    alg = u.algebra
    for gen in (alg.E(), alg.F(), alg.K()):
        if not u.commutator(gen).is_zero():
            return False
    return True


def center_membership(u: AlgebraElement) -> bool:
    """True iff u is a polynomial in the Casimir.

    Commuting with K forces weight 0; writing u = sum f_i(Omega) K^i,
    commuting with E forces every K-exponent i != 0 to vanish.
    """
    if u.is_zero():
        return True
    if any(c != a for (a, b, c) in u.terms):
        return False
    if not is_central(u):
        return False
    return express_in_omega(u).is_constant_in_k()


def pbw_monomial_count(n: int) -> int:
    """Number of PBW monomials with a + |b| + c <= n: (n+1)(n+2)(2n+3)/6.

    The growth is exactly cubic, which is the monomial-count witness for the
    algebra having Gelfand-Kirillov dimension 3.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return (n + 1) * (n + 2) * (2 * n + 3) // 6


def pbw_monomials_up_to(n: int):
    """All (a, b, c) with a + |b| + c <= n, in lexicographic order."""
    out = []
    for a in range(n + 1):
        for b in range(-(n - a), n - a + 1):
            for c in range(n - a - abs(b) + 1):
                out.append((a, b, c))
    out.sort()
    return out
