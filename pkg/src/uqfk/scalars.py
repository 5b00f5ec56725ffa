"""Exact arithmetic in the ground field Q(zeta_N)(q).

The field is built in three layers:

  * ``CycloNumber`` -- an element of Q[z]/(Phi_N(z)), stored as a coefficient
    vector of length deg(Phi_N) in the power basis 1, z, ..., z^(deg-1).
    Products are reduced modulo Phi_N immediately, so the representation is
    canonical and ``z**N == 1`` holds exactly.
  * ``QPoly`` -- a sparse polynomial in the formal parameter q with
    CycloNumber coefficients ({exponent: coefficient}, no zero entries).
  * ``Scalar`` -- a reduced fraction of two QPolys with monic denominator.
    Since q is a formal variable, q is transcendental over Q(zeta_N): "q is
    not a root of unity" is automatic and needs no side condition.

All rational arithmetic is arbitrary precision (gmpy2.mpq when available,
fractions.Fraction otherwise), so overflow cannot occur.  Every value here is
immutable; scalars can be shared freely between threads.

A session's field is fixed by the root-of-unity order N (N = 2m for the
algebras downstream): use ``scalar_field(N)``.
"""

from __future__ import annotations

import functools

try:
    from gmpy2 import mpq as RAT
except ImportError:  # pragma: no cover - gmpy2 is normally present
    from fractions import Fraction as RAT

RAT0 = RAT(0)
RAT1 = RAT(1)


class ScalarDivisionError(ZeroDivisionError):
    """Division by the zero scalar."""


class FieldMismatchError(ValueError):
    """Operands live in ground fields with different root-of-unity orders."""


# ---------------------------------------------------------------------------
# cyclotomic polynomials over Q (dense coefficient lists, ascending)

def _poly_divmod_exact(num, den):
    # dense rational lists; denominator monic leading coefficient assumed nonzero
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quo = [RAT0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k] / lead
        quo[k - dn] = c
        if c:
            for i, d in enumerate(den):
                num[k - dn + i] -= c * d
    while num and not num[-1]:
        num.pop()
    return quo, num


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (ascending) of the n-th cyclotomic polynomial Phi_n.

    Computed by dividing z^n - 1 by the product of Phi_d over proper divisors
    d of n; the result is monic with integer coefficients.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial requires n >= 1")
    if n == 1:
        return (RAT(-1), RAT1)
    poly = [RAT(-1)] + [RAT0] * (n - 1) + [RAT1]  # z^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


# ---------------------------------------------------------------------------
# the coefficient field Q(zeta_N)

class CycloField:
    """Arithmetic tables for Q[z]/(Phi_N); one shared instance per N."""

    def __init__(self, N: int):
        self.N = N
        self.modulus = cyclotomic_polynomial(N)
        self.deg = len(self.modulus) - 1
        # z^k in the power basis for deg <= k <= 2*deg - 2
        rows = []
        row = [-c for c in self.modulus[: self.deg]]
        rows.append(tuple(row))
        for _ in range(self.deg - 2):
            top = row[-1]
            row = [RAT0] + row[:-1]
            if top:
                row = [a + top * b for a, b in zip(row, rows[0])]
            rows.append(tuple(row))
        self._reduction = rows
        self.zero = CycloNumber(self, (RAT0,) * self.deg)
        self.one = self.from_rat(RAT1)
        gen = [RAT0] * self.deg
        if self.deg == 1:
            self.z = CycloNumber(self, tuple(self._reduction[0])) if N > 1 else self.one
        else:
            gen[1] = RAT1
            self.z = CycloNumber(self, tuple(gen))

    def from_rat(self, r) -> CycloNumber:
        coeffs = [RAT0] * self.deg
        coeffs[0] = RAT(r)
        return CycloNumber(self, tuple(coeffs))

    def zeta_power(self, k: int) -> CycloNumber:
        return self.z ** (k % self.N)

    def _reduce(self, conv):
        # conv has length <= 2*deg - 1
        out = list(conv[: self.deg]) + [RAT0] * (self.deg - len(conv[: self.deg]))
        for k in range(self.deg, len(conv)):
            c = conv[k]
            if c:
                row = self._reduction[k - self.deg]
                for i in range(self.deg):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)


@functools.lru_cache(maxsize=None)
def cyclo_field(N: int) -> CycloField:
    return CycloField(N)


class CycloNumber:
    """Element of Q(zeta_N) in the power basis; canonical and immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not a rational number: %s" % self)
        return self.coeffs[0]

    def _check(self, other):
        if self.field.N != other.field.N:
            raise FieldMismatchError(
                "mixed root orders %d and %d" % (self.field.N, other.field.N))

    def __add__(self, other):
        self._check(other)
        return CycloNumber(self.field,
                           tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return CycloNumber(self.field,
                           tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycloNumber(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = self.field.deg
        if n == 1:
            return CycloNumber(self.field, (a[0] * b[0],))
        conv = [RAT0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return CycloNumber(self.field, self.field._reduce(conv))

    def scale(self, r) -> CycloNumber:
        return CycloNumber(self.field, tuple(a * r for a in self.coeffs))

    def inverse(self) -> CycloNumber:
        if self.is_zero():
            raise ScalarDivisionError("inverse of zero in Q(zeta_%d)" % self.field.N)
        if self.is_rational():
            return self.field.from_rat(RAT1 / self.coeffs[0])
        # extended Euclid for gcd(self, Phi_N) = 1 in Q[z]
        a = list(self.coeffs)
        while a and not a[-1]:
            a.pop()
        mod = list(self.field.modulus)
        r0, r1 = mod, a
        s0, s1 = [], [RAT1]
        while True:
            quo, rem = _poly_divmod_exact(r0, r1)
            if not rem:
                break
            t = list(s0)
            # s = s0 - quo*s1
            prod = [RAT0] * (len(quo) + len(s1) - 1) if quo and s1 else []
            for i, qi in enumerate(quo):
                if qi:
                    for j, sj in enumerate(s1):
                        prod[i + j] += qi * sj
            size = max(len(t), len(prod))
            t += [RAT0] * (size - len(t))
            prod += [RAT0] * (size - len(prod))
            s = [x - y for x, y in zip(t, prod)]
            while s and not s[-1]:
                s.pop()
            r0, r1, s0, s1 = r1, rem, s1, s
        lead = r1[-1]  # r1 is the (constant) gcd since Phi_N is irreducible
        assert len(r1) == 1
        inv = [c / lead for c in s1]
        inv += [RAT0] * (self.field.deg - len(inv))
        return CycloNumber(self.field, tuple(inv[: self.field.deg]))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, CycloNumber) and self.field.N == other.field.N
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.N, self.coeffs))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                base = "z" if i == 1 else "z^%d" % i
                if c == 1:
                    parts.append(base)
                elif c == -1:
                    parts.append("-" + base)
                else:
                    parts.append("%s*%s" % (c, base))
        if not parts:
            return "0"
        return _join_signed(parts)

    def __repr__(self):
        return "CycloNumber(N=%d, %s)" % (self.field.N, self)


def _join_signed(parts):
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


# ---------------------------------------------------------------------------
# polynomials in q over Q(zeta_N)

class QPoly:
    """Sparse polynomial in q: {exponent >= 0: nonzero CycloNumber}."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: dict):
        self.field = field
        self.coeffs = coeffs

    @staticmethod
    def make(field, items) -> QPoly:
        coeffs = {}
        for e, c in items:
            if not c.is_zero():
                prev = coeffs.get(e)
                c = prev + c if prev is not None else c
                if c.is_zero():
                    coeffs.pop(e, None)
                else:
                    coeffs[e] = c
        return QPoly(field, coeffs)

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return (len(self.coeffs) == 1 and 0 in self.coeffs
                and self.coeffs[0] == self.field.one)

    def is_monomial(self):
        return len(self.coeffs) == 1

    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    def valuation(self):
        return min(self.coeffs) if self.coeffs else 0

    def leading(self) -> CycloNumber:
        return self.coeffs[self.degree()]

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            prev = out.get(e)
            s = prev + c if prev is not None else c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return QPoly(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QPoly(self.field, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return QPoly(self.field, {})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                p = c1 * c2
                prev = out.get(e)
                s = prev + p if prev is not None else p
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return QPoly(self.field, out)

    def scale(self, c: CycloNumber):
        if c.is_zero():
            return QPoly(self.field, {})
        return QPoly(self.field, {e: a * c for e, a in self.coeffs.items()})

    def shift(self, k: int):
        """Multiply by q^k (k >= -valuation so exponents stay >= 0)."""
        return QPoly(self.field, {e + k: c for e, c in self.coeffs.items()})

    def divmod(self, other):
        if other.is_zero():
            raise ScalarDivisionError("polynomial division by zero")
        if self.is_zero():
            return QPoly(self.field, {}), QPoly(self.field, {})
        dn = other.degree()
        lead_inv = other.leading().inverse()
        rem = dict(self.coeffs)
        quo = {}
        while rem:
            dr = max(rem)
            if dr < dn:
                break
            c = rem[dr] * lead_inv
            quo[dr - dn] = c
            for e, oc in other.coeffs.items():
                k = dr - dn + e
                prev = rem.get(k)
                s = prev - c * oc if prev is not None else -(c * oc)
                if s.is_zero():
                    rem.pop(k, None)
                else:
                    rem[k] = s
        return QPoly(self.field, quo), QPoly(self.field, rem)

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == self.field.one:
            return self
        return self.scale(lead.inverse())

    def evaluate_at(self, c) -> CycloNumber:
        """Value at q = c for an exact rational c."""
        out = self.field.zero
        for e, coeff in self.coeffs.items():
            out = out + coeff.scale(c ** e)
        return out

    def __eq__(self, other):
        return (isinstance(other, QPoly) and self.field.N == other.field.N
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.N, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                base = ""
            elif e == 1:
                base = "q"
            else:
                base = "q^%d" % e
            if not base:
                cs = str(c)
                parts.append(cs if c.is_rational() else "(%s)" % cs)
            elif c == self.field.one:
                parts.append(base)
            elif c == -self.field.one:
                parts.append("-" + base)
            elif c.is_rational():
                parts.append("%s*%s" % (c, base))
            else:
                parts.append("(%s)*%s" % (c, base))
        return _join_signed(parts)


def qpoly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic Euclidean gcd; remainders are made monic to tame coefficients."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    # common q-power first: cheap and frequent
    v = min(a.valuation(), b.valuation())
    a = a.shift(-a.valuation())
    b = b.shift(-b.valuation())
    if a.is_monomial() or b.is_monomial():
        g = QPoly(a.field, {0: a.field.one})
    else:
        g = _gcd_positive(a, b)
    return g.shift(v)


@functools.lru_cache(maxsize=1 << 14)
def _gcd_positive(a: QPoly, b: QPoly) -> QPoly:
    # both arguments have nonzero constant term and >= 2 terms; denominators
    # repeat heavily across a computation, so caching pays for itself
    x, y = (a, b) if a.degree() >= b.degree() else (b, a)
    while not y.is_zero():
        _, r = x.divmod(y)
        x, y = y, r.monic()
    return x.monic()


def qpoly_div_exact(a: QPoly, g: QPoly) -> QPoly:
    quo, rem = a.divmod(g)
    assert rem.is_zero()
    return quo


# ---------------------------------------------------------------------------
# the ground field Q(zeta_N)(q)

class Scalar:
    """Reduced fraction num/den of QPolys; den is monic and nonzero.

    The representation is canonical: two scalars are equal iff their
    components are equal, and normalizing twice equals normalizing once.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QPoly, den: QPoly):
        self.num = num
        self.den = den

    @staticmethod
    def make(num: QPoly, den: QPoly) -> Scalar:
        if den.is_zero():
            raise ScalarDivisionError("zero denominator")
        field = num.field
        if num.is_zero():
            return Scalar(num, QPoly(field, {0: field.one}))
        # strip the common power of q
        v = min(num.valuation(), den.valuation())
        if v:
            num = num.shift(-v)
            den = den.shift(-v)
        vn, vd = num.valuation(), den.valuation()
        if vn and vd:
            w = min(vn, vd)
            num = num.shift(-w)
            den = den.shift(-w)
        if not den.is_one():
            g = qpoly_gcd(num, den)
            if not (g.is_monomial() and g.degree() == 0):
                num, r1 = num.divmod(g)
                den, r2 = den.divmod(g)
                assert r1.is_zero() and r2.is_zero()
            lead = den.leading()
            if lead != field.one:
                inv = lead.inverse()
                num = num.scale(inv)
                den = den.scale(inv)
        return Scalar(num, den)

    @property
    def field(self) -> CycloField:
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def _check(self, other):
        if self.field.N != other.field.N:
            raise FieldMismatchError(
                "mixed root orders %d and %d" % (self.field.N, other.field.N))

    def __add__(self, other):
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        field = self.field
        if self.den == other.den:
            num = self.num + other.num
            if num.is_zero():
                return Scalar(num, QPoly(field, {0: field.one}))
            g = qpoly_gcd(num, self.den)
            if g.is_monomial() and g.degree() == 0:
                return Scalar(num, self.den)
            return Scalar.make(num, self.den)
        # reduce via the denominator gcd: with d1 = g d1', d2 = g d2' the sum
        # is (n1 d2' + n2 d1') / (g d1' d2'), and only g can still cancel
        g = qpoly_gcd(self.den, other.den)
        if g.is_monomial() and g.degree() == 0:
            num = self.num * other.den + other.num * self.den
            if num.is_zero():
                return Scalar(num, QPoly(field, {0: field.one}))
            return Scalar(num, self.den * other.den)
        d1p = qpoly_div_exact(self.den, g)
        d2p = qpoly_div_exact(other.den, g)
        num = self.num * d2p + other.num * d1p
        if num.is_zero():
            return Scalar(num, QPoly(field, {0: field.one}))
        h = qpoly_gcd(num, g)
        if not (h.is_monomial() and h.degree() == 0):
            num = qpoly_div_exact(num, h)
            g = qpoly_div_exact(g, h)
        den = g * d1p * d2p
        lead = den.leading()
        if lead != field.one:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        return Scalar(num, den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Scalar(-self.num, self.den)

    def __mul__(self, other):
        self._check(other)
        field = self.field
        if self.is_zero() or other.is_zero():
            return Scalar(QPoly(field, {}), QPoly(field, {0: field.one}))
        # cross-reduce before multiplying: both pairs end up coprime, so the
        # product needs no further gcd, only a monic denominator
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g1 = qpoly_gcd(n1, d2)
        if not (g1.is_monomial() and g1.degree() == 0):
            n1 = qpoly_div_exact(n1, g1)
            d2 = qpoly_div_exact(d2, g1)
        g2 = qpoly_gcd(n2, d1)
        if not (g2.is_monomial() and g2.degree() == 0):
            n2 = qpoly_div_exact(n2, g2)
            d1 = qpoly_div_exact(d1, g2)
        num = n1 * n2
        den = d1 * d2
        v = min(num.valuation(), den.valuation())
        if v:
            num = num.shift(-v)
            den = den.shift(-v)
        lead = den.leading()
        if lead != field.one:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        return Scalar(num, den)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise ScalarDivisionError("division by zero scalar")
        return self * Scalar.make(other.den, other.num)

    def inverse(self):
        if self.is_zero():
            raise ScalarDivisionError("inverse of zero scalar")
        return Scalar.make(self.den, self.num)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        field = self.field
        out = Scalar(QPoly(field, {0: field.one}), QPoly(field, {0: field.one}))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Scalar) and self.field.N == other.field.N
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def as_q_monomial(self):
        """Return (c, e) with self == c * q^e (c cyclotomic), or None."""
        if not self.num.is_monomial() or not self.den.is_monomial():
            return None
        en, ed = self.num.degree(), self.den.degree()
        return (self.num.coeffs[en] / self.den.coeffs[ed], en - ed)

    def as_rational(self):
        mono = self.as_q_monomial()
        if mono is None or mono[1] != 0:
            raise ValueError("not a rational constant: %s" % self)
        return mono[0].as_rational()

    def evaluate_at(self, c) -> CycloNumber:
        """Value in Q(zeta_N) at q = c (exact rational c, den(c) != 0)."""
        den = self.den.evaluate_at(c)
        if den.is_zero():
            raise ScalarDivisionError("denominator vanishes at q = %s" % c)
        return self.num.evaluate_at(c) / den

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "Scalar(N=%d, %s)" % (self.field.N, self)


class ScalarField:
    """Convenience constructors for scalars over Q(zeta_N)(q)."""

    def __init__(self, N: int):
        self.N = N
        self.cyclo = cyclo_field(N)
        one_poly = QPoly(self.cyclo, {0: self.cyclo.one})
        self.one = Scalar(one_poly, one_poly)
        self.zero = Scalar(QPoly(self.cyclo, {}), one_poly)
        self.q = self.q_power(1)
        self.z = Scalar(QPoly(self.cyclo, {0: self.cyclo.z}), one_poly)

    def q_power(self, k: int) -> Scalar:
        one = self.cyclo.one
        if k >= 0:
            return Scalar(QPoly(self.cyclo, {k: one}), QPoly(self.cyclo, {0: one}))
        return Scalar(QPoly(self.cyclo, {0: one}), QPoly(self.cyclo, {-k: one}))

    def from_rat(self, r) -> Scalar:
        c = self.cyclo.from_rat(RAT(r))
        if c.is_zero():
            return self.zero
        return Scalar(QPoly(self.cyclo, {0: c}), QPoly(self.cyclo, {0: self.cyclo.one}))

    def from_int(self, n: int) -> Scalar:
        return self.from_rat(RAT(n))

    def from_cyclo(self, c: CycloNumber) -> Scalar:
        if c.is_zero():
            return self.zero
        return Scalar(QPoly(self.cyclo, {0: c}), QPoly(self.cyclo, {0: self.cyclo.one}))

    def zeta_power(self, k: int) -> Scalar:
        return self.from_cyclo(self.cyclo.zeta_power(k))

    def q_minus_qinv(self) -> Scalar:
        return self.q - self.q_power(-1)


@functools.lru_cache(maxsize=None)
def scalar_field(N: int) -> ScalarField:
    if N < 1:
        raise ValueError("root order N must be >= 1")
    return ScalarField(N)


def field_for_m(m: int) -> ScalarField:
    """Ground field Q(zeta_2m)(q) used by U_q(f_m(K))."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return scalar_field(2 * m)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch arithmetic by name; division by zero raises ScalarDivisionError."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def q_number(n: int, m: int) -> Scalar:
    """(q^n - q^-n) / (q - q^-1) over the field for the given m."""
    field = field_for_m(m)
    return (field.q_power(n) - field.q_power(-n)) / field.q_minus_qinv()
