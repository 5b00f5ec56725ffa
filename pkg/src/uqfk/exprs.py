"""Expression parser and evaluator for the CLI.

Grammar (single-pass recursive descent, explicit precedence):

    expr    :=  term  (('+' | '-') term)*
    term    :=  factor ((['*' | '/'] factor))*        # juxtaposition = '*'
    factor  :=  '-' factor | power
    power   :=  atom ('^' ['-'] INT)?
    atom    :=  INT | NAME | '(' expr ')'

so '^' binds tighter than unary minus, which binds tighter than '*'/'/',
which bind tighter than '+'/'-'; binary operators associate left.  Implicit
multiplication by juxtaposition lets the canonical renderings of elements
("F K^2 E") round-trip through the parser.

Recognized names: E, F, K, Omega (the Casimir), q, z (the primitive 2m-th
root of unity).  Exponents must be integer literals; division is only by
scalar-valued subexpressions.  Errors carry byte offsets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import Scalar, ScalarDivisionError
from .algebra import Algebra, AlgebraElement


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__("at byte %d: %s" % (pos, message))
        self.pos = pos


# ---------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class Token:
    kind: str    # INT NAME OP LPAREN RPAREN END
    text: str
    pos: int


_NAMES = {"E", "F", "K", "Omega", "q", "z"}


def tokenize(src: str):
    out = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            out.append(Token("INT", src[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            name = src[i:j]
            if name not in _NAMES:
                raise ParseError("unknown identifier %r" % name, i)
            out.append(Token("NAME", name, i))
            i = j
            continue
        if ch in "+-*/^":
            out.append(Token("OP", ch, i))
            i += 1
            continue
        if ch == "(":
            out.append(Token("LPAREN", ch, i))
            i += 1
            continue
        if ch == ")":
            out.append(Token("RPAREN", ch, i))
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, i)
    out.append(Token("END", "", n))
    return out


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.k = 0

    def peek(self) -> Token:
        return self.tokens[self.k]

    def next(self) -> Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError("expected %s, found %r" % (kind, tok.text or "end"),
                             tok.pos)
        return self.next()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError("trailing input %r" % tok.text, tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            tok = self.next()
            node = Bin(tok.text, node, self.term(), tok.pos)
        return node

    def term(self):
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "*/":
                self.next()
                node = Bin(tok.text, node, self.factor(), tok.pos)
            elif tok.kind in ("NAME", "INT", "LPAREN"):
                node = Bin("*", node, self.factor(), tok.pos)
            else:
                return node

    def factor(self):
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.next()
            return Neg(self.factor(), tok.pos)
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "^":
            self.next()
            sign = 1
            if self.peek().kind == "OP" and self.peek().text == "-":
                self.next()
                sign = -1
            num = self.peek()
            if num.kind != "INT":
                raise ParseError("exponent must be an integer literal", num.pos)
            self.next()
            return Pow(base, sign * int(num.text), tok.pos)
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "INT":
            self.next()
            return Num(int(tok.text), tok.pos)
        if tok.kind == "NAME":
            self.next()
            return Name(tok.text, tok.pos)
        if tok.kind == "LPAREN":
            self.next()
            node = self.expr()
            self.expect("RPAREN")
            return node
        raise ParseError("expected a value, found %r" % (tok.text or "end"),
                         tok.pos)


def parse(src: str):
    """Parse to an AST; raises ParseError with a byte offset on bad input."""
    return _Parser(tokenize(src)).parse()


# ---------------------------------------------------------------------------
# evaluation over U_q(f_m(K))

def _as_scalar(value):
    if isinstance(value, Scalar):
        return value
    terms = value.terms
    if not terms:
        return value.algebra.field.zero
    if set(terms) == {(0, 0, 0)}:
        return terms[(0, 0, 0)]
    return None


def evaluate_ast(node, algebra: Algebra):
    """Evaluate to a Scalar or an AlgebraElement."""
    field = algebra.field
    if isinstance(node, Num):
        return field.from_int(node.value)
    if isinstance(node, Name):
        if node.name == "q":
            return field.q
        if node.name == "z":
            return field.z
        if node.name == "E":
            return algebra.E()
        if node.name == "F":
            return algebra.F()
        if node.name == "K":
            return algebra.K()
        if node.name == "Omega":
            return algebra.casimir_element()
        raise ParseError("unknown name %r" % node.name, node.pos)
    if isinstance(node, Neg):
        return -evaluate_ast(node.operand, algebra)
    if isinstance(node, Pow):
        base = evaluate_ast(node.base, algebra)
        k = node.exponent
        if isinstance(base, Scalar):
            if base.is_zero() and k < 0:
                raise ParseError("zero to a negative power", node.pos)
            return base ** k
        if k >= 0:
            return base ** k
        terms = base.terms
        if len(terms) == 1:
            ((a, b, c), s), = terms.items()
            if a == 0 and c == 0:
                return algebra.K(b * k).scale(s ** k)
        raise ParseError("negative power of a non-invertible element", node.pos)
    if isinstance(node, Bin):
        left = evaluate_ast(node.left, algebra)
        right = evaluate_ast(node.right, algebra)
        if node.op == "/":
            den = _as_scalar(right)
            if den is None:
                raise ParseError("division only by scalar subexpressions", node.pos)
            if den.is_zero():
                raise ParseError("division by zero", node.pos)
            inv = den.inverse()
            if isinstance(left, Scalar):
                return left * inv
            return left.scale(inv)
        if node.op == "*":
            if isinstance(left, Scalar) and isinstance(right, Scalar):
                return left * right
            if isinstance(left, Scalar):
                return right.scale(left)
            if isinstance(right, Scalar):
                return left.scale(right)
            return left * right
        # + or -
        if isinstance(left, Scalar) and isinstance(right, Scalar):
            return left + right if node.op == "+" else left - right
        if isinstance(left, Scalar):
            left = algebra.scalar(left)
        if isinstance(right, Scalar):
            right = algebra.scalar(right)
        return left + right if node.op == "+" else left - right
    raise TypeError("unknown AST node %r" % (node,))


def evaluate(src: str, algebra: Algebra):
    return evaluate_ast(parse(src), algebra)


def evaluate_scalar(src: str, algebra: Algebra) -> Scalar:
    value = evaluate_ast(parse(src), algebra)
    s = value if isinstance(value, Scalar) else _as_scalar(value)
    if s is None:
        raise ParseError("expected a scalar-valued expression", 0)
    return s


# ---------------------------------------------------------------------------
# evaluation in the center (Omega a formal variable)

def evaluate_center_poly(node, algebra: Algebra) -> list:
    """Evaluate to a polynomial in Omega: ascending list of Scalars."""
    field = algebra.field

    def as_poly(value):
        return [value] if isinstance(value, Scalar) else value

    def ev(n):
        if isinstance(n, Num):
            return [field.from_int(n.value)]
        if isinstance(n, Name):
            if n.name == "Omega":
                return [field.zero, field.one]
            if n.name == "q":
                return [field.q]
            if n.name == "z":
                return [field.z]
            raise ParseError("only Omega, q, z and scalars may appear in a "
                             "center polynomial", n.pos)
        if isinstance(n, Neg):
            return [-c for c in ev(n.operand)]
        if isinstance(n, Pow):
            base = ev(n.base)
            k = n.exponent
            if len(base) == 1:
                return [base[0] ** k]
            if k < 0:
                raise ParseError("negative power of a center polynomial", n.pos)
            out = [field.one]
            for _ in range(k):
                out = _list_mul(field, out, base)
            return out
        if isinstance(n, Bin):
            left, right = ev(n.left), ev(n.right)
            if n.op == "+":
                return _list_add(field, left, right)
            if n.op == "-":
                return _list_add(field, left, [-c for c in right])
            if n.op == "*":
                return _list_mul(field, left, right)
            if n.op == "/":
                if len(right) != 1:
                    raise ParseError("division only by scalars", n.pos)
                inv = right[0].inverse()
                return [c * inv for c in left]
        raise TypeError("unknown AST node %r" % (n,))

    return ev(node)


def _list_add(field, p1, p2):
    n = max(len(p1), len(p2))
    out = []
    for i in range(n):
        a = p1[i] if i < len(p1) else field.zero
        b = p2[i] if i < len(p2) else field.zero
        out.append(a + b)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _list_mul(field, p1, p2):
    if not p1 or not p2:
        return []
    out = [field.zero] * (len(p1) + len(p2) - 1)
    for i, a in enumerate(p1):
        for j, b in enumerate(p2):
            out[i + j] = out[i + j] + a * b
    while out and out[-1].is_zero():
        out.pop()
    return out


def syntactic_center_roots(node, algebra: Algebra):
    """Read (root, multiplicity) pairs off a product of linear factors.

    Returns None when the expression is not syntactically such a product;
    the caller then falls back to expansion plus root extraction.
    """
    factors = []

    def walk(n, mult):
        if isinstance(n, Bin) and n.op == "*":
            walk(n.left, mult)
            walk(n.right, mult)
            return True
        if isinstance(n, Pow) and n.exponent >= 1:
            return walk(n.base, mult * n.exponent)
        if isinstance(n, Name) and n.name == "Omega":
            factors.append((algebra.field.zero, mult))
            return True
        if isinstance(n, Bin) and n.op in "+-":
            # match Omega +- scalar
            if isinstance(n.left, Name) and n.left.name == "Omega":
                try:
                    s = evaluate_ast(n.right, algebra)
                except ParseError:
                    return False
                if not isinstance(s, Scalar):
                    s = _as_scalar(s)
                    if s is None:
                        return False
                root = -s if n.op == "+" else s
                factors.append((root, mult))
                return True
            return False
        return False

    if walk(node, 1):
        merged = {}
        for root, mult in factors:
            key = str(root)
            if key in merged:
                merged[key] = (root, merged[key][1] + mult)
            else:
                merged[key] = (root, mult)
        return sorted(merged.values(), key=lambda rm: str(rm[0]))
    return None
