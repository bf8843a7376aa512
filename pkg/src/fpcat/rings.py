"""Coefficient rings: Q, Z and polynomial rings Q[x1, ..., xn].

Elements are plain Python values: ``Fraction`` over Q, ``int`` over Z and
:class:`Poly` over polynomial rings.  A ring descriptor knows how to coerce,
compare, parse and print its elements.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UsageError


class Ring:
    is_field = False
    is_pid = False

    def coerce(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return self.is_zero(a - b)

    def is_unit(self, a):
        raise NotImplementedError

    def owns(self, a):
        raise NotImplementedError

    def parse(self, text):
        return _ExprParser(text, self).parse()

    def format(self, a, compact=False):
        return str(a)


@dataclass(frozen=True)
class RationalField(Ring):
    is_field = True
    is_pid = True

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.degree() > 0:
                raise UsageError(f"{x} is not a rational number")
            return x.constant()
        return Fraction(x)

    def is_unit(self, a):
        return a != 0

    def owns(self, a):
        return isinstance(a, Fraction)

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class IntegerRing(Ring):
    is_pid = True

    def coerce(self, x):
        if isinstance(x, Poly):
            x = RationalField().coerce(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise UsageError(f"{x} is not an integer")
            return x.numerator
        if isinstance(x, bool) or not isinstance(x, int):
            raise UsageError(f"{x!r} is not an integer")
        return x

    def is_unit(self, a):
        return a in (1, -1)

    def owns(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def __str__(self):
        return "Z"


MONOMIAL_ORDERS = ("degrevlex", "lex")


def _degrevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _lex_key(e):
    return e


@dataclass(frozen=True)
class PolynomialRing(Ring):
    variables: tuple
    order: str = "degrevlex"

    def __post_init__(self):
        if not self.variables:
            raise UsageError("a polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise UsageError("variable names must be distinct")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise UsageError(f"bad variable name {v!r}")
        if self.order not in MONOMIAL_ORDERS:
            raise UsageError(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def monomial_key(self):
        return _degrevlex_key if self.order == "degrevlex" else _lex_key

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.ring != self:
                if x.ring.variables != self.variables:
                    raise UsageError(f"{x} does not belong to {self}")
                return Poly(self, x.terms)
            return x
        c = Fraction(x)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name):
        i = self.variables.index(name)
        e = tuple(1 if k == i else 0 for k in range(self.nvars))
        return Poly(self, {e: Fraction(1)})

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def is_unit(self, a):
        return a.is_constant() and bool(a)

    def owns(self, a):
        return isinstance(a, Poly) and a.ring.variables == self.variables

    def format(self, a, compact=False):
        return a.format(compact)

    def __str__(self):
        return "Q[" + ",".join(self.variables) + "]"


QQ = RationalField()
ZZ = IntegerRing()


def polynomial_ring(variables, order="degrevlex"):
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",")]
    return PolynomialRing(tuple(variables), order)


def ring_of(a):
    """Descriptor of a ring element (ints are integers, Fractions are rationals)."""
    if isinstance(a, Poly):
        return a.ring
    if isinstance(a, Fraction):
        return QQ
    if isinstance(a, int) and not isinstance(a, bool):
        return ZZ
    raise UsageError(f"{a!r} is not a ring element")


def ring_eq(a, b):
    ra, rb = ring_of(a), ring_of(b)
    if ra != rb:
        raise UsageError(f"cannot compare elements of {ra} and {rb}")
    return ra.eq(a, b)


def _add_exp(e, f):
    return tuple(x + y for x, y in zip(e, f))


class Poly:
    """A polynomial with rational coefficients, stored as {exponent tuple: Fraction}."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _lift(self, other):
        if isinstance(other, Poly):
            return other.terms
        c = Fraction(other)
        return {(0,) * self.ring.nvars: c} if c else {}

    def __add__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        res = dict(self.terms)
        for e, c in self._lift(other).items():
            v = res.get(e, 0) + c
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return Poly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        res = dict(self.terms)
        for e, c in self._lift(other).items():
            v = res.get(e, 0) - c
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return Poly(self.ring, res)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            res = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = _add_exp(e1, e2)
                    v = res.get(e, 0) + c1 * c2
                    if v:
                        res[e] = v
                    else:
                        res.pop(e, None)
            return Poly(self.ring, res)
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly(self.ring, {})
            return Poly(self.ring, {e: c * other for e, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise UsageError("polynomial exponents must be nonnegative integers")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        # only division by nonzero scalars (or constant polynomials)
        if isinstance(other, Poly):
            if not other.is_constant() or not other:
                raise UsageError("polynomials can only be divided by nonzero constants")
            other = other.constant()
        if not other:
            raise ZeroDivisionError("division by zero")
        inv = 1 / Fraction(other)
        return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms and self.ring.variables == other.ring.variables
        if isinstance(other, (int, Fraction)):
            return self.terms == self._lift(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant(self):
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in strictly descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.monomial_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: self.ring.monomial_key(t[0]))

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def evaluate(self, values):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                t *= Fraction(v) ** k
            total += t
        return total

    def format(self, compact=False):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring.variables, e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((c < 0, body))
        plus, minus = ("+", "-") if compact else (" + ", " - ")
        neg, first = pieces[0]
        out = ("-" if neg else "") + first
        for neg, body in pieces[1:]:
            out += (minus if neg else plus) + body
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r})"


def format_scalar(c):
    return str(c)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _ExprParser:
    """Recursive descent parser for ring elements written in infix notation."""

    def __init__(self, text, ring, line=None, column_offset=0):
        self.text = text
        self.ring = ring
        self.line = line
        self.offset = column_offset
        self.tokens = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            kind = "num" if m.group(1) else "name" if m.group(2) else "op"
            start = m.start(m.lastindex)
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        if text[pos:].strip():
            self.fail("unexpected text", pos)
        self.i = 0

    def fail(self, msg, pos=None):
        if pos is None:
            pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ParseError(msg, self.line, self.offset + pos + 1)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            self.fail("empty expression")
        value = self.expr()
        if self.i != len(self.tokens):
            self.fail(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        kind, tok, _ = self.peek()
        sign = 1
        if kind == "op" and tok in "+-":
            self.take()
            sign = -1 if tok == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while True:
            kind, tok, _ = self.peek()
            if kind == "op" and tok in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, tok, pos = self.peek()
            if kind == "op" and tok == "*":
                self.take()
                value = value * self.factor()
            elif kind == "op" and tok == "/":
                self.take()
                d = self.factor()
                value = self.divide(value, d, pos)
            else:
                return value

    def divide(self, a, d, pos):
        ring = self.ring
        if isinstance(d, Poly):
            if not d.is_constant():
                self.fail("division by a non-constant polynomial", pos)
            d = d.constant()
        if not d:
            self.fail("division by zero", pos)
        if isinstance(ring, IntegerRing):
            if a % d:
                self.fail("inexact division over Z", pos)
            return a // d
        return a / d

    def factor(self):
        kind, tok, pos = self.peek()
        if kind == "op" and tok == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, tok, pos = self.peek()
        if kind == "op" and tok == "^":
            self.take()
            kind, tok, pos = self.take()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer", pos)
            base = base ** int(tok)
        return base

    def atom(self):
        kind, tok, pos = self.take()
        if kind == "num":
            return self.ring.coerce(int(tok))
        if kind == "name":
            if isinstance(self.ring, PolynomialRing) and tok in self.ring.variables:
                return self.ring.gen(tok)
            self.fail(f"unknown symbol {tok!r} in {self.ring}", pos)
        if kind == "op" and tok == "(":
            value = self.expr()
            kind, tok, pos = self.take()
            if tok != ")":
                self.fail("expected ')'", pos)
            return value
        self.fail(f"unexpected {tok!r}" if tok else "unexpected end of expression", pos)


def parse_ring(text, order="degrevlex"):
    s = text.strip()
    if s in ("Q", "QQ"):
        return QQ
    if s in ("Z", "ZZ"):
        return ZZ
    m = re.fullmatch(r"Q\[([^\]]*)\]", s.replace(" ", ""))
    if m:
        return polynomial_ring(m.group(1), order)
    raise UsageError(f"unknown ring {text!r}; expected Q, Z or Q[x,y,...]")
