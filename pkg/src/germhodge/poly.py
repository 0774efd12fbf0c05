"""Exact multivariate polynomials over the rationals.

A polynomial is a mapping from exponent tuples to nonzero ``Fraction``
coefficients, tagged with its ordered variable names.  Instances are treated as
immutable: every operation returns a new object.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple

from .errors import ParseError, UnknownVariable

Monomial = Tuple[int, ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex_key(m: Monomial):
    return m


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; variable 0 has the highest priority."""

    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @property
    def key(self) -> Callable[[Monomial], object]:
        return _grevlex_key if self.kind == "grevlex" else _lex_key


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class Polynomial:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if len(m) != n:
                raise ValueError(f"exponent {m} does not match {n} variables")
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, variables: Sequence[str], m: Monomial, c=1) -> "Polynomial":
        return cls(variables, {tuple(m): c})

    @classmethod
    def var(cls, variables: Sequence[str], i: int) -> "Polynomial":
        m = [0] * len(variables)
        m[i] = 1
        return cls(variables, {tuple(m): 1})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError("polynomials live in different rings")
            return other
        return Polynomial.constant(self.variables, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.variables, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.variables, {mono_mul(k, m): c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # order-dependent views
    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> Tuple[Monomial, Fraction]:
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        _, c = self.leading_term(order)
        return self * (1 / c)

    # calculus and evaluation
    def diff(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                k = list(m)
                k[i] -= 1
                out[tuple(k)] = c * m[i]
        return Polynomial(self.variables, out)

    def __call__(self, *point):
        total = 0
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    def embed(self, variables: Sequence[str], index_map: Sequence[int]) -> "Polynomial":
        """Re-express in a larger ring; variable i goes to slot ``index_map[i]``."""
        n = len(variables)
        out = {}
        for m, c in self.terms.items():
            k = [0] * n
            for i, e in enumerate(m):
                k[index_map[i]] += e
            k = tuple(k)
            out[k] = out.get(k, 0) + c
        return Polynomial(variables, out)

    def substitute(self, values: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Replace variable i by ``values[i]`` (all in one common target ring)."""
        target = next(iter(values.values())).variables
        result = Polynomial.zero(target)
        powers: Dict[Tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            t = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in powers:
                        powers[(i, e)] = values[i] ** e
                    t = t * powers[(i, e)]
            result = result + t
        return result

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, vars={list(self.variables)})"


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range")
    return p.diff(i)


def weighted_degree(m: Monomial, weights: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(w) * e for w, e in zip(weights, m)), Fraction(0))


def form_level(m: Monomial, weights: Sequence[Fraction]) -> Fraction:
    """Weighted degree of the top form m*dx_0^...^dx_n (each dx_i carries w_i)."""
    return sum((Fraction(w) * (e + 1) for w, e in zip(weights, m)), Fraction(0))


def determinant(rows: list) -> Polynomial:
    """Determinant of a square matrix of polynomials by cofactor expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else Polynomial.zero(rows[0][0].variables)


def hessian_determinant(f: Polynomial) -> Polynomial:
    grads = [f.diff(i) for i in range(f.nvars)]
    return determinant([[g.diff(j) for j in range(f.nvars)] for g in grads])


# ---------------------------------------------------------------- printing

def _format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for name, e in zip(variables, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    return _format_monomial(m, variables) or "1"


def format_polynomial(p: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_terms(order)):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = _format_monomial(m, p.variables)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = mt.start(mt.lastindex)
        if mt.group(1):
            tokens.append(("int", int(mt.group(1)), start))
        elif mt.group(2):
            tokens.append(("name", mt.group(2), start))
        else:
            op = mt.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = mt.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)
        self.index = {v: k for k, v in enumerate(self.variables)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected trailing input", pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return base ** val
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "int":
            num = val
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                k2, den, p2 = self.take()
                if k2 != "int":
                    raise ParseError("denominator must be an integer literal", p2)
                if den == 0:
                    raise ParseError("zero denominator", p2)
                return Polynomial.constant(self.variables, Fraction(num, den))
            return Polynomial.constant(self.variables, num)
        if kind == "name":
            if val not in self.index:
                raise UnknownVariable(val, pos)
            return Polynomial.var(self.variables, self.index[val])
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_polynomial(text: str, variables: Iterable[str]) -> Polynomial:
    variables = tuple(variables)
    if not variables:
        raise ParseError("at least one variable is required", 0)
    if len(set(variables)) != len(variables):
        raise ParseError("duplicate variable names", 0)
    return _Parser(text, variables).parse()
