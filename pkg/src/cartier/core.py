"""Prime fields, sparse multivariate polynomials over F_p, and their text form.

A polynomial is an immutable map from exponent tuples to nonzero residues in
``[0, p)``.  Terms are kept in descending graded-reverse-lexicographic order so
that iteration, printing and hashing are reproducible.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .errors import (
    ContextMismatch,
    ExponentOverflow,
    PolynomialSyntaxError,
    UnknownVariable,
)

MAX_EXPONENT = 2**63 - 1
NEG_INF = float("-inf")

Exponent = tuple[int, ...]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class RingContext:
    """The ring F_p[x_1, ..., x_n] with named variables."""

    p: int
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")
        if not self.names:
            raise ValueError("at least one variable is required")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be distinct: {self.names}")
        for name in self.names:
            if not _IDENT.match(name):
                raise ValueError(f"invalid variable name {name!r}")

    @property
    def n(self) -> int:
        return len(self.names)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, exp: Iterable[int], c: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(exp): c})

    def var(self, name: str) -> Polynomial:
        i = self.names.index(name)
        return self.monomial(tuple(int(j == i) for j in range(self.n)))

    def gens(self) -> list[Polynomial]:
        return [self.var(name) for name in self.names]

    def parse(self, text: str) -> Polynomial:
        return parse_poly(text, self)


def check_exponent(exp: Exponent) -> Exponent:
    for a in exp:
        if a < 0:
            raise ValueError(f"negative exponent in {exp}")
        if a > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {a} exceeds 64-bit range")
    return exp


def grevlex_key(exp: Exponent):
    return (sum(exp), tuple(-a for a in reversed(exp)))


def lex_key(exp: Exponent):
    return exp


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(max, a, b))


def gcd_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(min, a, b))


def add_exp(a: Exponent, b: Exponent) -> Exponent:
    return check_exponent(tuple(x + y for x, y in zip(a, b)))


def sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class Polynomial:
    """Element of F_p[x_1..x_n]; immutable, with canonical zero-free terms."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: RingContext, terms: Mapping[Exponent, int]):
        p, n = ctx.p, ctx.n
        clean = {}
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {n}")
            c %= p
            if c:
                clean[check_exponent(exp)] = c
        self.ctx = ctx
        self._terms = _sorted_terms(clean)
        self._hash = None

    @classmethod
    def _raw(cls, ctx: RingContext, terms: dict[Exponent, int]) -> Polynomial:
        # terms already reduced mod p, zero-free and range-checked
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._terms = _sorted_terms(terms)
        obj._hash = None
        return obj

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self._terms.items())

    def monomials(self) -> list[Exponent]:
        return list(self._terms)

    def coefficient(self, exp: Exponent) -> int:
        return self._terms.get(tuple(exp), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self._terms)

    def is_monomial(self) -> bool:
        """True for a single nonzero term."""
        return len(self._terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(exp) for exp in self._terms}) <= 1

    def leading(self, key: Callable = grevlex_key) -> tuple[Exponent, int]:
        exp = max(self._terms, key=key)
        return exp, self._terms[exp]

    def monic(self, key: Callable = grevlex_key) -> Polynomial:
        if not self._terms:
            return self
        _, c = self.leading(key)
        return self.scale(pow(c, -1, self.ctx.p))

    def scale(self, c: int) -> Polynomial:
        c %= self.ctx.p
        if not c:
            return self.ctx.zero()
        p = self.ctx.p
        return Polynomial._raw(self.ctx, {e: v * c % p for e, v in self._terms.items()})

    def _check(self, other: Polynomial):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.ctx.constant(other)
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other.scale(-1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return poly_pow(self, k)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, p={self.ctx.p})"

    def __str__(self):
        return format_poly(self)


def _sorted_terms(terms: dict[Exponent, int]) -> dict[Exponent, int]:
    if len(terms) <= 1:
        return terms
    return {e: terms[e] for e in sorted(terms, key=grevlex_key, reverse=True)}


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    p = f.ctx.p
    out = dict(f._terms)
    for exp, c in g._terms.items():
        v = (out.get(exp, 0) + c) % p
        if v:
            out[exp] = v
        else:
            out.pop(exp, None)
    return Polynomial._raw(f.ctx, out)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    p = f.ctx.p
    if len(f) > len(g):
        f, g = g, f
    out: dict[Exponent, int] = {}
    gt = list(g._terms.items())
    for ea, ca in f._terms.items():
        for eb, cb in gt:
            exp = tuple(x + y for x, y in zip(ea, eb))
            out[exp] = (out.get(exp, 0) + ca * cb) % p
    for exp in out:
        check_exponent(exp)
    return Polynomial._raw(f.ctx, {e: c for e, c in out.items() if c})


def frobenius_pow(f: Polynomial, e: int) -> Polynomial:
    """Return ``f^(p^e)``: exponents scale by p^e, F_p coefficients are fixed."""
    if e < 0:
        raise ValueError("level must be non-negative")
    if e == 0:
        return f
    q = f.ctx.p**e
    return Polynomial._raw(
        f.ctx,
        {check_exponent(tuple(a * q for a in exp)): c for exp, c in f._terms.items()},
    )


def poly_pow(f: Polynomial, k: int) -> Polynomial:
    """``f^k`` via base-p digits of k: f^k = prod_i (f^{k_i})^{p^i}."""
    if k < 0:
        raise ValueError("negative power")
    p = f.ctx.p
    result = f.ctx.one()
    i = 0
    while k:
        k, digit = divmod(k, p)
        if digit:
            piece = f.ctx.one()
            for _ in range(digit):
                piece = poly_mul(piece, f)
            result = poly_mul(result, frobenius_pow(piece, i))
        i += 1
    return result


def max_norm(f: Polynomial):
    """Largest single exponent over all terms; -inf for zero."""
    if f.is_zero():
        return NEG_INF
    return max(max(exp) for exp in f._terms)


def total_degree(f: Polynomial):
    if f.is_zero():
        return NEG_INF
    return max(sum(exp) for exp in f._terms)


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return h with f = g*h; raises ValueError when g does not divide f."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p = f.ctx.p
    lg, cg = g.leading()
    inv = pow(cg, -1, p)
    rest = dict(f._terms)
    quotient: dict[Exponent, int] = {}
    gt = list(g._terms.items())
    while rest:
        lf = max(rest, key=grevlex_key)
        if not divides(lg, lf):
            raise ValueError(f"{g} does not divide {f}")
        m = sub_exp(lf, lg)
        c = rest[lf] * inv % p
        quotient[m] = c
        for exp, cc in gt:
            t = tuple(x + y for x, y in zip(exp, m))
            v = (rest.get(t, 0) - c * cc) % p
            if v:
                rest[t] = v
            else:
                rest.pop(t, None)
    return Polynomial._raw(f.ctx, quotient)


# ---------- text form ----------

def _format_monomial(exp: Exponent, names: tuple[str, ...]) -> str:
    parts = []
    for name, a in zip(names, exp):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for exp, c in f._terms.items():
        mono = _format_monomial(exp, f.ctx.names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while j < len(text) and text[j].isspace():
                j += 1
            raise PolynomialSyntaxError(f"unexpected character {text[j]!r}", j, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: RingContext, env: Mapping[str, int] | None):
        self.text = text
        self.ctx = ctx
        self.env = env
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        return PolynomialSyntaxError(message, tok[2], self.text)

    def expect(self, op: str):
        tok = self.take()
        if tok[:2] != ("op", op):
            raise self.error(f"expected '{op}'", tok)

    def parse(self) -> Polynomial:
        result = self.expr()
        if self.peek()[0] != "end":
            raise self.error("unexpected token")
        return result

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[:2] in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            k = self.exponent()
            if k < 0:
                raise self.error("negative exponent", tok)
            if k > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {k} exceeds 64-bit range at position {tok[2]}")
            if base.is_monomial():
                (exp, c), = base.items()
                return self.ctx.monomial(tuple(a * k for a in exp), pow(c, k, self.ctx.p))
            return poly_pow(base, k)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            return self.ctx.constant(value)
        if kind == "id":
            if value not in self.ctx.names:
                raise UnknownVariable(value, tok[2], self.text)
            return self.ctx.var(value)
        if tok[:2] == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error("expected a number, variable or '('", tok)

    # integer expressions used for exponents
    def exponent(self) -> int:
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            return value
        if kind == "id":
            return self.lookup(tok)
        if tok[:2] == ("op", "("):
            v = self.int_expr()
            self.expect(")")
            return v
        raise self.error("expected an exponent", tok)

    def lookup(self, tok) -> int:
        if self.env is None or tok[1] not in self.env:
            allowed = ", ".join(sorted(self.env)) if self.env else "none"
            raise PolynomialSyntaxError(
                f"unknown exponent symbol '{tok[1]}' (allowed: {allowed})", tok[2], self.text
            )
        return self.env[tok[1]]

    def int_expr(self) -> int:
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = sign * self.int_term()
        while self.peek()[:2] in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            v = self.int_term()
            acc = acc + v if op == "+" else acc - v
        return acc

    def int_term(self) -> int:
        acc = self.int_factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc *= self.int_factor()
        return acc

    def int_factor(self) -> int:
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            base = value
        elif kind == "id":
            base = self.lookup(tok)
        elif tok[:2] == ("op", "("):
            base = self.int_expr()
            self.expect(")")
        else:
            raise self.error("expected an integer", tok)
        if self.peek()[:2] == ("op", "^"):
            self.take()
            etok = self.peek()
            k = self.int_factor()
            if k < 0:
                raise self.error("negative exponent", etok)
            if k.bit_length() > 16 or abs(base) > 1 and k * abs(base).bit_length() > 4096:
                raise ExponentOverflow(f"integer power too large at position {etok[2]}")
            base = base**k
        return base


def parse_poly(text: str, ctx: RingContext, env: Mapping[str, int] | None = None) -> Polynomial:
    """Parse ``text`` into a polynomial over ``ctx``.

    Grammar: integers, declared variables, ``+ - * ^`` and parentheses, with
    ``^`` binding tightest.  When ``env`` is given, exponents may also be
    integer expressions over its symbols (e.g. ``y^(e*q)``).
    """
    return _Parser(text, ctx, env).parse()
