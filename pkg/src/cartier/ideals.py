"""Ideals of F_p[x_1..x_n]: Groebner bases, colon ideals, Frobenius powers.

Monomial ideals never touch Buchberger: colon, intersection, bracket power,
membership and minimal generators all have exact combinatorial versions here,
which also serve as an independent cross-check of the Groebner route.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import (
    Exponent,
    Polynomial,
    RingContext,
    add_exp,
    divide_exact,
    divides,
    frobenius_pow,
    gcd_exp,
    grevlex_key,
    lcm_exp,
    lex_key,
    parse_poly,
    sub_exp,
    total_degree,
)
from .errors import CartierError, GroebnerBudgetExceeded, PolynomialSyntaxError, UnsupportedIdealClass

#: Maximum number of S-polynomial reductions per Groebner basis computation.
DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class MonomialOrder:
    """``lex`` or ``grevlex``; ``priority`` lists variable indices, largest first."""

    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.priority is not None:
            object.__setattr__(self, "priority", tuple(self.priority))
            if sorted(self.priority) != list(range(len(self.priority))):
                raise ValueError("priority must be a permutation of variable indices")

    def key(self) -> Callable[[Exponent], object]:
        base = lex_key if self.kind == "lex" else grevlex_key
        perm = self.priority
        if perm is None:
            return base
        return lambda exp: base(tuple(exp[i] for i in perm))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# ---------- dict-level kernels ----------

def _lead(f: dict, key) -> Exponent:
    return max(f, key=key)


def _sub_multiple(f: dict, g: dict, shift: Exponent, c: int, p: int):
    """f -= c * x^shift * g, in place."""
    for exp, cg in g.items():
        t = tuple(a + b for a, b in zip(exp, shift))
        v = (f.get(t, 0) - c * cg) % p
        if v:
            f[t] = v
        else:
            f.pop(t, None)


def _monic(f: dict, key, p: int) -> dict:
    c = f[_lead(f, key)]
    if c == 1:
        return f
    inv = pow(c, -1, p)
    return {e: v * inv % p for e, v in f.items()}


def _reduce(f: dict, basis: Sequence[tuple[Exponent, dict]], key, p: int) -> dict:
    """Full remainder of f on division by monic ``basis`` (pairs of lead, poly)."""
    f = dict(f)
    rem = {}
    while f:
        lm = _lead(f, key)
        c = f[lm]
        for glm, g in basis:
            if divides(glm, lm):
                _sub_multiple(f, g, sub_exp(lm, glm), c, p)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(f: dict, flm: Exponent, g: dict, glm: Exponent, p: int) -> dict:
    lcm = lcm_exp(flm, glm)
    s: dict = {}
    _sub_multiple(s, f, sub_exp(lcm, flm), -1, p)
    _sub_multiple(s, g, sub_exp(lcm, glm), 1, p)
    return s


def _buchberger(gens: Iterable[dict], key, p: int, budget: int) -> list[dict]:
    """Reduced Groebner basis of monic-normalized dict polynomials."""
    G: list[dict] = []
    leads: list[Exponent] = []
    for g in gens:
        if g:
            g = _monic(g, key, p)
            G.append(g)
            leads.append(_lead(g, key))
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    reductions = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(lcm_exp(leads[ij[0]], leads[ij[1]])), ij))
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        if not any(a and b for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        lcm = lcm_exp(li, lj)
        if any(
            k != i and k != j
            and divides(leads[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue  # chain criterion
        reductions += 1
        if reductions > budget:
            raise GroebnerBudgetExceeded(
                f"Groebner basis computation exceeded {budget} S-pair reductions"
            )
        h = _reduce(_spoly(G[i], li, G[j], lj, p), list(zip(leads, G)), key, p)
        if h:
            h = _monic(h, key, p)
            new = len(G)
            G.append(h)
            leads.append(_lead(h, key))
            pairs.update((k, new) for k in range(new))
    return _interreduce(G, leads, key, p)


def _interreduce(G: list[dict], leads: list[Exponent], key, p: int) -> list[dict]:
    keep = []
    for i, li in enumerate(leads):
        if any(
            divides(lk, li) and (lk != li or k < i)
            for k, lk in enumerate(leads)
            if k != i
        ):
            continue
        keep.append(i)
    minimal = [(leads[i], G[i]) for i in keep]
    out = []
    for idx, (lm, g) in enumerate(minimal):
        others = [pair for k, pair in enumerate(minimal) if k != idx]
        tail = dict(g)
        c = tail.pop(lm)
        r = _reduce(tail, others, key, p)
        r[lm] = c
        out.append(_monic(r, key, p))
    out.sort(key=lambda f: key(_lead(f, key)), reverse=True)
    return out


# ---------- monomial ideal combinatorics ----------

def minimalize(exps: Iterable[Exponent]) -> list[Exponent]:
    """Minimal elements under divisibility, sorted ascending in grevlex."""
    out: list[Exponent] = []
    for m in sorted(set(exps), key=lambda e: (sum(e), grevlex_key(e))):
        if not any(divides(g, m) for g in out):
            out.append(m)
    return sorted(out, key=grevlex_key)


def monomial_member(m: Exponent, gens: Iterable[Exponent]) -> bool:
    return any(divides(g, m) for g in gens)


def monomial_colon(gens: Iterable[Exponent], m: Exponent) -> list[Exponent]:
    """(I : x^m) for monomial I: generated by g / gcd(g, m)."""
    return minimalize(sub_exp(g, gcd_exp(g, m)) for g in gens)


def monomial_intersection(a: Iterable[Exponent], b: Iterable[Exponent]) -> list[Exponent]:
    b = list(b)
    return minimalize(lcm_exp(x, y) for x in a for y in b)


# ---------- the Ideal type ----------

class Ideal:
    """Finitely generated ideal with a lazily cached reduced Groebner basis.

    Zero generators are dropped; the zero ideal has no generators.
    """

    def __init__(self, generators: Iterable[Polynomial], ctx: RingContext | None = None):
        gens = list(generators)
        if ctx is None:
            if not gens:
                raise ValueError("a ring context is required for an empty generator list")
            ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise CartierError("generators live in different rings")
        self.ctx = ctx
        self.generators: tuple[Polynomial, ...] = tuple(g for g in gens if not g.is_zero())
        self._gb: dict[MonomialOrder, list[Polynomial]] = {}
        self._lock = threading.Lock()
        self._monomial: bool | None = None

    @classmethod
    def unit(cls, ctx: RingContext) -> Ideal:
        return cls([ctx.one()], ctx)

    @classmethod
    def zero(cls, ctx: RingContext) -> Ideal:
        return cls([], ctx)

    @classmethod
    def maximal(cls, ctx: RingContext) -> Ideal:
        return cls(ctx.gens(), ctx)

    @classmethod
    def from_monomials(cls, ctx: RingContext, exps: Iterable[Exponent]) -> Ideal:
        ideal = cls([ctx.monomial(e) for e in exps], ctx)
        ideal._monomial = True
        return ideal

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner())

    def _all_monomial_gens(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    @property
    def is_monomial(self) -> bool:
        if self._monomial is None:
            self._monomial = self._all_monomial_gens() or all(
                g.is_monomial() for g in self.groebner()
            )
        return self._monomial

    def monomial_generators(self) -> list[Exponent]:
        """Minimal monomial generators; only valid for monomial ideals."""
        if not self.is_monomial:
            raise UnsupportedIdealClass("ideal is not monomial")
        source = self.generators if self._all_monomial_gens() else self.groebner()
        return minimalize(g.monomials()[0] for g in source)

    def groebner(self, order: MonomialOrder = GREVLEX, budget: int | None = None) -> list[Polynomial]:
        with self._lock:
            cached = self._gb.get(order)
            if cached is None:
                cached = self._compute_gb(order, DEFAULT_BUDGET if budget is None else budget)
                self._gb[order] = cached
        return list(cached)

    def _compute_gb(self, order: MonomialOrder, budget: int) -> list[Polynomial]:
        ctx, key = self.ctx, order.key()
        if self._all_monomial_gens():
            exps = minimalize(g.monomials()[0] for g in self.generators)
            exps.sort(key=key, reverse=True)
            return [ctx.monomial(e) for e in exps]
        basis = _buchberger((g.terms for g in self.generators), key, ctx.p, budget)
        return [Polynomial._raw(ctx, f) for f in basis]

    def __contains__(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def contains_ideal(self, other: Ideal) -> bool:
        return all(g in self for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ctx == other.ctx and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ctx, tuple(self.groebner())))

    def __repr__(self):
        return f"Ideal({format_ideal(self)})"

    def __str__(self):
        return format_ideal(self)


def format_ideal(I: Ideal) -> str:
    return "[" + ", ".join(str(g) for g in I.generators) + "]" if I.generators else "[0]"


def parse_ideal(text: str, ctx: RingContext, env=None) -> Ideal:
    """Parse ``"[f1, f2, ...]"``; ``"[]"`` and ``"[0]"`` give the zero ideal."""
    stripped = text.strip()
    if not (stripped.startswith("[") and stripped.endswith("]")):
        raise PolynomialSyntaxError("ideal must be written as [f1, f2, ...]", 0, text)
    offset = text.index("[") + 1
    body = stripped[1:-1]
    gens = []
    if body.strip():
        pos = offset
        for piece in body.split(","):
            if not piece.strip():
                raise PolynomialSyntaxError("empty generator", pos, text)
            try:
                gens.append(parse_poly(piece, ctx, env))
            except PolynomialSyntaxError as exc:
                exc.position += pos
                exc.args = (f"{exc.args[0].rsplit(' at position', 1)[0]} at position {exc.position}",)
                raise
            pos += len(piece) + 1
    return Ideal(gens, ctx)


# ---------- operations ----------

def reduced_groebner(I: Ideal, order: MonomialOrder = GREVLEX, budget: int | None = None) -> list[Polynomial]:
    return I.groebner(order, budget)


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    if f.ctx != I.ctx:
        raise CartierError("polynomial and ideal live in different rings")
    if I.is_zero() or f.is_zero():
        return f
    if I._all_monomial_gens():
        gens = I.monomial_generators()
        return Polynomial._raw(
            f.ctx, {e: c for e, c in f.items() if not monomial_member(e, gens)}
        )
    key = order.key()
    basis = [(g.leading(key)[0], g.terms) for g in I.groebner(order)]
    return Polynomial._raw(f.ctx, _reduce(f.terms, basis, key, f.ctx.p))


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if f.is_zero():
        return True
    if I.is_zero():
        return False
    if I._all_monomial_gens():
        gens = I.monomial_generators()
        return all(monomial_member(e, gens) for e in f.monomials())
    if len(I.generators) == 1:
        try:
            divide_exact(f, I.generators[0])
            return True
        except ValueError:
            return False
    return normal_form(f, I).is_zero()


def bracket_power(I: Ideal, e: int) -> Ideal:
    """Ideal generated by the p^e-th powers of the generators of I."""
    if e < 0:
        raise ValueError("level must be non-negative")
    if e == 0:
        return I
    out = Ideal([frobenius_pow(g, e) for g in I.generators], I.ctx)
    if I._monomial:
        out._monomial = True
    return out


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    gens = [f * g for f in I.generators for g in J.generators]
    if I._all_monomial_gens() and J._all_monomial_gens():
        return Ideal.from_monomials(I.ctx, minimalize(g.monomials()[0] for g in gens))
    return Ideal(_dedupe(gens), I.ctx)


def ideal_sum(*ideals: Ideal) -> Ideal:
    ctx = ideals[0].ctx
    gens = [g for I in ideals for g in I.generators]
    if all(I._all_monomial_gens() for I in ideals):
        return Ideal.from_monomials(ctx, minimalize(g.monomials()[0] for g in gens))
    return Ideal(_dedupe(gens), ctx)


def _dedupe(gens: Iterable[Polynomial]) -> list[Polynomial]:
    seen = {}
    for g in gens:
        if not g.is_zero():
            seen.setdefault(g.monic(), None)
    return list(seen)


def _extend(ctx: RingContext) -> RingContext:
    name = "t"
    while name in ctx.names:
        name = "_" + name
    return RingContext(ctx.p, ctx.names + (name,))


def _lift(f: Polynomial, ext: RingContext, t_exp: int = 0) -> Polynomial:
    return Polynomial._raw(ext, {exp + (t_exp,): c for exp, c in f.items()})


def intersection(I: Ideal, K: Ideal, method: str = "auto") -> Ideal:
    """I ∩ K via elimination of t from t*I + (1-t)*K."""
    ctx = I.ctx
    if I.is_zero() or K.is_zero():
        return Ideal.zero(ctx)
    if method != "groebner" and I.is_monomial and K.is_monomial:
        return Ideal.from_monomials(
            ctx, monomial_intersection(I.monomial_generators(), K.monomial_generators())
        )
    if method == "monomial":
        raise UnsupportedIdealClass("monomial intersection requires monomial ideals")
    ext = _extend(ctx)
    t = ext.var(ext.names[-1])
    gens = [t * _lift(f, ext) for f in I.generators]
    gens += [(1 - t) * _lift(g, ext) for g in K.generators]

    def elim_key(exp):
        return (exp[-1], grevlex_key(exp[:-1]))

    basis = _buchberger((g.terms for g in gens), elim_key, ctx.p, DEFAULT_BUDGET)
    kept = [
        Polynomial._raw(ctx, {exp[:-1]: c for exp, c in f.items()})
        for f in basis
        if all(exp[-1] == 0 for exp in f)
    ]
    return Ideal(kept, ctx)


def colon_ideal(I: Ideal, J: Ideal, method: str = "auto") -> Ideal:
    """(I : J) = {f : f*J ⊆ I}, as the intersection of (I : g) over generators g of J.

    ``method`` is ``"auto"`` (monomial fast path when possible), ``"groebner"``
    or ``"monomial"``.
    """
    if method not in ("auto", "groebner", "monomial"):
        raise ValueError(f"unknown colon method {method!r}")
    if I.ctx != J.ctx:
        raise CartierError("ideals live in different rings")
    if J.is_zero():
        raise CartierError("colon by the zero ideal")
    ctx = I.ctx
    monomial = method != "groebner" and I.is_monomial and J.is_monomial
    if method == "monomial" and not monomial:
        raise UnsupportedIdealClass("monomial colon requires monomial ideals")
    if monomial:
        gens = I.monomial_generators()
        result = None
        for m in J.monomial_generators():
            piece = monomial_colon(gens, m)
            result = piece if result is None else monomial_intersection(result, piece)
        return Ideal.from_monomials(ctx, result)
    result = None
    for g in J.generators:
        piece = _colon_principal(I, g, method)
        result = piece if result is None else intersection(result, piece, method)
    return result


def _colon_principal(I: Ideal, g: Polynomial, method: str) -> Ideal:
    ctx = I.ctx
    if g.is_constant():
        return I
    if I.is_zero():
        return Ideal.zero(ctx)
    if method != "groebner" and g in I:
        return Ideal.unit(ctx)
    meet = intersection(I, Ideal([g], ctx), method)
    return Ideal([divide_exact(h, g) for h in meet.groebner()], ctx)


def fedder_ideal(I: Ideal, e: int = 1, method: str = "auto") -> Ideal:
    """(I^[p^e] : I), whose classes mod I^[p^e] parametrize level-e operators on S/I."""
    if e < 1:
        raise ValueError("level must be at least 1")
    if I.is_zero():
        return Ideal.unit(I.ctx)
    return colon_ideal(bracket_power(I, e), I, method)


def f_pure_test(I: Ideal) -> bool:
    """Fedder's criterion at the origin: (I^[p] : I) is not inside m^[p]."""
    ctx = I.ctx
    if I.is_zero():
        return True
    if any(g.coefficient((0,) * ctx.n) for g in I.generators):
        raise CartierError("ideal is not contained in the maximal ideal of the origin")
    if I.is_unit():
        raise CartierError("the unit ideal defines the zero ring")
    frob_max = bracket_power(Ideal.maximal(ctx), 1)
    fed = fedder_ideal(I, 1)
    return not all(g in frob_max for g in fed.groebner())


# ---------- graded pieces ----------

class _Echelon:
    """Row echelon form over F_p of sparse vectors indexed by exponents."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[Exponent, dict] = {}

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        while v:
            lm = max(v, key=grevlex_key)
            row = self.rows.get(lm)
            if row is None:
                break
            _sub_multiple(v, row, (0,) * len(lm), v[lm], self.p)
        return v

    def add(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        r = _monic(r, grevlex_key, self.p)
        self.rows[max(r, key=grevlex_key)] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def monomials_of_degree(n: int, d: int) -> Iterable[Exponent]:
    if d < 0:
        return
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev, exp = -1, []
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(d + n - 2 - prev)
        yield tuple(exp)


def _homogeneous_generators(I: Ideal) -> list[Polynomial]:
    if all(g.is_homogeneous() for g in I.generators):
        return list(I.generators)
    gb = I.groebner(GREVLEX)
    if all(g.is_homogeneous() for g in gb):
        return gb
    raise UnsupportedIdealClass(f"ideal {I} is neither monomial nor homogeneous")


def _shift(g: Polynomial, m: Exponent) -> dict:
    return {add_exp(e, m): c for e, c in g.items()}


def graded_dim(I: Ideal, d: int) -> int:
    """dim_{F_p} of the degree-d piece of a homogeneous (or monomial) ideal."""
    if I.is_zero() or d < 0:
        return 0
    gens = _homogeneous_generators(I)
    ech = _Echelon(I.ctx.p)
    for g in gens:
        k = d - total_degree(g)
        for m in monomials_of_degree(I.ctx.n, k):
            ech.add(_shift(g, m))
    return ech.rank


def nakayama_minimal_generators(gens: Sequence[Polynomial], ctx: RingContext,
                                modulo: Sequence[Polynomial] = ()) -> list[Polynomial]:
    """A minimal homogeneous generating subset of ``gens`` modulo the ideal ``modulo``.

    Degree by degree, keeps the generators that are independent of
    (m*I + modulo)_d; their number is the graded Nakayama count.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    for g in list(gens) + list(modulo):
        if not g.is_homogeneous():
            raise UnsupportedIdealClass(f"generator {g} is not homogeneous")
    degrees = sorted({total_degree(g) for g in gens})
    n, p = ctx.n, ctx.p
    extra = [g for g in modulo if not g.is_zero()]
    kept = []
    prev = None  # echelon basis of I_{d-1}
    prev_deg = None
    for d in range(degrees[0], degrees[-1] + 1):
        below = _Echelon(p)  # (m*I)_d + (modulo)_d
        if prev is not None and prev_deg == d - 1:
            for row in prev.rows.values():
                for i in range(n):
                    unit = tuple(int(j == i) for j in range(n))
                    below.add({add_exp(e, unit): c for e, c in row.items()})
        for h in extra:
            for m in monomials_of_degree(n, d - total_degree(h)):
                below.add(_shift(h, m))
        full = _Echelon(p)
        full.rows = dict(below.rows)
        for g in gens:
            if total_degree(g) == d and full.add(g.terms):
                kept.append(g)
        # I_d for the next degree; the modulo part is re-added there
        current = _Echelon(p)
        if prev is not None and prev_deg == d - 1:
            for row in prev.rows.values():
                for i in range(n):
                    unit = tuple(int(j == i) for j in range(n))
                    current.add({add_exp(e, unit): c for e, c in row.items()})
        for g in gens:
            if total_degree(g) == d:
                current.add(g.terms)
        prev, prev_deg = current, d
    return kept


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """Canonical minimal generators: monomial ideals by divisibility pruning,
    principal ideals by their monic generator, homogeneous ideals via graded
    Nakayama.  Anything else raises UnsupportedIdealClass."""
    ctx = I.ctx
    if I.is_zero():
        return []
    if I._all_monomial_gens() or (len(I.generators) > 1 and I.is_monomial):
        return [ctx.monomial(e) for e in I.monomial_generators()]
    if len(I.generators) == 1:
        return [I.generators[0].monic()]
    return nakayama_minimal_generators(_homogeneous_generators(I), ctx)


def max_degree(gens: Iterable[Polynomial]):
    """d(J): the largest total degree among the given generators (-inf if none)."""
    return max((total_degree(g) for g in gens), default=float("-inf"))
