"""Cartier operators kappa^e * f, algebra specifications e -> J_e, and gauges."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .core import NEG_INF, Polynomial, RingContext, frobenius_pow, max_norm, parse_poly, poly_pow
from .errors import ContextMismatch, ExponentOverflow, InvalidSpec
from .ideals import (
    GREVLEX,
    Ideal,
    MonomialOrder,
    bracket_power,
    fedder_ideal,
    format_ideal,
    ideal_membership,
    normal_form,
)


def kappa_eval(e: int, f: Polynomial) -> Polynomial:
    """Apply kappa^e to f.

    Each exponent splits as alpha = q*r + alpha' with 0 <= alpha'_i < q = p^e;
    the term c*x^alpha maps to c*x^r when every alpha'_i equals q - 1, else 0.
    """
    if e < 0:
        raise ValueError("level must be non-negative")
    if e == 0:
        return f
    q = f.ctx.p**e
    top = q - 1
    out = {}
    for exp, c in f.items():
        r = []
        for a in exp:
            quo, rem = divmod(a, q)
            if rem != top:
                break
            r.append(quo)
        else:
            out[tuple(r)] = c
    return Polynomial._raw(f.ctx, out)


@dataclass(frozen=True)
class CartierOperator:
    """The map r -> kappa^level(multiplier * r)."""

    level: int
    multiplier: Polynomial

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be non-negative")

    @property
    def ctx(self) -> RingContext:
        return self.multiplier.ctx

    @classmethod
    def identity(cls, ctx: RingContext) -> CartierOperator:
        return cls(0, ctx.one())

    @classmethod
    def kappa(cls, ctx: RingContext, e: int = 1) -> CartierOperator:
        return cls(e, ctx.one())

    def __call__(self, r: Polynomial) -> Polynomial:
        return op_apply(self, r)

    def __mul__(self, other: CartierOperator) -> CartierOperator:
        return op_compose(self, other)

    def __str__(self):
        return f"kappa^{self.level}*({self.multiplier})"


def op_apply(psi: CartierOperator, r: Polynomial, quotient: Ideal | None = None,
             order: MonomialOrder = GREVLEX) -> Polynomial:
    if psi.ctx != r.ctx:
        raise ContextMismatch("operator and argument live in different rings")
    out = kappa_eval(psi.level, psi.multiplier * r)
    if quotient is not None:
        out = normal_form(out, quotient, order)
    return out


def op_compose(phi: CartierOperator, psi: CartierOperator) -> CartierOperator:
    """phi * psi = phi o F^a_* psi, i.e. (a + b, f_phi^(p^b) * f_psi)."""
    if phi.ctx != psi.ctx:
        raise ContextMismatch("operators live in different rings")
    return CartierOperator(
        phi.level + psi.level, frobenius_pow(phi.multiplier, psi.level) * psi.multiplier
    )


# ---------- gauge ----------

@dataclass(frozen=True)
class GaugeValue:
    value: int | float  # non-negative int, or -inf for zero
    exact: bool = True

    def __str__(self):
        v = "-inf" if self.value == NEG_INF else str(self.value)
        return v if self.exact else f"<={v}"


def gauge(r: Polynomial, quotient: Ideal | None = None) -> GaugeValue:
    """Max-norm filtration degree of r (as an element of S/quotient).

    Exact over S and over monomial quotients, where deleting monomials of the
    ideal gives the representative of least max-norm; otherwise the max-norm
    of the Groebner normal form, flagged as an upper bound.
    """
    if quotient is None or quotient.is_zero():
        return GaugeValue(max_norm(r), True)
    nf = normal_form(r, quotient)
    return GaugeValue(max_norm(nf), quotient.is_monomial)


def default_window(psi: CartierOperator) -> int:
    m = max_norm(psi.multiplier)
    return (0 if m == NEG_INF else m) + 2 * psi.ctx.p**psi.level


def gauge_excess(psi: CartierOperator, window: int | None = None,
                 quotient: Ideal | None = None):
    """max over monomials r with max-norm <= window of delta(psi(r)) - delta(r)/p^e.

    A certified lower bound for the best constant K of this single operator,
    valid for the given window only.  Returns -inf when psi kills the window.
    """
    e = psi.level
    if e < 1:
        raise ValueError("gauge excess needs level >= 1")
    q = psi.ctx.p**e
    if window is None:
        window = default_window(psi)
    if window < q:
        raise ValueError(f"window {window} must be at least p^e = {q}")
    if psi.multiplier.is_zero():
        return NEG_INF
    ctx = psi.ctx
    best = NEG_INF
    for beta in itertools.product(range(window + 1), repeat=ctx.n):
        value = op_apply(psi, ctx.monomial(beta), quotient)
        if value.is_zero():
            continue
        d_in = gauge(ctx.monomial(beta), quotient).value
        d_out = gauge(value, quotient).value
        excess = d_out - Fraction(d_in, q)
        if excess > best:
            best = excess
    return best


# ---------- algebra specifications ----------

class Family:
    """Rule e -> generators of J_e for e >= 1."""

    name = "family"

    def generators(self, ctx: RingContext, e: int) -> list[Polynomial]:
        raise NotImplementedError

    def describe(self) -> str:
        return self.name

    def quotient(self) -> Ideal | None:
        return None


class Full(Family):
    name = "full"

    def generators(self, ctx, e):
        return [ctx.one()]


@dataclass
class Principal(Family):
    f: Polynomial
    name = "principal"

    def generators(self, ctx, e):
        return [poly_pow(self.f, ctx.p**e - 1)]

    def describe(self):
        return f"principal {self.f}"


@dataclass
class Fedder(Family):
    ideal: Ideal
    name = "fedder"

    def generators(self, ctx, e):
        return list(fedder_ideal(self.ideal, e).groebner())

    def describe(self):
        return f"fedder {format_ideal(self.ideal)}"

    def quotient(self):
        return self.ideal


class PaperExample(Family):
    """J_e = (x^2, x*y^(e*p^e)) on the first two variables."""

    name = "paper-example"

    def generators(self, ctx, e):
        if ctx.n < 2:
            raise InvalidSpec("paper-example family needs at least two variables")
        q = ctx.p**e
        x2 = (2, 0) + (0,) * (ctx.n - 2)
        xy = (1, e * q) + (0,) * (ctx.n - 2)
        return [ctx.monomial(x2), ctx.monomial(xy)]


@dataclass
class Table(Family):
    levels: Mapping[int, Sequence[Polynomial]]
    name = "table"

    def generators(self, ctx, e):
        if e not in self.levels:
            raise InvalidSpec(f"table family has no entry for level {e}")
        return list(self.levels[e])

    def describe(self):
        return "table " + " ".join(
            f"J{e}=[{', '.join(map(str, g)) or '0'}]" for e, g in sorted(self.levels.items())
        )


@dataclass
class Template(Family):
    """Generator expressions whose exponents may use e, p and q = p^e."""

    texts: Sequence[str]
    name = "template"

    def generators(self, ctx, e):
        env = {"e": e, "p": ctx.p, "q": ctx.p**e}
        return [parse_poly(t, ctx, env) for t in self.texts]

    def describe(self):
        return "template [" + ", ".join(t.strip() for t in self.texts) + "]"


@dataclass
class CartierAlgebraSpec:
    """The algebra sum_e kappa^e J_e acting on R = S / quotient."""

    ctx: RingContext
    family: Family
    quotient: Ideal | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False,
                                  compare=False)

    def __post_init__(self):
        fam_q = self.family.quotient()
        if fam_q is not None:
            if self.quotient is not None and self.quotient != fam_q:
                raise InvalidSpec("quotient ideal differs from the fedder family ideal")
            self.quotient = fam_q
        if self.quotient is not None and self.quotient.is_zero():
            self.quotient = None

    def component(self, e: int) -> Ideal:
        return algebra_component(self, e)

    def operators(self, e: int) -> list[CartierOperator]:
        return [CartierOperator(e, f) for f in self.component(e).generators]


def algebra_component(spec: CartierAlgebraSpec, e: int) -> Ideal:
    """J_e for the spec's family; J_0 is always the unit ideal."""
    if e < 0:
        raise ValueError("level must be non-negative")
    with spec._lock:
        cached = spec._cache.get(e)
    if cached is not None:
        return cached
    ctx = spec.ctx
    if e == 0:
        ideal = Ideal.unit(ctx)
    else:
        try:
            gens = spec.family.generators(ctx, e)
        except OverflowError as exc:
            raise ExponentOverflow(str(exc)) from exc
        ideal = Ideal(gens, ctx)
    with spec._lock:
        return spec._cache.setdefault(e, ideal)


@dataclass
class ValidationReport:
    valid: bool
    e_max: int
    nonzero_level: int | None = None
    violation: tuple[int, int, Polynomial] | None = None
    message: str = ""

    def __str__(self):
        return self.message


def validate_subalgebra(spec: CartierAlgebraSpec, e_max: int) -> ValidationReport:
    """Check closure J_a^[p^b] * J_b ⊆ J_{a+b} for a, b >= 1, a + b <= e_max,
    and that some J_e with 1 <= e <= e_max is nonzero."""
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    for total in range(2, e_max + 1):
        target = algebra_component(spec, total)
        for a in range(1, total):
            b = total - a
            left = bracket_power(algebra_component(spec, a), b)
            for f in left.generators:
                for g in algebra_component(spec, b).generators:
                    prod = f * g
                    if not ideal_membership(prod, target):
                        return ValidationReport(
                            False, e_max, violation=(a, b, prod),
                            message=(f"invalid: J_{a}^[p^{b}] * J_{b} is not contained in "
                                     f"J_{total}; witness {prod}"),
                        )
    nonzero = next(
        (e for e in range(1, e_max + 1) if not algebra_component(spec, e).is_zero()), None
    )
    if nonzero is None:
        return ValidationReport(False, e_max, message=f"invalid: J_e = 0 for all 1 <= e <= {e_max}")
    return ValidationReport(True, e_max, nonzero_level=nonzero,
                            message=f"valid up to e = {e_max}")
