"""Complexity sequences, gauge growth and the counting bound for Cartier algebras.

Everything reported here is a windowed statistic over levels 1..e_max.
Growth verdicts are evidence, never proofs.

Conventions:

* k_0 = 1: the degree-0 piece R contributes only the identity.
* The degree-e part of the subring generated below degree e is
  T_e = sum_{a+b=e} J_a^[p^b] * J_b.  Two factors suffice: every piece
  kappa^a J_a with a < e already lies in G_{e-1}, and a product of three or
  more factors is a product of two of them after grouping.
* Delta k_e is the minimal number of generators of J_e modulo T_e (and
  modulo I^[p^e] when the algebra acts on a quotient S/I, since those
  multipliers give the zero operator).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from .core import NEG_INF, Polynomial, max_norm
from .errors import InvalidSpec, UnsupportedIdealClass
from .ideals import (
    Ideal,
    bracket_power,
    ideal_membership,
    ideal_product,
    ideal_sum,
    max_degree,
    minimal_generators,
    monomial_member,
    nakayama_minimal_generators,
    _homogeneous_generators,
)
from .operators import CartierAlgebraSpec, algebra_component, validate_subalgebra

BOUNDED = "bounded-evidence"
UNBOUNDED = "unbounded-evidence"
INCONCLUSIVE = "inconclusive"

#: Denominator of the rational grid searched by :func:`lemma_fit`.
FIT_DENOMINATOR = 12
FIT_T_MAX = 8


@total_ordering
@dataclass(frozen=True)
class Root:
    """The positive real number base^(1/index), compared exactly."""

    base: Fraction
    index: int = 1

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        if self.base < 0 or self.index < 1:
            raise ValueError("Root needs base >= 0 and index >= 1")

    def _cmp_key(self, other):
        if not isinstance(other, Root):
            other = Root(Fraction(other), 1)
        # a^(1/i) vs b^(1/j)  <=>  a^j vs b^i
        return self.base**other.index, other.base**self.index

    def __eq__(self, other):
        if not isinstance(other, (Root, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a == b

    def __lt__(self, other):
        if not isinstance(other, (Root, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a < b

    def __hash__(self):
        return hash((self.base, self.index))

    def __float__(self):
        return float(self.base) ** (1.0 / self.index)

    def log(self, p: int) -> float:
        """log_p of the value."""
        if self.base == 0:
            return NEG_INF
        return (math.log(self.base.numerator) - math.log(self.base.denominator)) / (
            self.index * math.log(p)
        )

    def __str__(self):
        if self.index == 1 or self.base in (0, 1):
            return str(self.base)
        return f"{self.base}^(1/{self.index})"


ONE = Root(1, 1)


def _map_levels(fn, levels, jobs: int = 1):
    levels = list(levels)
    if jobs <= 1 or len(levels) <= 1:
        return [fn(e) for e in levels]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, levels))


def monomial_count_bound(n: int, D: int) -> int:
    """Number of monomials of total degree <= D in n variables: C(n + D, n)."""
    if n < 1 or D < 0:
        raise ValueError("need n >= 1 and D >= 0")
    return math.comb(n + D, n)


def product_piece(spec: CartierAlgebraSpec, e: int) -> Ideal:
    """T_e = sum over a + b = e, a, b >= 1, of J_a^[p^b] * J_b."""
    if e < 2:
        return Ideal.zero(spec.ctx)
    parts = [
        ideal_product(bracket_power(algebra_component(spec, a), e - a),
                      algebra_component(spec, e - a))
        for a in range(1, e)
    ]
    return ideal_sum(*parts)


def _denominator(spec: CartierAlgebraSpec, e: int) -> Ideal:
    T = product_piece(spec, e)
    if spec.quotient is not None:
        T = ideal_sum(T, bracket_power(spec.quotient, e))
    return T


def _contains_multiple(I: Ideal, h: Polynomial) -> bool:
    target = h.monic()
    if any(g.monic() == target for g in I.generators):
        return True
    return ideal_membership(h, I)


def new_generators(spec: CartierAlgebraSpec, e: int) -> list[Polynomial]:
    """Minimal generators of J_e that are new modulo T_e (their count is Delta k_e)."""
    if e == 0:
        return [spec.ctx.one()]
    J = algebra_component(spec, e)
    if J.is_zero():
        return []
    den = _denominator(spec, e)
    if J.is_monomial and (den.is_zero() or den.is_monomial):
        den_gens = den.monomial_generators() if not den.is_zero() else []
        return [
            spec.ctx.monomial(m)
            for m in J.monomial_generators()
            if not monomial_member(m, den_gens)
        ]
    if len(J.generators) == 1:
        h = J.generators[0]
        return [] if not den.is_zero() and _contains_multiple(den, h) else [h.monic()]
    try:
        gens = _homogeneous_generators(J)
        modulo = _homogeneous_generators(den) if not den.is_zero() else []
    except UnsupportedIdealClass as exc:
        raise UnsupportedIdealClass(f"level {e}: {exc}") from exc
    return nakayama_minimal_generators(gens, spec.ctx, modulo)


def new_generator_count(spec: CartierAlgebraSpec, e: int) -> int:
    return len(new_generators(spec, e))


@dataclass
class LevelComplexity:
    e: int
    k: int
    delta_k: int
    d_J: int | float       # max total degree of minimal generators of J_e
    d_J_norm: int | float  # same with the max-norm
    generators: int


@dataclass
class ComplexityReport:
    p: int
    n: int
    e_max: int
    levels: list[LevelComplexity]
    cx_estimate: Root
    cx_window_max: Root
    trend: list[tuple[int, Root]]

    @property
    def delta_k(self) -> list[int]:
        return [lv.delta_k for lv in self.levels]

    @property
    def expF_estimate(self) -> float:
        return self.cx_estimate.log(self.p)


def _require_valid(spec: CartierAlgebraSpec, e_max: int):
    report = validate_subalgebra(spec, e_max)
    if not report.valid:
        raise InvalidSpec(report.message)


def complexity_sequence(spec: CartierAlgebraSpec, e_max: int, jobs: int = 1,
                        validate: bool = True) -> ComplexityReport:
    """Delta k_e for 1 <= e <= e_max, with windowed growth estimates.

    ``cx_estimate`` is the limsup of (Delta k_e)^(1/e) restricted to the window,
    i.e. its value at e_max, floored at 1; ``cx_window_max`` is the maximum of
    (Delta k_e)^(1/e) over 2 <= e <= e_max (zero levels skipped).
    """
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    if validate:
        _require_valid(spec, e_max)

    def level(e):
        mins = minimal_generators(algebra_component(spec, e))
        return (
            new_generator_count(spec, e),
            max_degree(mins),
            max((max_norm(g) for g in mins), default=NEG_INF),
            len(mins),
        )

    data = _map_levels(level, range(1, e_max + 1), jobs)
    levels = []
    k = 1
    for e, (dk, d, dn, count) in zip(range(1, e_max + 1), data):
        k += dk
        levels.append(LevelComplexity(e, k, dk, d, dn, count))
    roots = {lv.e: Root(lv.delta_k, lv.e) for lv in levels if lv.delta_k > 0}
    window_max = max((r for e, r in roots.items() if e >= 2), default=ONE)
    tail = roots.get(e_max, ONE)
    return ComplexityReport(
        p=spec.ctx.p, n=spec.ctx.n, e_max=e_max, levels=levels,
        cx_estimate=max(tail, ONE), cx_window_max=max(window_max, ONE),
        trend=[(lv.e, Root(lv.delta_k, lv.e)) for lv in levels[-3:]],
    )


def growth_verdict(values) -> str:
    """Classify a level-indexed sequence from its last three entries.

    Unbounded: strictly increasing with non-shrinking increments.
    Bounded: non-increasing, or increments contracting by at least half.
    """
    if len(values) < 3 or any(v is None for v in values[-3:]):
        return INCONCLUSIVE
    a, b, c = values[-3:]
    d1, d2 = b - a, c - b
    if d1 > 0 and d2 > 0 and d2 >= d1:
        return UNBOUNDED
    if (d1 <= 0 and d2 <= 0) or (d1 > 0 and 2 * d2 <= d1):
        return BOUNDED
    return INCONCLUSIVE


def _trend(values) -> str:
    vals = [v for v in values[-3:] if v is not None]
    if len(vals) < 2:
        return "n/a"
    steps = [b - a for a, b in zip(vals, vals[1:])]
    if all(s > 0 for s in steps):
        return "increasing"
    if all(s < 0 for s in steps):
        return "decreasing"
    if all(s == 0 for s in steps):
        return "flat"
    return "mixed"


@dataclass
class LevelGauge:
    e: int
    generators: list[Polynomial]
    gauges: list[int]
    g: Fraction | None  # max gauge / p^e; None when J_e = 0


@dataclass
class GaugeReport:
    p: int
    e_max: int
    levels: list[LevelGauge]
    sup_g: Fraction | None
    trend: str
    verdict: str
    K_window: Fraction | None = None
    claim1_ok: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def g(self) -> list[Fraction | None]:
        return [lv.g for lv in self.levels]


def gauge_growth(spec: CartierAlgebraSpec, e_max: int, jobs: int = 1) -> GaugeReport:
    """g(e) = max gauge of the minimal generators of J_e, divided by p^e.

    Gauges are max-norms of the generators as elements of S.
    """
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    p = spec.ctx.p

    def level(e):
        gens = minimal_generators(algebra_component(spec, e))
        gauges = [max_norm(f) for f in gens]
        g = Fraction(max(gauges), p**e) if gauges else None
        return LevelGauge(e, gens, gauges, g)

    levels = _map_levels(level, range(1, e_max + 1), jobs)
    values = [lv.g for lv in levels]
    present = [v for v in values if v is not None]
    sup_g = max(present) if present else None
    verdict = growth_verdict(values)
    report = GaugeReport(p, e_max, levels, sup_g, _trend(values), verdict)
    if spec.quotient is not None:
        report.notes.append("gauges are max-norms of the multipliers in S, not reduced mod the quotient")
    if verdict == BOUNDED:
        report.K_window = sup_g
        bound = math.ceil(sup_g)
        report.claim1_ok = all(
            d <= bound * p**lv.e for lv in levels for d in lv.gauges
        )
        a, b, c = values[-3:]
        extrapolated = c + max(c - b, 0)
        report.notes.append(
            f"claim-1 constant over window: K = {sup_g}; geometric tail extrapolation {extrapolated}"
        )
    return report


@dataclass
class LemmaFit:
    t: Fraction | None
    K: Fraction | None
    expF_bound: Fraction | None   # t * n
    cx_bound: Root | None         # p^(t n)
    counting_ok: bool
    violations: list[int]


def lemma_fit(spec: CartierAlgebraSpec, e_max: int, jobs: int = 1,
              complexity: ComplexityReport | None = None) -> LemmaFit:
    """Least t on a 1/12 grid for which d(J_e) / p^(t e) shows bounded growth.

    K is then max_e d(J_e) / p^(t e) over the window (rounded up to 1e-6 when
    t is not an integer), and the induced bounds are exp_F <= t n and
    cx <= p^(t n).  Also checks Delta k_e <= C(n + d(J_e), n) per level.
    """
    if complexity is None:
        complexity = complexity_sequence(spec, e_max, jobs)
    p, n = spec.ctx.p, spec.ctx.n
    degs = {lv.e: lv.d_J for lv in complexity.levels if lv.d_J != NEG_INF}

    violations = []
    for lv in complexity.levels:
        allowed = 0 if lv.d_J == NEG_INF else monomial_count_bound(n, lv.d_J)
        if lv.delta_k > allowed:
            violations.append(lv.e)

    t_fit = None
    for k in range(FIT_T_MAX * FIT_DENOMINATOR + 1):
        t = Fraction(k, FIT_DENOMINATOR)
        seq = [degs[e] / p ** (float(t) * e) if e in degs else None
               for e in range(1, e_max + 1)]
        if growth_verdict(seq) == BOUNDED:
            t_fit = t
            break
    if t_fit is None:
        return LemmaFit(None, None, None, None, not violations, violations)
    if t_fit.denominator == 1:
        K = max((Fraction(d, p ** (int(t_fit) * e)) for e, d in degs.items()), default=Fraction(0))
    else:
        K = max((d / p ** (float(t_fit) * e) for e, d in degs.items()), default=0.0)
        K = Fraction(math.ceil(K * 10**6), 10**6)
    exponent = t_fit * n
    cx_bound = Root(Fraction(p) ** exponent.numerator, exponent.denominator)
    return LemmaFit(t_fit, K, exponent, cx_bound, not violations, violations)


@dataclass
class TheoremCheck:
    applicable: bool
    consistent: bool | None
    cx_estimate: Root
    bound: Root
    note: str


def theorem_consistency_check(spec: CartierAlgebraSpec, e_max: int, jobs: int = 1,
                              complexity: ComplexityReport | None = None,
                              gauge_report: GaugeReport | None = None) -> TheoremCheck:
    """Gauge bounded implies cx <= p^n: test the implication on the window."""
    if complexity is None:
        complexity = complexity_sequence(spec, e_max, jobs)
    if gauge_report is None:
        gauge_report = gauge_growth(spec, e_max, jobs)
    bound = Root(spec.ctx.p ** spec.ctx.n, 1)
    cx = complexity.cx_estimate
    if gauge_report.verdict != BOUNDED:
        return TheoremCheck(
            False, None, cx, bound,
            f"not applicable: gauge growth is {gauge_report.verdict}; finite complexity "
            f"(cx_estimate = {cx}) does not contradict the implication",
        )
    ok = cx <= bound
    return TheoremCheck(
        True, ok, cx, bound,
        f"{'consistent' if ok else 'INCONSISTENT'}: cx_estimate = {cx} "
        f"{'<=' if ok else '>'} p^n = {bound}",
    )
