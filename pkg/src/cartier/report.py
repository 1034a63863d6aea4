"""Text tables and CSV for analysis reports."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .analysis import ComplexityReport, GaugeReport, LemmaFit, TheoremCheck
from .core import NEG_INF
from .operators import CartierAlgebraSpec, ValidationReport

CSV_COLUMNS = ["e", "k_e", "delta_k", "d_Je", "gauge_g", "verdict"]
CONVENTION = "k_0 = 1 (the degree-0 piece R contributes only the identity)"


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if value == NEG_INF:
            return "-inf"
        return f"{value:.6f}"
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def approx(root) -> str:
    return f"{root} ~ {float(root):.6f}"


def table(header: list[str], rows: list[list], text_last: bool = False) -> str:
    """Right-aligned columns; with ``text_last`` the final column is free text."""
    cells = [header] + [[fmt(c) for c in row] for row in rows]
    aligned = len(header) - 1 if text_last else len(header)
    widths = [max(len(r[i]) for r in cells) for i in range(aligned)]
    return "\n".join(
        "  ".join([c.rjust(w) for c, w in zip(r, widths)] + list(r[aligned:])).rstrip()
        for r in cells
    )


def header(spec: CartierAlgebraSpec, e_max: int) -> str:
    ctx = spec.ctx
    quotient = str(spec.quotient) if spec.quotient is not None else "none"
    return "\n".join([
        f"ring: F_{ctx.p}[{', '.join(ctx.names)}]",
        f"quotient: {quotient}",
        f"family: {spec.family.describe()}",
        f"window: 1 <= e <= {e_max}",
        f"convention: {CONVENTION}",
    ])


def render_complexity(c: ComplexityReport) -> str:
    rows = [[lv.e, lv.k, lv.delta_k, lv.d_J, lv.d_J_norm, lv.generators] for lv in c.levels]
    lines = [
        table(["e", "k_e", "delta_k", "d_Je", "maxnorm_Je", "mu_Je"], rows),
        "",
        f"cx_estimate (windowed limsup, value at e = {c.e_max}, floored at 1): {approx(c.cx_estimate)}",
        f"cx_window_max (max over 2 <= e <= {c.e_max}): {approx(c.cx_window_max)}",
        f"expF_estimate = log_{c.p}(cx_estimate): {fmt(float(c.expF_estimate))}",
        "trend of (delta_k)^(1/e), last three levels: "
        + ", ".join(f"e={e}: {r}" for e, r in c.trend),
    ]
    return "\n".join(lines)


def render_gauge(g: GaugeReport) -> str:
    rows = []
    for lv in g.levels:
        gens = ", ".join(str(f) for f in lv.generators) or "0"
        gauges = ", ".join(str(d) for d in lv.gauges) or "-inf"
        rows.append([lv.e, lv.g, gauges, gens])
    lines = [
        table(["e", "gauge_g", "gauges", "generators"], rows, text_last=True),
        "",
        f"sup g over window: {fmt(g.sup_g)}",
        f"trend (last three levels): {g.trend}",
        f"verdict: {g.verdict} (window 1..{g.e_max})",
    ]
    if g.K_window is not None:
        lines.append(f"implied constant K_window = {g.K_window}; claim-1 check: "
                     f"{'ok' if g.claim1_ok else 'FAILED'}")
    lines += g.notes
    return "\n".join(lines)


def render_lemma(fit: LemmaFit) -> str:
    if fit.t is None:
        lines = ["fitted t: none on the search grid (inconclusive)"]
    else:
        lines = [
            f"fitted t = {fit.t}, K = {fit.K}",
            f"induced bounds: exp_F <= t*n = {fit.expF_bound}, cx <= p^(t*n) = {approx(fit.cx_bound)}",
        ]
    status = "ok" if fit.counting_ok else f"VIOLATED at e = {fit.violations}"
    lines.append(f"counting check delta_k <= C(n + d(J_e), n): {status}")
    return "\n".join(lines)


def render_theorem(t: TheoremCheck) -> str:
    return t.note


def render_report(spec, e_max, validation: ValidationReport, complexity, gauge, lemma,
                  theorem) -> str:
    sections = [
        "Cartier algebra report",
        header(spec, e_max),
        "",
        "== summary ==",
        table(
            ["e", "k_e", "delta_k", "d_Je", "gauge_g"],
            [[lv.e, lv.k, lv.delta_k, lv.d_J, g.g]
             for lv, g in zip(complexity.levels, gauge.levels)],
        ),
        "",
        f"== validation ==\n{validation.message}",
        "",
        f"== complexity ==\n{render_complexity(complexity)}",
        "",
        f"== gauge growth ==\n{render_gauge(gauge)}",
        "",
        f"== counting lemma ==\n{render_lemma(lemma)}",
        "",
        f"== gauge bounded => cx <= p^n ==\n{render_theorem(theorem)}",
    ]
    return "\n".join(sections) + "\n"


def csv_rows(complexity: ComplexityReport | None, gauge: GaugeReport | None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_COLUMNS)
    levels = complexity.levels if complexity else gauge.levels
    for i, lv in enumerate(levels):
        c = complexity.levels[i] if complexity else None
        g = gauge.levels[i] if gauge else None
        writer.writerow([
            lv.e,
            fmt(c.k) if c else "",
            fmt(c.delta_k) if c else "",
            fmt(c.d_J) if c else "",
            fmt(g.g) if g else "",
            gauge.verdict if gauge else "",
        ])
    return buf.getvalue()
