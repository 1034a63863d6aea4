"""``cartier`` command line front end.

Exit status: 0 on success, 1 on domain errors (invalid spec, unsupported
ideal class, failed validation), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, report
from .core import parse_poly
from .errors import CartierError
from .ideals import GREVLEX, LEX, Ideal, colon_ideal, f_pure_test, fedder_ideal, parse_ideal
from .operators import CartierOperator, op_apply, op_compose, validate_subalgebra
from .specfile import parse_spec

COMMANDS = ("eval", "compose", "gb", "colon", "fedder", "fpure", "validate",
            "complexity", "gauge", "report")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartier",
        description="Exact computations with Cartier algebras over F_p[x_1..x_n].",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--spec", required=True, help="algebra spec file")
    parser.add_argument("--e", type=int, help="level (eval, compose, gb, fedder)")
    parser.add_argument("--e-max", type=int, help="override the spec's analysis window")
    parser.add_argument("--f", help="operator multiplier (eval, compose)")
    parser.add_argument("--r", help="argument polynomial (eval)")
    parser.add_argument("--e2", type=int, help="level of the second operator (compose)")
    parser.add_argument("--f2", help="multiplier of the second operator (compose)")
    parser.add_argument("--ideal", help="ideal '[f1, f2, ...]' (gb, colon, fedder, fpure); "
                                        "defaults to the spec's quotient")
    parser.add_argument("--by", help="divisor ideal for colon")
    parser.add_argument("--order", choices=("lex", "grevlex"), help="monomial order")
    parser.add_argument("--csv", help="also write the level table as CSV to this path")
    parser.add_argument("--jobs", type=int, default=1, help="levels analysed in parallel")
    return parser


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"command '{args.command}' requires --{name.replace('_', '-')}")


def _ideal_arg(args, spec, algebra) -> Ideal:
    if args.ideal is not None:
        return parse_ideal(args.ideal, spec.ctx)
    if algebra.quotient is not None:
        return algebra.quotient
    raise UsageError(f"command '{args.command}' needs --ideal or a quotient in the spec")


def _format_basis(gens) -> str:
    return "[" + ", ".join(str(g) for g in gens) + "]"


def run(args) -> str:
    path = Path(args.spec)
    if not path.is_file():
        raise UsageError(f"--spec: cannot read {args.spec}")
    spec = parse_spec(path)
    ctx = spec.ctx
    order = {"lex": LEX, "grevlex": GREVLEX}[args.order] if args.order else spec.order
    algebra = spec.algebra()
    e_max = spec.e_max if args.e_max is None else args.e_max
    if e_max < 1:
        raise UsageError("--e-max must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    cmd = args.command

    if cmd == "eval":
        _need(args, "e", "f", "r")
        psi = CartierOperator(args.e, parse_poly(args.f, ctx))
        return str(op_apply(psi, parse_poly(args.r, ctx), algebra.quotient, order)) + "\n"
    if cmd == "compose":
        _need(args, "e", "f", "e2", "f2")
        out = op_compose(CartierOperator(args.e, parse_poly(args.f, ctx)),
                         CartierOperator(args.e2, parse_poly(args.f2, ctx)))
        return f"level: {out.level}\nmultiplier: {out.multiplier}\n"
    if cmd == "gb":
        if args.ideal is None and args.e is not None:
            ideal = algebra.component(args.e)
        else:
            ideal = _ideal_arg(args, spec, algebra)
        return _format_basis(ideal.groebner(order)) + "\n"
    if cmd == "colon":
        _need(args, "by")
        result = colon_ideal(_ideal_arg(args, spec, algebra), parse_ideal(args.by, ctx))
        return _format_basis(result.groebner(order)) + "\n"
    if cmd == "fedder":
        e = 1 if args.e is None else args.e
        return _format_basis(fedder_ideal(_ideal_arg(args, spec, algebra), e).groebner(order)) + "\n"
    if cmd == "fpure":
        return f"F-pure: {'yes' if f_pure_test(_ideal_arg(args, spec, algebra)) else 'no'}\n"
    if cmd == "validate":
        result = validate_subalgebra(algebra, e_max)
        if not result.valid:
            raise CartierError(result.message)
        return result.message + "\n"

    complexity = gauge = None
    if cmd in ("complexity", "report"):
        complexity = analysis.complexity_sequence(algebra, e_max, args.jobs)
    if cmd in ("gauge", "report"):
        gauge = analysis.gauge_growth(algebra, e_max, args.jobs)
    if args.csv:
        Path(args.csv).write_text(report.csv_rows(complexity, gauge), encoding="utf-8",
                                  newline="")
    if cmd == "complexity":
        return report.header(algebra, e_max) + "\n\n" + report.render_complexity(complexity) + "\n"
    if cmd == "gauge":
        return report.header(algebra, e_max) + "\n\n" + report.render_gauge(gauge) + "\n"
    validation = validate_subalgebra(algebra, e_max)
    lemma = analysis.lemma_fit(algebra, e_max, args.jobs, complexity=complexity)
    theorem = analysis.theorem_consistency_check(
        algebra, e_max, args.jobs, complexity=complexity, gauge_report=gauge
    )
    return report.render_report(algebra, e_max, validation, complexity, gauge, lemma, theorem)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        out = run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cartier: error: {exc}", file=sys.stderr)
        return 2
    except (CartierError, ValueError) as exc:
        print(f"cartier: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
