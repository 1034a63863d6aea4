"""Line-based ``key = value`` algebra spec files.

Example::

    # the non gauge bounded algebra (x^2, x*y^(e*p^e))
    p = 2
    vars = x, y
    family = paper-example
    e_max = 5

Keys: ``p``, ``vars``, ``family``, ``e_max`` (default 5), ``quotient``,
``order`` (``grevlex`` or ``lex``) and, for ``family = table``, one
``J<e> = [...]`` line per level 1..e_max.  Families: ``full``,
``principal <poly>``, ``fedder [<ideal>]``, ``paper-example``, ``table``,
``template [<generators in e, p, q>]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .core import RingContext, is_prime, parse_poly
from .errors import CartierError, InvalidSpec, PolynomialSyntaxError
from .ideals import GREVLEX, LEX, Ideal, MonomialOrder, parse_ideal
from .operators import (
    CartierAlgebraSpec,
    Family,
    Fedder,
    Full,
    PaperExample,
    Principal,
    Table,
    Template,
)

KEYS = {"p", "vars", "family", "e_max", "quotient", "order"}
_TABLE_KEY = re.compile(r"J(\d+)\Z")


class SpecError(InvalidSpec):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class SpecFile:
    ctx: RingContext
    family: Family
    e_max: int = 5
    quotient: Ideal | None = None
    order: MonomialOrder = GREVLEX
    path: str | None = None
    _algebra: CartierAlgebraSpec | None = field(default=None, repr=False)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ctx.names

    def algebra(self) -> CartierAlgebraSpec:
        if self._algebra is None:
            self._algebra = CartierAlgebraSpec(self.ctx, self.family, self.quotient)
        return self._algebra


def parse_spec(path: str | Path) -> SpecFile:
    text = Path(path).read_text(encoding="utf-8")
    spec = parse_spec_text(text)
    spec.path = str(path)
    return spec


def parse_spec_text(text: str) -> SpecFile:
    entries: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(lineno, f"expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS and not _TABLE_KEY.match(key):
            raise SpecError(lineno, f"unknown key {key!r}")
        if key in entries:
            raise SpecError(lineno, f"duplicate key {key!r}")
        entries[key] = (lineno, value)

    for key in ("p", "vars", "family"):
        if key not in entries:
            raise SpecError(None, f"missing required key {key!r}")

    line, value = entries["p"]
    try:
        p = int(value)
    except ValueError:
        raise SpecError(line, f"characteristic must be an integer, got {value!r}") from None
    if not is_prime(p):
        raise SpecError(line, f"characteristic must be prime, got {p}")

    line, value = entries["vars"]
    names = tuple(v.strip() for v in value.split(","))
    try:
        ctx = RingContext(p, names)
    except ValueError as exc:
        raise SpecError(line, str(exc)) from None

    e_max = 5
    if "e_max" in entries:
        line, value = entries["e_max"]
        try:
            e_max = int(value)
        except ValueError:
            raise SpecError(line, f"e_max must be an integer, got {value!r}") from None
        if e_max < 1:
            raise SpecError(line, "e_max must be at least 1")

    order = GREVLEX
    if "order" in entries:
        line, value = entries["order"]
        if value not in ("grevlex", "lex"):
            raise SpecError(line, f"order must be 'grevlex' or 'lex', got {value!r}")
        order = LEX if value == "lex" else GREVLEX

    quotient = None
    if "quotient" in entries:
        line, value = entries["quotient"]
        quotient = _ideal(value, ctx, line)

    table_lines = {k: v for k, v in entries.items() if _TABLE_KEY.match(k)}
    line, value = entries["family"]
    family = _family(value, ctx, line, table_lines, e_max)
    if table_lines and not isinstance(family, Table):
        first = min(v[0] for v in table_lines.values())
        raise SpecError(first, "J<e> entries are only allowed with family = table")

    spec = SpecFile(ctx, family, e_max, quotient, order)
    try:
        spec.algebra()
    except CartierError as exc:
        raise SpecError(line, str(exc)) from None
    return spec


def _ideal(value: str, ctx: RingContext, line: int, env=None) -> Ideal:
    try:
        return parse_ideal(value, ctx, env)
    except PolynomialSyntaxError as exc:
        raise SpecError(line, str(exc)) from None


def _family(value: str, ctx: RingContext, line: int, table_lines, e_max: int) -> Family:
    name, _, arg = value.partition(" ")
    arg = arg.strip()
    if name == "full":
        return Full()
    if name == "paper-example":
        if ctx.n < 2:
            raise SpecError(line, "paper-example family needs at least two variables")
        return PaperExample()
    if name == "principal":
        if not arg:
            raise SpecError(line, "principal family needs a polynomial")
        try:
            return Principal(parse_poly(arg, ctx))
        except PolynomialSyntaxError as exc:
            raise SpecError(line, str(exc)) from None
    if name == "fedder":
        ideal = _ideal(arg, ctx, line)
        if ideal.is_zero():
            raise SpecError(line, "fedder family needs a nonzero ideal")
        return Fedder(ideal)
    if name == "template":
        if not (arg.startswith("[") and arg.endswith("]")):
            raise SpecError(line, "template family needs a bracketed generator list")
        texts = [t for t in arg[1:-1].split(",")]
        for e in range(1, e_max + 1):
            env = {"e": e, "p": ctx.p, "q": ctx.p**e}
            for t in texts:
                try:
                    parse_poly(t, ctx, env)
                except PolynomialSyntaxError as exc:
                    raise SpecError(line, f"template generator {t.strip()!r}: {exc}") from None
                except (ValueError, CartierError) as exc:
                    raise SpecError(line, f"template generator {t.strip()!r} at e = {e}: {exc}") from None
        return Template(texts)
    if name == "table":
        levels = {}
        for key, (kline, kvalue) in table_lines.items():
            levels[int(key[1:])] = list(_ideal(kvalue, ctx, kline).generators)
        missing = [e for e in range(1, e_max + 1) if e not in levels]
        if missing:
            raise SpecError(line, "table family is missing " + ", ".join(f"J{e}" for e in missing))
        if 0 in levels:
            raise SpecError(table_lines["J0"][0], "J0 is fixed to the unit ideal")
        return Table(levels)
    raise SpecError(line, f"unknown family {name!r}")
