import pytest
from hypothesis import strategies as st

from cartier.core import Polynomial, RingContext

ACCEPTANCE_LINES = []

NAMES = ("x", "y", "z")


def ring(p, n=2):
    return RingContext(p, NAMES[:n])


@st.composite
def polys(draw, ctx, max_terms=6, max_exp=4):
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        exp = tuple(draw(st.integers(0, max_exp)) for _ in range(ctx.n))
        terms[exp] = draw(st.integers(1, ctx.p - 1))
    return Polynomial(ctx, terms)


@st.composite
def ring_and_polys(draw, count=2, primes=(2, 3, 5), max_n=3, **kw):
    ctx = ring(draw(st.sampled_from(primes)), draw(st.integers(1, max_n)))
    return (ctx,) + tuple(draw(polys(ctx, **kw)) for _ in range(count))


def random_poly(rng, ctx, max_terms=4, max_deg=4, nonconstant=True):
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            deg = rng.randint(0, max_deg)
            exp = [0] * ctx.n
            for _ in range(deg):
                exp[rng.randrange(ctx.n)] += 1
            terms[tuple(exp)] = rng.randint(1, ctx.p - 1)
        f = Polynomial(ctx, terms)
        if f and (not nonconstant or not f.is_constant()):
            return f


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
