import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartier.core import RingContext, parse_poly
from cartier.errors import CartierError, GroebnerBudgetExceeded, UnsupportedIdealClass
from cartier.ideals import (
    GREVLEX,
    LEX,
    Ideal,
    MonomialOrder,
    bracket_power,
    colon_ideal,
    f_pure_test,
    fedder_ideal,
    graded_dim,
    ideal_membership,
    intersection,
    max_degree,
    minimal_generators,
    monomials_of_degree,
    nakayama_minimal_generators,
    normal_form,
    parse_ideal,
    reduced_groebner,
)

from conftest import polys, ring


def ideal(text, ctx):
    return parse_ideal(text, ctx)


def P(text, ctx):
    return parse_poly(text, ctx)


# ---------- Groebner bases ----------

def test_groebner_trivial():
    R = ring(2)
    assert reduced_groebner(ideal("[x]", R)) == [R.var("x")]


def test_groebner_by_hand_lex():
    # S(xy-1, y^2-1) = y(xy-1) - x(y^2-1) = x - y; then {x - y, y^2 - 1} is reduced
    R = ring(5)
    gb = reduced_groebner(ideal("[x*y - 1, y^2 - 1]", R), LEX)
    assert gb == [P("x - y", R), P("y^2 - 1", R)]


def test_groebner_interreduces():
    R = ring(2)
    assert reduced_groebner(ideal("[x^2, x^2 + y]", R)) == [P("x^2", R), P("y", R)]


def test_groebner_unit_and_zero():
    R = ring(3)
    assert reduced_groebner(ideal("[x + 1, x]", R)) == [R.one()]
    assert reduced_groebner(Ideal.zero(R)) == []


def test_groebner_budget_is_explicit():
    R = ring(5)
    I = ideal("[x*y - 1, y^2 - 1]", R)
    with pytest.raises(GroebnerBudgetExceeded):
        I.groebner(LEX, budget=0)
    assert I.groebner(LEX, budget=5)


def test_variable_priority():
    R = ring(3)
    yx = MonomialOrder("lex", (1, 0))
    gb = reduced_groebner(ideal("[x - y^2]", R), yx)
    assert gb[0].leading(yx.key())[0] == (0, 2)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_reduced_basis_is_idempotent(data):
    R = ring(data.draw(st.sampled_from([2, 3, 5])), data.draw(st.integers(1, 3)))
    gens = data.draw(st.lists(polys(R, max_terms=3, max_exp=2), min_size=1, max_size=3))
    order = data.draw(st.sampled_from([GREVLEX, LEX]))
    gb = reduced_groebner(Ideal(gens, R), order)
    assert reduced_groebner(Ideal(gb, R), order) == gb
    for g in gens:
        assert normal_form(g, Ideal(gens, R), order).is_zero()


# ---------- normal forms and membership ----------

def test_normal_form_examples():
    R = ring(2)
    assert normal_form(P("x^2*y", R), ideal("[x^2]", R)).is_zero()
    assert normal_form(P("x^2 + x", R), ideal("[x^2]", R)) == P("x", R)
    assert normal_form(R.one(), ideal("[x, y]", R)) == R.one()


def test_membership_examples():
    R = ring(2)
    assert not ideal_membership(P("x*y", R), ideal("[x^2, y^2]", R))
    assert ideal_membership(P("x^2*y", R), ideal("[x^2]", R))
    assert ideal_membership(R.zero(), ideal("[x]", R))


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_membership_of_combinations(data):
    R = ring(data.draw(st.sampled_from([2, 3])), 2)
    gens = data.draw(st.lists(polys(R, max_terms=3, max_exp=2), min_size=1, max_size=3))
    I = Ideal(gens, R)
    coeffs = data.draw(st.lists(polys(R, max_terms=2, max_exp=2), min_size=len(gens),
                                max_size=len(gens)))
    f = R.zero()
    for h, g in zip(coeffs, gens):
        f = f + h * g
    assert ideal_membership(f, I)
    r = data.draw(polys(R, max_terms=3, max_exp=3))
    nf = normal_form(r, I)
    assert normal_form(nf, I) == nf
    assert ideal_membership(r, I) == nf.is_zero()
    assert ideal_membership(r, I) == normal_form(r, I, LEX).is_zero()


# ---------- bracket powers ----------

def test_bracket_power_examples():
    R = ring(2)
    assert bracket_power(ideal("[x*y]", R), 1).generators == (P("x^2*y^2", R),)
    I = ideal("[x + y^2]", R)
    assert bracket_power(I, 0) is I
    R3 = ring(3)
    assert bracket_power(ideal("[x, y]", R3), 1) == ideal("[x^3, y^3]", R3)


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_bracket_power_generating_set_independent(data):
    R = ring(data.draw(st.sampled_from([2, 3])), 2)
    gens = data.draw(st.lists(polys(R, max_terms=3, max_exp=2), min_size=1, max_size=2))
    I = Ideal(gens, R)
    J = Ideal(reduced_groebner(I) + [gens[0] * R.var("x") + gens[-1]], R)
    assert bracket_power(I, 1) == bracket_power(J, 1)


# ---------- colon ideals ----------

def test_colon_examples():
    R = ring(2)
    assert colon_ideal(ideal("[x^2*y^2]", R), ideal("[x*y]", R)) == ideal("[x*y]", R)
    for p in (2, 3, 5):
        Rp = ring(p)
        assert colon_ideal(ideal("[x^2, y^2]", Rp), ideal("[x]", Rp)) == ideal("[x, y^2]", Rp)
    I = ideal("[x^2 + y, x*y]", R)
    assert colon_ideal(I, ideal("[1]", R)) == I


def test_colon_by_zero_is_an_error():
    R = ring(2)
    with pytest.raises(CartierError):
        colon_ideal(ideal("[x]", R), Ideal.zero(R))


def test_colon_non_monomial_by_hand():
    # ((x^2 - y^2) : (x - y)) = (x + y)
    R = ring(3)
    assert colon_ideal(ideal("[x^2 - y^2]", R), ideal("[x - y]", R)) == ideal("[x + y]", R)


def _brute_colon(I_gens, J_gens, n, box=12):
    """Monomials m in the box with m*g ∈ I for every generator g of J."""
    def in_I(m):
        return any(all(a <= b for a, b in zip(g, m)) for g in I_gens)
    return {
        m for m in itertools.product(range(box + 1), repeat=n)
        if all(in_I(tuple(a + b for a, b in zip(m, g))) for g in J_gens)
    }


def _random_monomials(rng, n, count, top=6):
    return [tuple(rng.randint(0, top) for _ in range(n)) for _ in range(count)]


@pytest.mark.parametrize("seed", range(12))
def test_colon_matches_brute_force_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    R = RingContext(2, ("x", "y", "z")[:n])
    Ig = _random_monomials(rng, n, rng.randint(1, 3))
    Jg = _random_monomials(rng, n, rng.randint(1, 2))
    I, J = Ideal.from_monomials(R, Ig), Ideal.from_monomials(R, Jg)
    fast = colon_ideal(I, J, method="monomial")
    box = 12 if n < 3 else 8
    expected = _brute_colon(Ig, Jg, n, box)
    got = {m for m in itertools.product(range(box + 1), repeat=n)
           if ideal_membership(R.monomial(m), fast)}
    assert got == expected


def test_intersection_by_elimination():
    R = ring(3)
    I, K = ideal("[x^2, y]", R), ideal("[x, y^2]", R)
    assert intersection(I, K, method="groebner") == ideal("[x^2, x*y, y^2]", R)
    A, B = ideal("[x + y]", R), ideal("[x - y]", R)
    assert intersection(A, B) == ideal("[x^2 - y^2]", R)


def test_fedder_never_drops_bracket_power():
    rng = random.Random(7)
    R = RingContext(2, ("x", "y", "z"))
    for _ in range(5):
        gens = [R.monomial(m) + R.monomial(k) for m, k in zip(_random_monomials(rng, 3, 2, 2),
                                                              _random_monomials(rng, 3, 2, 2))]
        I = Ideal(gens, R)
        if I.is_zero():
            continue
        F = fedder_ideal(I, 1)
        assert all(ideal_membership(g, F) for g in bracket_power(I, 1).generators)


# ---------- Fedder and F-purity ----------

def test_fedder_examples():
    R = ring(2)
    assert fedder_ideal(ideal("[x*y]", R), 1) == ideal("[x*y]", R)
    f = P("x^2 + x*y + y^3", R)
    assert ideal_membership(f, fedder_ideal(Ideal([f], R), 1))
    R3 = ring(3)
    assert fedder_ideal(ideal("[x]", R3), 1) == ideal("[x^2]", R3)


def test_fedder_higher_level_principal():
    # ((f^q) : f) = (f^(q-1)) for principal ideals
    R = ring(2)
    f = P("x^2 + y^3", R)
    assert fedder_ideal(Ideal([f], R), 2) == Ideal([f**3], R)


def test_f_pure_examples():
    R = ring(2)
    assert f_pure_test(ideal("[x*y]", R))
    assert not f_pure_test(ideal("[x^2 + y^3]", R))
    for p in (2, 3):
        assert f_pure_test(ideal("[x]", ring(p)))


def test_f_pure_preconditions():
    R = ring(2)
    with pytest.raises(CartierError):
        f_pure_test(ideal("[x + 1]", R))


def test_f_pure_classical_cases():
    R = RingContext(3, ("x", "y", "z"))
    # the Fermat cubic cone is F-pure exactly when p = 1 mod 3
    assert not f_pure_test(ideal("[x^3 + y^3 + z^3]", R))
    R7 = RingContext(7, ("x", "y", "z"))
    assert f_pure_test(ideal("[x^3 + y^3 + z^3]", R7))


# ---------- minimal generators and graded pieces ----------

def test_minimal_generators_examples():
    R = ring(2)
    assert minimal_generators(ideal("[x^2, x^2*y, y^3]", R)) == [P("x^2", R), P("y^3", R)]
    assert len(minimal_generators(ideal("[x, y, x + y]", R))) == 2
    gens = minimal_generators(ideal("[x^2, x*y^8]", R))
    assert gens == [P("x^2", R), P("x*y^8", R)]
    assert max_degree(gens) == 9


def test_minimal_generators_unsupported():
    R = ring(3)
    with pytest.raises(UnsupportedIdealClass):
        minimal_generators(ideal("[x + y^2, y + 1]", R))


def test_minimal_generators_homogeneous_after_groebner():
    # (x^2, x^2 + y^2) has non-homogeneous-looking presentation but is (x^2, y^2)
    R = ring(3)
    assert len(minimal_generators(ideal("[x^2 + y^2, x^2, y^2]", R))) == 2


def test_graded_dim_examples():
    R = ring(2)
    assert graded_dim(Ideal.unit(R), 2) == 3
    assert graded_dim(ideal("[x]", R), 1) == 1
    assert graded_dim(ideal("[x^2]", RingContext(2, ("x",))), 1) == 0


def test_graded_dim_counts_monomials():
    R = RingContext(3, ("x", "y", "z"))
    I = ideal("[x^2, y*z]", R)
    for d in range(6):
        expected = sum(1 for m in monomials_of_degree(3, d) if m[0] >= 2 or (m[1] and m[2]))
        assert graded_dim(I, d) == expected


@pytest.mark.parametrize("seed", range(10))
def test_nakayama_agrees_with_divisibility_pruning(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 3)
    R = RingContext(rng.choice([2, 3]), ("x", "y", "z")[:n])
    exps = _random_monomials(rng, n, rng.randint(1, 5), 4)
    gens = [R.monomial(m) for m in exps]
    assert len(nakayama_minimal_generators(gens, R)) == len(minimal_generators(Ideal(gens, R)))


def test_ideal_parse_positions():
    from cartier.errors import PolynomialSyntaxError
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_ideal("[x, y +]", ring(2))
    assert info.value.position == 7
    assert parse_ideal("[]", ring(2)).is_zero()
    assert parse_ideal("[0]", ring(2)).is_zero()
