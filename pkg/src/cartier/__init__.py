"""Exact computations with Cartier algebras over polynomial rings F_p[x_1..x_n]."""

from .analysis import (
    complexity_sequence,
    gauge_growth,
    lemma_fit,
    monomial_count_bound,
    new_generator_count,
    product_piece,
    theorem_consistency_check,
)
from .core import (
    Polynomial,
    RingContext,
    format_poly,
    frobenius_pow,
    max_norm,
    parse_poly,
    poly_add,
    poly_mul,
    total_degree,
)
from .errors import CartierError, UnsupportedIdealClass
from .ideals import (
    Ideal,
    MonomialOrder,
    bracket_power,
    colon_ideal,
    f_pure_test,
    fedder_ideal,
    graded_dim,
    ideal_membership,
    minimal_generators,
    normal_form,
    reduced_groebner,
)
from .operators import (
    CartierAlgebraSpec,
    CartierOperator,
    algebra_component,
    gauge,
    gauge_excess,
    kappa_eval,
    op_apply,
    op_compose,
    validate_subalgebra,
)

__version__ = "0.1.0"

__all__ = [
    "algebra_component",
    "bracket_power",
    "CartierAlgebraSpec",
    "CartierError",
    "CartierOperator",
    "colon_ideal",
    "complexity_sequence",
    "f_pure_test",
    "fedder_ideal",
    "format_poly",
    "frobenius_pow",
    "gauge",
    "gauge_excess",
    "gauge_growth",
    "graded_dim",
    "Ideal",
    "ideal_membership",
    "kappa_eval",
    "lemma_fit",
    "max_norm",
    "minimal_generators",
    "monomial_count_bound",
    "MonomialOrder",
    "new_generator_count",
    "normal_form",
    "op_apply",
    "op_compose",
    "parse_poly",
    "poly_add",
    "poly_mul",
    "Polynomial",
    "product_piece",
    "reduced_groebner",
    "RingContext",
    "theorem_consistency_check",
    "total_degree",
    "UnsupportedIdealClass",
    "validate_subalgebra",
]
