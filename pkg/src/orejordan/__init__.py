"""Exact computation with linear partial differential operators.

Operators live in the Ore ring ``K[d_1..d_m]`` over a differential field of
rational functions.  On top of left Groebner bases the package provides
left-ideal sums and intersections, dimension polynomials and gauges, and
gauge-level analysis of normal series of solution groups.
"""

__version__ = "0.1.0"

from .coeffield import FieldSpec, derive, field_add, field_div, field_mul, load_spec
from .errors import (ClosureError, DivisionByZero, DuplicateName, EmptyFactorList,
                     InvalidChain, MismatchedTop, OreError, ParseError, ResourceExceeded,
                     SpecMismatch, UnknownSymbol, WrongArity, WrongKind, ZeroOperator)
from .gauge import (Gauge, NumericalPolynomial, Staircase, analyze_ideal,
                    dimension_polynomial, dimension_polynomial_m2, gauge_of,
                    gauge_of_ideal, hilbert_count, staircase_of)
from .groebner import (GroebnerBasis, LeftIdeal, budget_limit, buchberger,
                       check_right_factor, ideal_intersect, ideal_sum, is_groebner_basis,
                       member, principal_generator, s_polynomial)
from .ore import (OreOperator, TermOrder, leading_index, leading_term, op_add, op_mul,
                  parse_operator, render, right_reduce, verify_factorization,
                  verify_intertwine)
from .series import (Chain, GaugeComparison, Refinement, SeriesReport, analyze,
                     chain_from_right_factorization, compare_quotient_gauges, group_intersect,
                     group_sum, make_chain, refine, validate_chain)

__all__ = [
    "analyze", "analyze_ideal", "buchberger", "budget_limit", "Chain",
    "chain_from_right_factorization", "check_right_factor", "ClosureError",
    "compare_quotient_gauges", "derive", "dimension_polynomial", "dimension_polynomial_m2",
    "DivisionByZero", "DuplicateName", "EmptyFactorList", "field_add", "field_div",
    "field_mul", "FieldSpec", "Gauge", "gauge_of", "gauge_of_ideal", "GaugeComparison",
    "GroebnerBasis", "group_intersect", "group_sum", "hilbert_count", "ideal_intersect",
    "ideal_sum", "InvalidChain", "is_groebner_basis", "leading_index", "leading_term",
    "LeftIdeal", "load_spec", "make_chain", "member", "MismatchedTop",
    "NumericalPolynomial", "op_add", "op_mul", "OreError", "OreOperator", "parse_operator",
    "ParseError", "principal_generator", "refine", "Refinement", "render",
    "ResourceExceeded", "right_reduce", "s_polynomial", "SeriesReport", "SpecMismatch",
    "Staircase", "staircase_of", "TermOrder", "UnknownSymbol", "validate_chain",
    "verify_factorization", "verify_intertwine", "WrongArity", "WrongKind", "ZeroOperator"
]
