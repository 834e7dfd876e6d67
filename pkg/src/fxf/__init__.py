"""Exact transformations between second-order linear ODEs with rational coefficients."""

from .algebra import Poly, RatFunc, rational_roots, to_rat
from .ode import (
    INFINITY,
    HeunParams,
    HGParams,
    LinearODE2,
    classify,
    classify_full,
    from_heun,
    from_hypergeometric,
    match_heun,
    match_hypergeometric,
)
from .solve import (
    frobenius,
    hg_derivative_check,
    verify_chain_identity,
    verify_product_identity,
    verify_quotient_identity,
    verify_riccati,
)
from .xform import (
    build_inner_heun,
    build_outer_equation,
    companion,
    companion_of,
    heun_companion,
    hg_companion_map,
    mathieu_like_companion,
    reduce_to_hypergeometric,
    reduced_outer_equation,
    solve_eta,
)

__all__ = [
    "INFINITY",
    "HGParams",
    "HeunParams",
    "LinearODE2",
    "Poly",
    "RatFunc",
    "build_inner_heun",
    "build_outer_equation",
    "classify",
    "classify_full",
    "companion",
    "companion_of",
    "frobenius",
    "from_heun",
    "from_hypergeometric",
    "heun_companion",
    "hg_companion_map",
    "hg_derivative_check",
    "match_heun",
    "match_hypergeometric",
    "mathieu_like_companion",
    "rational_roots",
    "reduce_to_hypergeometric",
    "reduced_outer_equation",
    "solve_eta",
    "to_rat",
    "verify_chain_identity",
    "verify_product_identity",
    "verify_quotient_identity",
    "verify_riccati",
]
