"""Univariate and multivariate polynomial arithmetic over finite fields."""

from pcurvature.polyring.multivariate import (
    MPoly,
    VarSet,
    coefficient_list,
    coefficients_in,
    degree_in,
    diff,
    evaluate,
    monic,
    parse,
    polynomial_ring,
    render,
    resultant,
    solve_linear,
    specialize,
    substitute,
    to_json,
    to_upoly,
    total_degree_in,
)
from pcurvature.polyring.univariate import (
    UPoly,
    count_distinct_roots_closure,
    distinct_degree_factorization,
    equal_degree_factorization,
    field_embedding,
    find_root,
    irreducible_factors,
    orbit,
    residue_field,
    roots_in_ext,
    squarefree_decomposition,
    squarefree_part,
    upoly_gcd,
)

__all__ = [
    "MPoly",
    "UPoly",
    "VarSet",
    "coefficient_list",
    "coefficients_in",
    "count_distinct_roots_closure",
    "degree_in",
    "diff",
    "distinct_degree_factorization",
    "equal_degree_factorization",
    "evaluate",
    "field_embedding",
    "find_root",
    "irreducible_factors",
    "monic",
    "orbit",
    "parse",
    "polynomial_ring",
    "render",
    "residue_field",
    "resultant",
    "roots_in_ext",
    "solve_linear",
    "specialize",
    "squarefree_decomposition",
    "squarefree_part",
    "substitute",
    "to_json",
    "to_upoly",
    "total_degree_in",
    "upoly_gcd",
]
