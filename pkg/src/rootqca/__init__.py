"""Exact computation with quantum cluster algebras at roots of unity."""

from .central import ell_power, exchange_identity_check, frobenius_check, full_center_membership
from .cyclotomic import CyclotomicInteger, cyclotomic_polynomial, field_norm, is_unit, root_context, zeta_pow
from .discriminant import (
    cluster_discriminant,
    compare_up_to_unit,
    determinant,
    pbw_presentation,
    regular_trace,
    torus_presentation,
    trace_matrix,
)
from .exchange_graph import canonical_key, classical_shadow_iso, explore
from .kacmoody import CartanDatum, build_unipotent_seed_data, degree_identity_check, theorem_c_check
from .seeds import ExchangeMatrix, Seed, check_compatible, e_matrix, f_matrix, mutate_pair, validate_seed
from .torus import SkewForm, TorusElement, exact_left_divide, in_mixed_torus, is_central_support
from .weyl import WeylAlgebra, weyl_discriminant, weyl_seed

__all__ = [
    "CartanDatum",
    "CyclotomicInteger",
    "ExchangeMatrix",
    "Seed",
    "SkewForm",
    "TorusElement",
    "WeylAlgebra",
    "build_unipotent_seed_data",
    "canonical_key",
    "check_compatible",
    "classical_shadow_iso",
    "cluster_discriminant",
    "compare_up_to_unit",
    "cyclotomic_polynomial",
    "degree_identity_check",
    "determinant",
    "e_matrix",
    "ell_power",
    "exact_left_divide",
    "exchange_identity_check",
    "explore",
    "f_matrix",
    "field_norm",
    "frobenius_check",
    "full_center_membership",
    "in_mixed_torus",
    "is_central_support",
    "is_unit",
    "mutate_pair",
    "pbw_presentation",
    "regular_trace",
    "root_context",
    "theorem_c_check",
    "torus_presentation",
    "trace_matrix",
    "validate_seed",
    "weyl_discriminant",
    "weyl_seed",
    "zeta_pow",
]
