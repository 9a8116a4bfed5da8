"""Exact computations for discriminants of finite reflection groups.

The package covers basic invariants, Jacobians and discriminants, matrix
factorizations of the discriminant, isotypical Hilbert series with the rank
formulas derived from them, and McKay quivers.
"""

from __future__ import annotations

from .groups import ReflectionGroup, build_group, character_table, conjugacy_classes, linear_characters
from .invariants import (
    basic_invariants,
    coinvariant_basis,
    discriminant,
    free_coords,
    jacobian_poly,
    arrangement_poly,
    reynolds,
    rewrite_in_invariants,
    twisted_reynolds,
)
from .isotypic import (
    abar_hilbert,
    kirillov_series,
    m_series,
    molien_isotypic,
    rank_abar,
    rank_abar_component,
    rank_isotypic,
    rank_sn,
)
from .linalg import PolyMatrix, compound_matrix, determinant, linear_solve
from .matfact import (
    hovinen_matrix,
    isotypic_blocks,
    monomial_log_mf,
    mult_matrix,
    nabla_det_at,
    nabla_matrix,
    group_matrix,
    verify_mf,
)
from .mckay import abar_quiver, mckay_quiver_chars, mckay_quiver_sn, to_dot
from .partitions import Partition, cell_stats, character_value_sn, single_block_moves
from .poly import Poly, PolyRing, exact_divide, parse_poly
from .scalars import Cyc, zeta
from .series import SeriesQuotient, series_value_at_one

__version__ = "0.1.0"

__all__ = [
    "ReflectionGroup",
    "build_group",
    "character_table",
    "conjugacy_classes",
    "linear_characters",
    "basic_invariants",
    "coinvariant_basis",
    "discriminant",
    "free_coords",
    "jacobian_poly",
    "arrangement_poly",
    "reynolds",
    "rewrite_in_invariants",
    "twisted_reynolds",
    "abar_hilbert",
    "kirillov_series",
    "m_series",
    "molien_isotypic",
    "rank_abar",
    "rank_abar_component",
    "rank_isotypic",
    "rank_sn",
    "PolyMatrix",
    "compound_matrix",
    "determinant",
    "linear_solve",
    "hovinen_matrix",
    "isotypic_blocks",
    "monomial_log_mf",
    "mult_matrix",
    "nabla_det_at",
    "nabla_matrix",
    "group_matrix",
    "verify_mf",
    "abar_quiver",
    "mckay_quiver_chars",
    "mckay_quiver_sn",
    "to_dot",
    "Partition",
    "cell_stats",
    "character_value_sn",
    "single_block_moves",
    "Poly",
    "PolyRing",
    "exact_divide",
    "parse_poly",
    "Cyc",
    "zeta",
    "SeriesQuotient",
    "series_value_at_one",
    "__version__",
]
