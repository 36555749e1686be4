"""
twistfuse - fusion rules of the loop group LSU(2N) at level ell and of its
twisted module indexed by Sp(N) signatures.

This package provides utilities for:
- Enumerating level-permissible signatures and vertical-strip operations
- Level-truncated Pieri and Sundaram rules
- Weyl characters at the evaluation points and quantum dimensions
- Fusion matrices by a combinatorial route and an evaluation route
- Verification of both routes over a grid of (N, level)
- The distinct-parts / odd-parts power-series identity
"""

from .branching import (
    ReflectionError,
    pieri_classical,
    pieri_level,
    reflect_twisted,
    sundaram_classical,
    sundaram_level,
)
from .characters import (
    EvaluationError,
    character_table,
    chi_gl,
    closed_form_diagnostics,
    eval_point,
    points_distinguished,
    psi_sp,
    quantum_dims,
    sp_fundamental_check,
    weyl_dim,
)
from .config import DEFAULT_GRID, DEFAULT_TOLERANCES, LevelContext, Tolerances
from .fusion import (
    BasisFailure,
    FusionError,
    FusionMatrix,
    RouteFailure,
    VerifyReport,
    fundamental_matrix_untwisted,
    fuse_module,
    general_fusion_untwisted,
    k0_square,
    module_matrix_routeA,
    module_matrix_routeB,
    twisted_dims_sum_check,
    verify_suite,
    verlinde_su2,
)
from .qseries import TruncatedSeries, euler_check, partition_oracle, series_product
from .sigcore import (
    FormalCombination,
    GLSignature,
    HalfIntVector,
    SpSignature,
    add_vertical_strips,
    count_untwisted_basis,
    dual_gl,
    enumerate_eval_set,
    enumerate_paired,
    enumerate_twisted_basis,
    enumerate_untwisted_basis,
    normalize_gl,
    remove_vertical_strips,
)
from .tables import export_tables

__all__ = [
    "LevelContext",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "DEFAULT_GRID",
    "GLSignature",
    "SpSignature",
    "HalfIntVector",
    "FormalCombination",
    "normalize_gl",
    "dual_gl",
    "add_vertical_strips",
    "remove_vertical_strips",
    "enumerate_untwisted_basis",
    "count_untwisted_basis",
    "enumerate_twisted_basis",
    "enumerate_paired",
    "enumerate_eval_set",
    "pieri_classical",
    "pieri_level",
    "sundaram_classical",
    "sundaram_level",
    "reflect_twisted",
    "ReflectionError",
    "eval_point",
    "chi_gl",
    "psi_sp",
    "weyl_dim",
    "quantum_dims",
    "character_table",
    "sp_fundamental_check",
    "points_distinguished",
    "closed_form_diagnostics",
    "EvaluationError",
    "FusionMatrix",
    "fundamental_matrix_untwisted",
    "general_fusion_untwisted",
    "module_matrix_routeA",
    "module_matrix_routeB",
    "fuse_module",
    "k0_square",
    "verlinde_su2",
    "twisted_dims_sum_check",
    "verify_suite",
    "VerifyReport",
    "FusionError",
    "RouteFailure",
    "BasisFailure",
    "TruncatedSeries",
    "series_product",
    "euler_check",
    "partition_oracle",
    "export_tables",
]
