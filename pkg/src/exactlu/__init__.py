"""Exact LU and almost-LU factorizations over Q and GF(p).

Decides when a square matrix over an exact field admits an LU
factorization, measures how badly it fails, and constructs LU, almost-LU
(extra diagonals, extra columns/rows), ULU, LUL, PLU and LUP
factorizations with a deterministic priority-pivot algorithm.
"""

from .conditions import (
    ConditionReport,
    ConditionRow,
    border,
    condition_report,
    failure_degree,
    invertible_has_lu,
    satisfies_lu_conditions,
)
from .decompositions import (
    Permutation,
    TripleFactorization,
    lul,
    lup,
    multiply_factors,
    plu,
    plu_permutation,
    ulu,
    ulu_transform,
)
from .errors import FieldMismatchError, InvariantViolation, ParseError
from .factor import (
    FactorPair,
    NoFactorization,
    PivotStep,
    RectangularFactorization,
    almost_lu,
    bordered_lu,
    lu,
    pivot_priority,
    priority_factor,
)
from .fields import (
    RATIONALS,
    Field,
    PrimeField,
    Rationals,
    Scalar,
    field_from_token,
    parse_scalar,
)
from .matio import (
    format_factor_blocks,
    format_matrix,
    format_permutation,
    parse_factor_blocks,
    parse_matrix_text,
)
from .matrix import Matrix, row_in_span
from .oracle import (
    EnumerationDomain,
    exists_lu_bruteforce,
    frobenius_rank_bounds,
    lu_witness_bruteforce,
    min_extra_diagonals_bruteforce,
    run_selftest,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionReport",
    "ConditionRow",
    "EnumerationDomain",
    "FactorPair",
    "Field",
    "FieldMismatchError",
    "InvariantViolation",
    "Matrix",
    "NoFactorization",
    "ParseError",
    "Permutation",
    "PivotStep",
    "PrimeField",
    "RATIONALS",
    "Rationals",
    "RectangularFactorization",
    "Scalar",
    "TripleFactorization",
    "almost_lu",
    "border",
    "bordered_lu",
    "condition_report",
    "exists_lu_bruteforce",
    "failure_degree",
    "field_from_token",
    "format_factor_blocks",
    "format_matrix",
    "format_permutation",
    "frobenius_rank_bounds",
    "invertible_has_lu",
    "lu",
    "lu_witness_bruteforce",
    "lul",
    "lup",
    "min_extra_diagonals_bruteforce",
    "multiply_factors",
    "parse_factor_blocks",
    "parse_matrix_text",
    "parse_scalar",
    "pivot_priority",
    "plu",
    "plu_permutation",
    "priority_factor",
    "row_in_span",
    "run_selftest",
    "satisfies_lu_conditions",
    "ulu",
    "ulu_transform",
]
