"""The leading-rank conditions that decide LU existence.

A square matrix has an LU factorization exactly when, for every k,

    rank A[{1..k}] + k  >=  rank A[{1..k},{1..n}] + rank A[{1..n},{1..k}]

where A[{1..k}] is the leading principal k x k block, and the other two
terms are the first k rows and the first k columns.  The *failure degree*
is the smallest m by which the right side may exceed the left side over
all k; it is 0 exactly when an LU factorization exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .matrix import Matrix, _rank_raw


@dataclass(frozen=True)
class ConditionRow:
    """Ranks and deficiency for one index k."""

    k: int
    rank_leading: int
    rank_row_block: int
    rank_col_block: int
    deficiency: int


@dataclass(frozen=True)
class ConditionReport:
    n: int
    per_k: tuple
    satisfies: bool
    failure_degree: int


def _require_square(a: Matrix) -> int:
    if not a.is_square:
        raise ValueError(f"matrix must be square, got {a.rows}x{a.cols}")
    return a.rows


def condition_report(a: Matrix) -> ConditionReport:
    """Evaluate the leading-rank conditions for every k = 1..n."""
    n = _require_square(a)
    field: Field = a.field
    raw = a._rows
    per_k = []
    worst = 0
    for k in range(1, n + 1):
        rank_leading = _rank_raw([row[:k] for row in raw[:k]], field)
        rank_row_block = _rank_raw(raw[:k], field)
        rank_col_block = _rank_raw([row[:k] for row in raw], field)
        deficiency = rank_row_block + rank_col_block - rank_leading - k
        worst = max(worst, deficiency)
        per_k.append(ConditionRow(k, rank_leading, rank_row_block, rank_col_block, deficiency))
    return ConditionReport(
        n=n, per_k=tuple(per_k), satisfies=worst <= 0, failure_degree=max(0, worst)
    )


def satisfies_lu_conditions(a: Matrix) -> bool:
    """True iff ``a`` has an LU factorization."""
    return condition_report(a).satisfies


def failure_degree(a: Matrix) -> int:
    """The least m such that ``a`` fails the conditions by at most m."""
    return condition_report(a).failure_degree


def border(a: Matrix, m: int) -> Matrix:
    """Surround ``a`` with m zero rows on top and m zero columns on the left."""
    n = _require_square(a)
    if m < 0:
        raise ValueError("border width must be non-negative")
    if m == 0:
        return a
    field = a.field
    zero = field.zero
    size = n + m
    rows = [[zero] * size for _ in range(m)]
    for row in a._rows:
        rows.append([zero] * m + list(row))
    return Matrix._from_raw(field, rows)


def invertible_has_lu(a: Matrix) -> bool:
    """For invertible ``a``: LU existence via nonsingular leading blocks.

    Raises if ``a`` is singular; for invertible matrices this agrees with
    :func:`satisfies_lu_conditions` but only inspects the leading principal
    submatrices.
    """
    n = _require_square(a)
    if a.rank() != n:
        raise ValueError("matrix is not invertible")
    return all(a.leading(k).rank() == k for k in range(1, n + 1))
