"""Priority-pivot factorization and the LU / almost-LU front ends.

The core routine peels one rank off a working residual per step: it picks
the nonzero entry whose position has the smallest priority, copies that
entry's column into the next column of ``lower`` and its scaled row into
the next row of ``upper``, and subtracts their outer product.  The product
``lower * upper`` always reconstructs the input; the input has an LU
factorization exactly when both outputs come out triangular.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conditions import ConditionReport, border, condition_report
from .errors import InvariantViolation
from .matrix import Matrix


def pivot_priority(i: int, j: int, n: int) -> int:
    """Scan priority of position (i, j) in an n x n matrix (1-based).

    Mirror positions share a value; priorities fill the upper triangle
    row by row, so the diagonal-first scan below meets positions in
    strictly increasing priority order.
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"position ({i},{j}) out of range for order {n}")
    if i > j:
        i, j = j, i
    return (i - 1) * n - (i - 1) * (i - 2) // 2 + (j - i + 1)


@dataclass(frozen=True)
class PivotStep:
    """One step of the factorization: either a pivot position or nothing."""

    k: int
    position: tuple | None
    priority: int | None


@dataclass(frozen=True)
class FactorPair:
    """Result of the priority-pivot run: ``lower * upper`` equals the input.

    ``extra_lower`` / ``extra_upper`` measure how far each factor is from
    triangular: the largest distance of a nonzero entry above (resp. below)
    the main diagonal, 0 for a genuinely triangular factor.
    """

    lower: Matrix
    upper: Matrix
    extra_lower: int
    extra_upper: int
    pivot_trace: tuple

    @property
    def is_triangular(self) -> bool:
        return self.extra_lower == 0 and self.extra_upper == 0


@dataclass(frozen=True)
class RectangularFactorization:
    """A = left * right with rectangular almost-triangular factors.

    ``left`` is n x (n+extra) and its last n columns form a lower
    triangular block; ``right`` is (n+extra) x n and its last n rows form
    an upper triangular block.
    """

    extra: int
    left: Matrix
    right: Matrix
    pivot_trace: tuple


@dataclass(frozen=True)
class NoFactorization:
    """Negative result carrying diagnostics instead of factors."""

    report: ConditionReport
    attempt: FactorPair | None = None


def _extra_above_diagonal(m: Matrix) -> int:
    worst = 0
    for i, row in enumerate(m._rows):
        for j in range(i + 1 + worst, len(row)):
            if row[j]:
                worst = j - i
    return worst


def priority_factor(a: Matrix) -> FactorPair:
    """Run the priority-pivot rank-one-update factorization on ``a``.

    Always returns a pair whose product is exactly ``a``; the pivot trace
    records the chosen position (or none, once the residual is zero) for
    each of the n steps.
    """
    if not a.is_square:
        raise ValueError(f"matrix must be square, got {a.rows}x{a.cols}")
    n = a.rows
    field = a.field
    zero = field.zero
    sub, mul, inv = field.sub, field.mul, field.inv

    residual = [list(row) for row in a._rows]
    lower_cols = []
    upper_rows = []
    trace = []
    for k in range(1, n + 1):
        pivot = None
        for i in range(n):
            for j in range(i, n):
                if residual[i][j]:
                    pivot = (i, j)
                    break
                if residual[j][i]:
                    pivot = (j, i)
                    break
            if pivot:
                break
        if pivot is None:
            lower_cols.append([zero] * n)
            upper_rows.append([zero] * n)
            trace.append(PivotStep(k, None, None))
            continue
        r, c = pivot
        pivot_inv = inv(residual[r][c])
        col = [residual[t][c] for t in range(n)]
        row = [mul(pivot_inv, v) for v in residual[r]]
        lower_cols.append(col)
        upper_rows.append(row)
        trace.append(PivotStep(k, (r + 1, c + 1), pivot_priority(r + 1, c + 1, n)))
        for t in range(n):
            factor = col[t]
            if not factor:
                continue
            target = residual[t]
            for s in range(n):
                if row[s]:
                    target[s] = sub(target[s], mul(factor, row[s]))

    lower = Matrix._from_raw(field, zip(*lower_cols))
    upper = Matrix._from_raw(field, upper_rows)
    return FactorPair(
        lower=lower,
        upper=upper,
        extra_lower=_extra_above_diagonal(lower),
        extra_upper=_extra_above_diagonal(upper.transpose()),
        pivot_trace=tuple(trace),
    )


def lu(a: Matrix):
    """LU-factor ``a``, or explain why no LU factorization exists.

    Returns a triangular :class:`FactorPair` when one exists, otherwise a
    :class:`NoFactorization` carrying the condition report and the
    non-triangular pair the run produced.
    """
    pair = priority_factor(a)
    if pair.is_triangular:
        return pair
    return NoFactorization(report=condition_report(a), attempt=pair)


def almost_lu(a: Matrix, extra: int):
    """Factor ``a`` into almost-triangular factors with ``extra`` diagonals.

    Succeeds exactly when the failure degree of ``a`` is at most ``extra``;
    both factors then vanish beyond ``extra`` diagonals on the wrong side
    of the main diagonal.
    """
    if extra < 0:
        raise ValueError("extra diagonal count must be non-negative")
    pair = priority_factor(a)
    if pair.extra_lower <= extra and pair.extra_upper <= extra:
        return pair
    return NoFactorization(report=condition_report(a), attempt=pair)


def bordered_lu(a: Matrix, extra: int):
    """Factor ``a = left * right`` with ``extra`` extra columns and rows.

    Borders ``a`` with ``extra`` zero rows and columns, factors the result,
    and trims the guaranteed zero blocks off the factors.  Succeeds exactly
    when the failure degree of ``a`` is at most ``extra``; the outcome is
    always a full-rank factorization of ``a``.
    """
    if not a.is_square:
        raise ValueError(f"matrix must be square, got {a.rows}x{a.cols}")
    if extra < 0:
        raise ValueError("extra size must be non-negative")
    n = a.rows
    report = condition_report(a)
    if report.failure_degree > extra:
        return NoFactorization(report=report)
    pair = priority_factor(border(a, extra))
    lower, upper = pair.lower, pair.upper
    if extra:
        # Bordering guarantees the first `extra` rows of the lower factor
        # and columns of the upper factor are zero; trimming them off must
        # leave the product intact.
        for i in range(extra):
            if any(lower._rows[i]) or any(row[i] for row in upper._rows):
                raise InvariantViolation(
                    "bordered factorization did not produce the expected zero blocks"
                )
    left = lower.submatrix(extra + 1, n + extra, 1, n + extra) if extra else lower
    right = upper.submatrix(1, n + extra, extra + 1, n + extra) if extra else upper
    return RectangularFactorization(
        extra=extra, left=left, right=right, pivot_trace=pair.pivot_trace
    )
