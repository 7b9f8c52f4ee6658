"""Dense immutable matrices over one exact field.

Entries are stored row-major as raw field values (see :mod:`exactlu.fields`);
the public surface hands out :class:`Scalar` objects and uses the 1-based
inclusive index ranges that all reports in this package are written in.
"""

from __future__ import annotations

from .errors import FieldMismatchError
from .fields import Field, Scalar


def _rank_raw(rows, field: Field) -> int:
    """Exact Gaussian elimination rank of a list of raw-value rows.

    Deterministic: pivots are the first nonzero entry scanning down each
    column in turn.  The input rows are not modified.
    """
    if not rows or not rows[0]:
        return 0
    work = [list(r) for r in rows]
    n_rows, n_cols = len(work), len(work[0])
    sub, mul, inv = field.sub, field.mul, field.inv
    rank = 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(rank, n_rows):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        pivot_inv = inv(work[rank][col])
        prow = work[rank]
        for r in range(rank + 1, n_rows):
            factor = work[r][col]
            if not factor:
                continue
            factor = mul(factor, pivot_inv)
            row = work[r]
            for c in range(col, n_cols):
                row[c] = sub(row[c], mul(factor, prow[c]))
        rank += 1
        if rank == n_rows:
            break
    return rank


class Matrix:
    """A rows x cols matrix over one field; immutable after construction."""

    __slots__ = ("field", "rows", "cols", "_rows")

    def __init__(self, field: Field, entries):
        raw = []
        for row in entries:
            raw.append(tuple(field.coerce(v) for v in row))
        if not raw or not raw[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(raw[0])
        if any(len(r) != width for r in raw):
            raise ValueError("all matrix rows must have the same length")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(raw))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_rows", tuple(raw))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _from_raw(cls, field: Field, raw_rows) -> "Matrix":
        # Trusted constructor: raw_rows must already hold canonical values.
        self = object.__new__(cls)
        rows = tuple(tuple(r) for r in raw_rows)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)
        object.__setattr__(self, "_rows", rows)
        return self

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        return cls._from_raw(field, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        if n < 1:
            raise ValueError("matrix dimensions must be positive")
        return cls._from_raw(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
        )

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> Scalar:
        """Entry at 1-based position (i, j)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise ValueError(f"entry ({i},{j}) out of range for {self.rows}x{self.cols}")
        return Scalar(self.field, self._rows[i - 1][j - 1])

    def submatrix(self, row_lo: int, row_hi: int, col_lo: int, col_hi: int) -> "Matrix":
        """Copy of the block with 1-based inclusive row and column ranges."""
        if not (1 <= row_lo <= row_hi <= self.rows and 1 <= col_lo <= col_hi <= self.cols):
            raise ValueError(
                f"submatrix ({row_lo}..{row_hi}, {col_lo}..{col_hi}) out of range "
                f"for {self.rows}x{self.cols}"
            )
        return Matrix._from_raw(
            self.field,
            [r[col_lo - 1 : col_hi] for r in self._rows[row_lo - 1 : row_hi]],
        )

    def leading(self, k: int) -> "Matrix":
        """The leading principal k x k submatrix."""
        return self.submatrix(1, k, 1, k)

    def multiply(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            raise TypeError("can only multiply by another Matrix")
        if self.field != other.field:
            raise FieldMismatchError("cannot multiply matrices over different fields")
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: {self.rows}x{self.cols} times {other.rows}x{other.cols}"
            )
        field = self.field
        add, mul = field.add, field.mul
        zero = field.zero
        cols_of_other = list(zip(*other._rows))
        product = []
        for row in self._rows:
            out = []
            for col in cols_of_other:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = add(acc, mul(a, b))
                out.append(acc)
            product.append(out)
        return Matrix._from_raw(field, product)

    def __matmul__(self, other):
        return self.multiply(other)

    def transpose(self) -> "Matrix":
        return Matrix._from_raw(self.field, zip(*self._rows))

    def rank(self) -> int:
        return _rank_raw(self._rows, self.field)

    def is_zero(self) -> bool:
        return all(not v for row in self._rows for v in row)

    def is_lower_triangular(self) -> bool:
        return all(
            not v for i, row in enumerate(self._rows) for j, v in enumerate(row) if j > i
        )

    def is_upper_triangular(self) -> bool:
        return all(
            not v for i, row in enumerate(self._rows) for j, v in enumerate(row) if i > j
        )

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def to_token_rows(self) -> list:
        """Entries as canonical scalar strings, row by row."""
        fmt = self.field.format
        return [[fmt(v) for v in row] for row in self._rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.field, self._rows))

    def __repr__(self):
        body = ", ".join("[" + " ".join(map(self.field.format, r)) + "]" for r in self._rows)
        return f"Matrix({self.field.token} {self.rows}x{self.cols}: {body})"


def row_in_span(v: Matrix, s: Matrix) -> bool:
    """True iff the 1 x n row vector ``v`` lies in the row space of ``s``.

    Decided exactly: rank(s stacked with v) == rank(s).
    """
    if v.rows != 1:
        raise ValueError("v must be a single-row matrix")
    if v.field != s.field:
        raise FieldMismatchError("row and span matrix live over different fields")
    if v.cols != s.cols:
        raise ValueError(f"width mismatch: row has {v.cols} columns, span matrix {s.cols}")
    stacked = list(s._rows) + [v._rows[0]]
    return _rank_raw(stacked, s.field) == s.rank()
