"""Universal three-factor decompositions: ULU, LUL, PLU and LUP.

Every square matrix admits all four.  The two primitives below make the
leading-rank conditions hold by fixing one deficient index k at a time:
``ulu_transform`` adds a lower row into row k (an invertible unit upper
triangular transform), ``plu_permutation`` swaps row k with a lower row.
Either way the transformed matrix LU-factors, and undoing the transform
yields the decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation
from .fields import Field
from .matrix import Matrix, _rank_raw
from .factor import NoFactorization, lu


class Permutation:
    """A bijection on {1..n}, acting on matrix rows from the left.

    ``mapping[i]`` (1-based) is the source row that lands in position i:
    as a matrix, P has its (i, mapping[i]) entries equal to one, so P*A
    has row i equal to row mapping[i] of A.
    """

    __slots__ = ("n", "mapping")

    def __init__(self, mapping):
        mapping = tuple(int(v) for v in mapping)
        n = len(mapping)
        if n < 1 or sorted(mapping) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection on 1..{n}: {mapping}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mapping", mapping)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.mapping, start=1))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.mapping, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """The permutation acting like self applied after other (P_self * P_other)."""
        if self.n != other.n:
            raise ValueError("cannot compose permutations of different orders")
        return Permutation(other.mapping[v - 1] for v in self.mapping)

    def matrix(self, field: Field) -> Matrix:
        zero, one = field.zero, field.one
        rows = []
        for v in self.mapping:
            row = [zero] * self.n
            row[v - 1] = one
            rows.append(row)
        return Matrix._from_raw(field, rows)

    def apply_left(self, m: Matrix) -> Matrix:
        """P * m: row i of the result is row mapping[i] of m."""
        if m.rows != self.n:
            raise ValueError(f"permutation order {self.n} does not match {m.rows} rows")
        return Matrix._from_raw(m.field, [m._rows[v - 1] for v in self.mapping])

    def apply_right(self, m: Matrix) -> Matrix:
        """m * P: column mapping[j] of the result is column j of m."""
        if m.cols != self.n:
            raise ValueError(f"permutation order {self.n} does not match {m.cols} columns")
        inverse = self.inverse().mapping
        return Matrix._from_raw(
            m.field, [[row[inverse[j] - 1] for j in range(self.n)] for row in m._rows]
        )

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"Permutation({list(self.mapping)})"


@dataclass(frozen=True)
class TripleFactorization:
    """Three factors that multiply back to the input, with attested shapes."""

    kind: str  # "ULU", "LUL", "PLU" or "LUP"
    factors: tuple
    shape_flags: tuple

    def product(self) -> Matrix:
        return multiply_factors(self.factors)


def multiply_factors(factors) -> Matrix:
    """Multiply a sequence of Matrix / Permutation factors left to right."""
    if not factors:
        raise ValueError("no factors to multiply")
    acc = factors[0]
    for nxt in factors[1:]:
        if isinstance(acc, Permutation) and isinstance(nxt, Permutation):
            acc = acc.compose(nxt)
        elif isinstance(acc, Permutation):
            acc = acc.apply_left(nxt)
        elif isinstance(nxt, Permutation):
            acc = nxt.apply_right(acc)
        else:
            acc = acc.multiply(nxt)
    return acc


def _require_square(a: Matrix) -> int:
    if not a.is_square:
        raise ValueError(f"matrix must be square, got {a.rows}x{a.cols}")
    return a.rows


def _fix_deficient_indices(a: Matrix, fix):
    """Shared sweep: call fix(work, k, i) for each deficient k (0-based rows).

    ``fix`` must make the k-prefix of some row <= k leave the span problem
    behind, using source row i > k whose k-prefix lies outside the row span
    of the current leading block.  Verifies the rank equalities afterwards.
    """
    n = a.rows
    field = a.field
    work = [list(row) for row in a._rows]
    for k in range(n):
        prefix = k + 1
        block = [row[:prefix] for row in work[: k + 1]]
        lead = _rank_raw(block, field)
        col_block = _rank_raw([row[:prefix] for row in work], field)
        if lead == col_block:
            continue
        for i in range(k + 1, n):
            if _rank_raw(block + [work[i][:prefix]], field) > lead:
                fix(work, k, i)
                break
        else:
            raise InvariantViolation("no row found to repair a deficient index")
    for k in range(1, n + 1):
        lead = _rank_raw([row[:k] for row in work[:k]], field)
        col_block = _rank_raw([row[:k] for row in work], field)
        if lead != col_block:
            raise InvariantViolation(f"rank equality failed at k={k} after transform")
    return work


def ulu_transform(a: Matrix):
    """Return (m, c) with c = m*a, m unit upper triangular, and every
    leading block of c as large in rank as its full column block.

    Each deficient index is repaired by adding the first qualifying lower
    row into row k with coefficient one; rows above k are never touched
    again, so m ends up unit upper triangular with entries 0 and 1.
    """
    n = _require_square(a)
    field = a.field
    m_rows = [
        [field.one if i == j else field.zero for j in range(n)] for i in range(n)
    ]

    def add_row(work, k, i):
        work[k] = [field.add(x, y) for x, y in zip(work[k], work[i])]
        m_rows[k] = [field.add(x, y) for x, y in zip(m_rows[k], m_rows[i])]

    work = _fix_deficient_indices(a, add_row)
    m = Matrix._from_raw(field, m_rows)
    c = Matrix._from_raw(field, work)
    if m.multiply(a) != c:
        raise InvariantViolation("transform accumulation does not reproduce c")
    return m, c


def plu_permutation(a: Matrix) -> Permutation:
    """The row permutation p0 such that p0*a satisfies the leading-rank
    conditions, built by swapping each deficient row k with the first
    qualifying row below it."""
    n = _require_square(a)
    order = list(range(1, n + 1))

    def swap(work, k, i):
        work[k], work[i] = work[i], work[k]
        order[k], order[i] = order[i], order[k]

    _fix_deficient_indices(a, swap)
    return Permutation(order)


def _invert_unit_upper(m: Matrix) -> Matrix:
    """Inverse of a unit upper triangular matrix by back substitution."""
    n = m.rows
    field = m.field
    src = m._rows
    inv = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            factor = src[i][j]
            if not factor:
                continue
            inv[i] = [
                field.sub(x, field.mul(factor, y)) for x, y in zip(inv[i], inv[j])
            ]
    return Matrix._from_raw(field, inv)


def _checked_lu(c: Matrix):
    result = lu(c)
    if isinstance(result, NoFactorization):
        raise InvariantViolation("transformed matrix unexpectedly has no LU factorization")
    return result


def _verify(decomposition: TripleFactorization, a: Matrix) -> TripleFactorization:
    if decomposition.product() != a:
        raise InvariantViolation(f"{decomposition.kind} factors do not multiply back")
    return decomposition


def ulu(a: Matrix) -> TripleFactorization:
    """Decompose any square ``a`` as U1 * L * U2 with U1 invertible."""
    m, c = ulu_transform(a)
    pair = _checked_lu(c)
    u1 = _invert_unit_upper(m)
    return _verify(
        TripleFactorization(
            kind="ULU",
            factors=(u1, pair.lower, pair.upper),
            shape_flags=("upper-triangular invertible", "lower-triangular", "upper-triangular"),
        ),
        a,
    )


def lul(a: Matrix) -> TripleFactorization:
    """Decompose any square ``a`` as L1 * U * L2 with L2 invertible."""
    inner = ulu(a.transpose())
    u1, low, u2 = inner.factors
    return _verify(
        TripleFactorization(
            kind="LUL",
            factors=(u2.transpose(), low.transpose(), u1.transpose()),
            shape_flags=("lower-triangular", "upper-triangular", "lower-triangular invertible"),
        ),
        a,
    )


def plu(a: Matrix) -> TripleFactorization:
    """Decompose any square ``a`` as P * L * U with P a permutation."""
    p0 = plu_permutation(a)
    pair = _checked_lu(p0.apply_left(a))
    return _verify(
        TripleFactorization(
            kind="PLU",
            factors=(p0.inverse(), pair.lower, pair.upper),
            shape_flags=("permutation", "lower-triangular", "upper-triangular"),
        ),
        a,
    )


def lup(a: Matrix) -> TripleFactorization:
    """Decompose any square ``a`` as L * U * P with P a permutation."""
    inner = plu(a.transpose())
    p0, low, up = inner.factors
    return _verify(
        TripleFactorization(
            kind="LUP",
            factors=(up.transpose(), low.transpose(), p0.inverse()),
            shape_flags=("lower-triangular", "upper-triangular", "permutation"),
        ),
        a,
    )
