"""Exhaustive ground truth for tiny instances, independent of the main path.

Everything here works on plain integers mod p rather than the package's
scalar and matrix types, so a bug in the main kernels cannot hide in the
oracle.  Domains are capped hard (p <= 3, n <= 3): the largest sweep,
all 512 matrices over GF(2) at n = 3, stays comfortably fast while the
search space is still covered in full.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .conditions import failure_degree, satisfies_lu_conditions
from .factor import FactorPair, priority_factor
from .matrix import Matrix
from .fields import PrimeField

PRIME_CAP = 3
ORDER_CAP = 3


def _as_residue_rows(a: Matrix):
    field = a.field
    if not isinstance(field, PrimeField) or field.modulus > PRIME_CAP:
        raise ValueError(f"oracle domain is GF(p) with p <= {PRIME_CAP}, got {field.token}")
    if not a.is_square or a.rows > ORDER_CAP:
        raise ValueError(f"oracle domain is square matrices of order <= {ORDER_CAP}")
    return tuple(tuple(int(v) for v in row) for row in a._rows), field.modulus


def lower_mask(n: int, extra: int = 0):
    """Free positions of an almost lower triangular matrix (extra diagonals)."""
    return tuple(tuple(j <= i + extra for j in range(n)) for i in range(n))


def upper_mask(n: int, extra: int = 0):
    """Free positions of an almost upper triangular matrix (extra diagonals)."""
    return tuple(tuple(i <= j + extra for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class EnumerationDomain:
    """All n x n matrices over GF(modulus) that are zero off a free-position mask."""

    modulus: int
    n: int
    mask: tuple

    @property
    def free_positions(self):
        return [(i, j) for i in range(self.n) for j in range(self.n) if self.mask[i][j]]

    @property
    def size(self) -> int:
        return self.modulus ** len(self.free_positions)

    def matrices(self):
        """Yield each matrix as a tuple of row tuples, in lexicographic
        order over the free entries read row-major."""
        positions = self.free_positions
        for values in itertools.product(range(self.modulus), repeat=len(positions)):
            rows = [[0] * self.n for _ in range(self.n)]
            for (i, j), v in zip(positions, values):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def _column_candidates(n: int, p: int, mask_col, target_col, left_rows):
    """First column vector (lex order over its free entries) such that
    left_rows * column == target_col, or None."""
    free = [i for i in range(n) if mask_col[i]]
    for values in itertools.product(range(p), repeat=len(free)):
        column = [0] * n
        for i, v in zip(free, values):
            column[i] = v
        ok = True
        for r in range(n):
            acc = 0
            row = left_rows[r]
            for t in range(n):
                acc += row[t] * column[t]
            if acc % p != target_col[r]:
                ok = False
                break
        if ok:
            return tuple(column)
    return None


def _find_product_witness(a_rows, p: int, left_mask, right_mask):
    """Lexicographically first (K, W) with K*W == a, K zero off left_mask
    and W zero off right_mask, or None.

    Enumerates every K; for a fixed K the columns of W are independent, so
    the lex-least W (row-major entry order) is assembled column by column.
    """
    n = len(a_rows)
    domain = EnumerationDomain(p, n, left_mask)
    right_cols = [tuple(right_mask[i][j] for i in range(n)) for j in range(n)]
    target_cols = [tuple(a_rows[i][j] for i in range(n)) for j in range(n)]
    for left in domain.matrices():
        columns = []
        for j in range(n):
            col = _column_candidates(n, p, right_cols[j], target_cols[j], left)
            if col is None:
                break
            columns.append(col)
        else:
            right = tuple(zip(*columns))
            return left, right
    return None


def lu_witness_bruteforce(a: Matrix):
    """The first triangular pair (L, U) with L*U == a, or None."""
    rows, p = _as_residue_rows(a)
    n = len(rows)
    return _find_product_witness(rows, p, lower_mask(n), upper_mask(n))


def exists_lu_bruteforce(a: Matrix) -> bool:
    """Full-enumeration LU existence over GF(p), p <= 3, n <= 3."""
    return lu_witness_bruteforce(a) is not None


def min_extra_diagonals_bruteforce(a: Matrix) -> int:
    """Least m such that some almost-triangular pair with m extra diagonals
    multiplies to ``a``; at most n-1 (with n-1 diagonals nothing is pinned)."""
    rows, p = _as_residue_rows(a)
    n = len(rows)
    for m in range(n):
        if _find_product_witness(rows, p, lower_mask(n, m), upper_mask(n, m)) is not None:
            return m
    raise AssertionError("unreachable: m = n-1 leaves both factors unconstrained")


def frobenius_rank_bounds(x: Matrix, y: Matrix) -> bool:
    """Check rank X + rank Y - k <= rank XY <= min(rank X, rank Y).

    Always true for a correct rank kernel; a False return means the rank
    computation itself is broken.
    """
    z = x.multiply(y)
    k = x.cols
    rx, ry, rz = x.rank(), y.rank(), z.rank()
    return rx + ry - k <= rz <= min(rx, ry)


@dataclass(frozen=True)
class SweepResult:
    name: str
    cases: int
    failures: int
    first_counterexample: str | None

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class SelftestResult:
    sweeps: tuple

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sweeps)


def _all_matrices(field: PrimeField, n: int):
    p = field.modulus
    for values in itertools.product(range(p), repeat=n * n):
        yield Matrix(field, [values[i * n : (i + 1) * n] for i in range(n)])


def _describe(a: Matrix) -> str:
    rows = ";".join(",".join(str(v) for v in row) for row in a._rows)
    return f"[{rows}] over {a.field.token}"


def run_selftest() -> SelftestResult:
    """Cross-check theory, algorithm and brute force on exhaustive domains."""
    sweeps = []

    domains = [(PrimeField(2), 1), (PrimeField(2), 2), (PrimeField(2), 3),
               (PrimeField(3), 1), (PrimeField(3), 2)]
    cases = failures = 0
    first = None
    for field, n in domains:
        for a in _all_matrices(field, n):
            cases += 1
            by_conditions = satisfies_lu_conditions(a)
            by_enumeration = exists_lu_bruteforce(a)
            by_algorithm = priority_factor(a).is_triangular
            if not (by_conditions == by_enumeration == by_algorithm):
                failures += 1
                if first is None:
                    first = (
                        f"{_describe(a)}: conditions={by_conditions} "
                        f"bruteforce={by_enumeration} algorithm={by_algorithm}"
                    )
    sweeps.append(SweepResult("lu-existence agreement (GF(2) n<=3, GF(3) n<=2)",
                              cases, failures, first))

    cases = failures = 0
    first = None
    for n in (1, 2, 3):
        for a in _all_matrices(PrimeField(2), n):
            cases += 1
            degree = failure_degree(a)
            by_enumeration = min_extra_diagonals_bruteforce(a)
            pair: FactorPair = priority_factor(a)
            by_algorithm = max(pair.extra_lower, pair.extra_upper)
            if not (degree == by_enumeration == by_algorithm):
                failures += 1
                if first is None:
                    first = (
                        f"{_describe(a)}: degree={degree} "
                        f"bruteforce={by_enumeration} algorithm={by_algorithm}"
                    )
    sweeps.append(SweepResult("failure-degree agreement (GF(2) n<=3)",
                              cases, failures, first))

    import random

    rng = random.Random(1789)
    cases = failures = 0
    first = None
    from .fields import RATIONALS

    for field in (RATIONALS, PrimeField(5)):
        for _ in range(100):
            rows_x, k, cols_y = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
            x = Matrix(field, [[rng.randint(-4, 4) for _ in range(k)] for _ in range(rows_x)])
            y = Matrix(field, [[rng.randint(-4, 4) for _ in range(cols_y)] for _ in range(k)])
            cases += 1
            if not frobenius_rank_bounds(x, y):
                failures += 1
                if first is None:
                    first = f"X={_describe(x)} Y={_describe(y)}"
    sweeps.append(SweepResult("rank product bounds (200 random pairs)",
                              cases, failures, first))

    return SelftestResult(sweeps=tuple(sweeps))
