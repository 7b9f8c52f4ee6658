"""Shared test utilities: strategies, exhaustive generators, rank planting."""

import itertools
from fractions import Fraction

import hypothesis.strategies as st

from exactlu import RATIONALS, Matrix, PrimeField

SMALL_FIELDS = (RATIONALS, PrimeField(2), PrimeField(3), PrimeField(5))

field_st = st.sampled_from(SMALL_FIELDS)


@st.composite
def matrices(draw, field=None, max_dim=5, square=False, min_dim=1):
    f = field if field is not None else draw(field_st)
    rows = draw(st.integers(min_dim, max_dim))
    cols = rows if square else draw(st.integers(min_dim, max_dim))
    entries = [[draw(st.integers(-4, 4)) for _ in range(cols)] for _ in range(rows)]
    return Matrix(f, entries)


def all_matrices(field, n):
    """Every n x n matrix over the given prime field, in lexicographic order."""
    p = field.modulus
    for values in itertools.product(range(p), repeat=n * n):
        yield Matrix(field, [values[i * n : (i + 1) * n] for i in range(n)])


def random_value(field, rng):
    if field is RATIONALS:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return rng.randrange(field.modulus)


def random_matrix(field, rows, cols, rng):
    return Matrix(field, [[random_value(field, rng) for _ in range(cols)] for _ in range(rows)])


def planted_matrix(field, n, rank, rng):
    """An n x n matrix of exactly the requested rank.

    Built as X*Y with X = [[I],[R]] (full column rank by construction) and
    Y = [I | R'] (full row rank), then scrambled with invertible row and
    column operations, so the rank is guaranteed without relying on any
    rank computation under test.
    """
    if rank == 0:
        return Matrix.zeros(field, n, n)
    zero, one = field.zero, field.one
    x = [[one if i == j else zero for j in range(rank)] for i in range(n)]
    for i in range(rank, n):
        x[i] = [field.coerce(random_value(field, rng)) for _ in range(rank)]
    y = [[one if i == j else zero for j in range(n)] for i in range(rank)]
    for i in range(rank):
        for j in range(rank, n):
            y[i][j] = field.coerce(random_value(field, rng))
    a = Matrix._from_raw(field, x).multiply(Matrix._from_raw(field, y))

    if n == 1:
        return a
    rows = [list(r) for r in a._rows]
    add, mul = field.add, field.mul
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        c = field.coerce(random_value(field, rng))
        rows[j] = [add(v, mul(c, w)) for v, w in zip(rows[j], rows[i])]
    rng.shuffle(rows)
    cols = [list(col) for col in zip(*rows)]
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        c = field.coerce(random_value(field, rng))
        cols[j] = [add(v, mul(c, w)) for v, w in zip(cols[j], cols[i])]
    rng.shuffle(cols)
    return Matrix._from_raw(field, zip(*cols))
