import random

import pytest
from hypothesis import given
import hypothesis.strategies as st

from exactlu import (
    RATIONALS,
    EnumerationDomain,
    Matrix,
    PrimeField,
    exists_lu_bruteforce,
    failure_degree,
    frobenius_rank_bounds,
    lu_witness_bruteforce,
    min_extra_diagonals_bruteforce,
    run_selftest,
    satisfies_lu_conditions,
)
from exactlu.oracle import lower_mask, upper_mask
from helpers import all_matrices, random_matrix

F2 = PrimeField(2)
F3 = PrimeField(3)


def test_exists_lu_examples():
    assert not exists_lu_bruteforce(Matrix(F2, [[0, 1], [1, 0]]))
    assert exists_lu_bruteforce(Matrix(F2, [[0, 0], [0, 1]]))
    assert exists_lu_bruteforce(Matrix.zeros(F2, 3, 3))
    assert exists_lu_bruteforce(Matrix.identity(F3, 2))


def test_witness_is_real_and_stated_pair_works():
    a = Matrix(F2, [[0, 0], [0, 1]])
    left, right = lu_witness_bruteforce(a)
    k = Matrix(F2, left)
    w = Matrix(F2, right)
    assert k.is_lower_triangular() and w.is_upper_triangular()
    assert k @ w == a
    # an independently stated witness for the same matrix
    assert Matrix(F2, [[0, 0], [1, 0]]) @ Matrix(F2, [[0, 1], [0, 0]]) == a


def test_min_extra_diagonals_examples():
    assert min_extra_diagonals_bruteforce(Matrix(F2, [[0, 1], [1, 0]])) == 1
    assert min_extra_diagonals_bruteforce(Matrix.zeros(F2, 2, 2)) == 0
    assert min_extra_diagonals_bruteforce(Matrix.identity(F2, 3)) == 0


def test_domain_caps_enforced():
    with pytest.raises(ValueError):
        exists_lu_bruteforce(Matrix(PrimeField(5), [[1]]))
    with pytest.raises(ValueError):
        exists_lu_bruteforce(Matrix.identity(F2, 4))
    with pytest.raises(ValueError):
        exists_lu_bruteforce(Matrix(RATIONALS, [[1]]))
    with pytest.raises(ValueError):
        min_extra_diagonals_bruteforce(Matrix(F2, [[1, 0, 0, 0]] * 4))


def test_enumeration_domain_size_and_order():
    domain = EnumerationDomain(2, 2, lower_mask(2))
    assert domain.size == 8
    listing = list(domain.matrices())
    assert len(listing) == 8
    assert listing[0] == ((0, 0), (0, 0))
    assert listing[1] == ((0, 0), (0, 1))  # last free entry varies fastest
    assert listing[-1] == ((1, 0), (1, 1))
    assert len(set(listing)) == 8

    full = EnumerationDomain(3, 2, upper_mask(2, extra=1))
    assert full.size == 3**4


def test_masks():
    assert lower_mask(3) == ((True, False, False), (True, True, False), (True, True, True))
    assert upper_mask(3, extra=1) == (
        (True, True, True),
        (True, True, True),
        (False, True, True),
    )


def test_oracle_agreement_small():
    for field, n in ((F2, 1), (F2, 2), (F3, 1), (F3, 2)):
        for a in all_matrices(field, n):
            assert exists_lu_bruteforce(a) == satisfies_lu_conditions(a)


def test_degree_agreement_small():
    for n in (1, 2):
        for a in all_matrices(F2, n):
            assert min_extra_diagonals_bruteforce(a) == failure_degree(a)


def test_frobenius_examples():
    eye = Matrix.identity(RATIONALS, 3)
    assert frobenius_rank_bounds(eye, eye)
    zero = Matrix.zeros(RATIONALS, 2, 3)
    other = Matrix(RATIONALS, [[1, 2], [3, 4], [5, 6]])
    assert frobenius_rank_bounds(zero, other)
    with pytest.raises(ValueError):
        frobenius_rank_bounds(eye, zero)


@given(st.data())
def test_frobenius_random(data):
    field = data.draw(st.sampled_from([RATIONALS, PrimeField(5)]))
    rows = data.draw(st.integers(1, 4))
    k = data.draw(st.integers(1, 4))
    cols = data.draw(st.integers(1, 4))
    x = Matrix(field, [[data.draw(st.integers(-4, 4)) for _ in range(k)] for _ in range(rows)])
    y = Matrix(field, [[data.draw(st.integers(-4, 4)) for _ in range(cols)] for _ in range(k)])
    assert frobenius_rank_bounds(x, y)


def test_frobenius_random_sweep():
    rng = random.Random(2024)
    for field in (RATIONALS, PrimeField(5)):
        for _ in range(100):
            rows, k, cols = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
            x = random_matrix(field, rows, k, rng)
            y = random_matrix(field, k, cols, rng)
            assert frobenius_rank_bounds(x, y)


def test_selftest_passes():
    result = run_selftest()
    assert result.passed
    names = [s.name for s in result.sweeps]
    assert len(names) == 3
    existence = result.sweeps[0]
    assert existence.cases == 2 + 16 + 512 + 3 + 81
    degree = result.sweeps[1]
    assert degree.cases == 2 + 16 + 512
    assert all(s.first_counterexample is None for s in result.sweeps)
