"""Field tables, rank, and matrix plumbing.

The rank oracle here is deliberately naive: list every linear combination
of the rows and count distinct vectors.  The library's elimination rank
must match it on everything small enough to enumerate.
"""

import itertools

import numpy as np
import pytest

from indexcode import (
    DimensionMismatch,
    IndexOutOfRange,
    Matrix,
    SUPPORTED_SIZES,
    UnsupportedField,
    column_block,
    dot,
    field_make,
    matmul,
    matrix_from_text,
    matrix_to_text,
    nullspace,
    rank,
    rate_of,
    solve,
)
from fractions import Fraction


def span_size(field, rows) -> int:
    """Count distinct linear combinations of the rows; q^rank of them."""
    found = set()
    for coeffs in itertools.product(range(field.q), repeat=len(rows)):
        acc = tuple(0 for _ in rows[0]) if rows else ()
        for c, row in zip(coeffs, rows):
            acc = tuple(
                int(field.add[a, field.mul[c, v]]) for a, v in zip(acc, row)
            )
        found.add(acc)
    return len(found)


def oracle_rank(mat: Matrix) -> int:
    if mat.rows == 0 or mat.cols == 0:
        return 0
    size = span_size(mat.field, [tuple(int(v) for v in r) for r in mat.data])
    r = 0
    while mat.field.q**r < size:
        r += 1
    assert mat.field.q**r == size
    return r


def random_matrix(rng, field, rows, cols) -> Matrix:
    data = tuple(
        tuple(int(v) for v in rng.integers(0, field.q, size=cols))
        for _ in range(rows)
    )
    return Matrix(field, data)


# the catalog rate-6 binary code, copied here as plain data
I1_ROWS = (
    (1, 0, 0, 1, 0, 1, 1, 0, 0, 0),
    (0, 1, 0, 1, 1, 0, 1, 0, 0, 0),
    (0, 0, 1, 0, 1, 1, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
)


def test_supported_sizes():
    assert SUPPORTED_SIZES == (2, 3, 4, 5, 7, 8, 11, 13)
    for q in SUPPORTED_SIZES:
        f = field_make(q)
        assert f.q == q
        assert f.characteristic ** f.degree == q


@pytest.mark.parametrize("q", [0, 1, 6, 9, 10, 12, 16])
def test_unsupported_sizes_rejected(q):
    with pytest.raises(UnsupportedField):
        field_make(q)


@pytest.mark.parametrize("q", SUPPORTED_SIZES)
def test_axioms_exhaustive(q):
    f = field_make(q)
    els = range(q)
    for a in els:
        assert f.add[a, 0] == a
        assert f.mul[a, 1] == a
        assert f.mul[a, 0] == 0
        assert f.add[a, f.neg[a]] == 0
        if a:
            assert f.mul[a, f.inv[a]] == 1
        for b in els:
            assert f.add[a, b] == f.add[b, a]
            assert f.mul[a, b] == f.mul[b, a]
            assert f.sub[a, b] == f.add[a, f.neg[b]]
            for c in els:
                assert f.add[f.add[a, b], c] == f.add[a, f.add[b, c]]
                assert f.mul[f.mul[a, b], c] == f.mul[a, f.mul[b, c]]
                assert f.mul[a, f.add[b, c]] == f.add[f.mul[a, b], f.mul[a, c]]


def test_char_two_extensions():
    # x^2 + x + 1 and x^3 + x + 1 reductions, plus characteristic 2
    f4 = field_make(4)
    assert all(f4.add[a, a] == 0 for a in range(4))
    assert f4.mul[2, 2] == 3
    assert f4.mul[2, 3] == 1
    assert f4.mul[3, 3] == 2
    f8 = field_make(8)
    assert all(f8.add[a, a] == 0 for a in range(8))
    assert f8.mul[2, 4] == 3
    assert f8.mul[5, 6] == 3


def test_prime_fields_are_mod_arithmetic():
    for q in (2, 3, 5, 7, 11, 13):
        f = field_make(q)
        for a in range(q):
            for b in range(q):
                assert f.add[a, b] == (a + b) % q
                assert f.mul[a, b] == (a * b) % q


def test_rank_oracle_on_catalog_matrix():
    mat = Matrix(field_make(2), I1_ROWS)
    assert oracle_rank(mat) == 6
    assert rank(mat) == 6


def test_rank_matches_oracle_randomized():
    rng = np.random.default_rng(11)
    for _ in range(200):
        q = int(rng.choice((2, 3, 4, 5)))
        f = field_make(q)
        mat = random_matrix(rng, f, int(rng.integers(1, 5)), int(rng.integers(1, 5)))
        assert rank(mat) == oracle_rank(mat)


def test_rank_bounds_and_invariances():
    rng = np.random.default_rng(12)
    for _ in range(200):
        q = int(rng.choice((2, 3, 5)))
        f = field_make(q)
        rows, cols = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        mat = random_matrix(rng, f, rows, cols)
        r = rank(mat)
        assert r <= min(rows, cols)
        # row swap
        if rows > 1:
            perm = list(range(rows))
            i, j = rng.integers(0, rows, size=2)
            perm[i], perm[j] = perm[j], perm[i]
            swapped = Matrix(f, tuple(mat.data[k] for k in perm))
            assert rank(swapped) == r
        # right-multiplication by an invertible matrix
        while True:
            g = random_matrix(rng, f, cols, cols)
            if rank(g) == cols:
                break
        assert rank(matmul(mat, g)) == r


def test_rank_monotone_in_columns():
    rng = np.random.default_rng(13)
    for _ in range(300):
        q = int(rng.choice((2, 3)))
        f = field_make(q)
        m = int(rng.integers(2, 7))
        mat = random_matrix(rng, f, int(rng.integers(1, 5)), m)
        users = sorted(
            int(u)
            for u in rng.choice(
                np.arange(1, m + 1), size=int(rng.integers(1, m + 1)), replace=False
            )
        )
        cut = int(rng.integers(1, len(users) + 1))
        sub, full = users[:cut], users
        assert rank(column_block(mat, sub)) <= rank(column_block(mat, full))


def test_column_block_layout():
    f = field_make(2)
    mat = Matrix(f, ((1, 0, 1, 1), (0, 1, 0, 1)))
    picked = column_block(mat, [1, 3])
    assert picked.data.tolist() == [[1, 1], [0, 0]]
    # unsorted and duplicated input selects each user once, ascending
    assert column_block(mat, [3, 1, 3]) == picked
    wide = Matrix(f, ((1, 0, 1, 1), (0, 1, 0, 1)))
    two = column_block(wide, [2], t=2)
    assert two.data.tolist() == [[1, 1], [0, 1]]
    with pytest.raises(IndexOutOfRange):
        column_block(mat, [0])
    with pytest.raises(IndexOutOfRange):
        column_block(mat, [5])


def test_nullspace_and_solve():
    rng = np.random.default_rng(14)
    for _ in range(120):
        q = int(rng.choice((2, 3, 4, 5)))
        f = field_make(q)
        rows, cols = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        mat = random_matrix(rng, f, rows, cols)
        basis = nullspace(mat)
        assert len(basis) == cols - rank(mat)
        for vec in basis:
            image = [0] * rows
            for k in range(rows):
                image[k] = dot(f, tuple(int(v) for v in mat.data[k]), vec)
            assert all(v == 0 for v in image)
        if basis:
            stacked = Matrix(f, tuple(basis))
            assert rank(stacked) == len(basis)
        # a consistent system is solved exactly
        x = tuple(int(v) for v in rng.integers(0, q, size=cols))
        b = tuple(
            dot(f, tuple(int(v) for v in mat.data[k]), x) for k in range(rows)
        )
        got = solve(mat, b)
        assert got is not None
        back = tuple(
            dot(f, tuple(int(v) for v in mat.data[k]), got) for k in range(rows)
        )
        assert back == b


def test_solve_inconsistent_returns_none():
    f = field_make(2)
    mat = Matrix(f, ((0, 0), (0, 0)))
    assert solve(mat, (1, 0)) is None


def test_matrix_validation_and_equality():
    f = field_make(3)
    with pytest.raises(ValueError):
        Matrix(f, ((0, 3),))
    with pytest.raises(ValueError):
        Matrix(f, ((0, 1), (2,)))
    a = Matrix(f, ((1, 2), (0, 1)))
    b = Matrix(f, ((1, 2), (0, 1)))
    assert a == b and hash(a) == hash(b)
    assert a != Matrix(f, ((1, 2), (0, 2)))


def test_matmul_dimension_mismatch():
    f = field_make(2)
    a = Matrix(f, ((1, 0),))
    b = Matrix(f, ((1, 0),))
    with pytest.raises(DimensionMismatch):
        matmul(a, b)


def test_matrix_text_round_trip():
    rng = np.random.default_rng(15)
    for _ in range(50):
        q = int(rng.choice(SUPPORTED_SIZES))
        f = field_make(q)
        mat = random_matrix(rng, f, int(rng.integers(1, 5)), int(rng.integers(1, 5)))
        assert matrix_from_text(matrix_to_text(mat)) == mat
    with pytest.raises(ValueError):
        matrix_from_text("2 2\n0 1\n1 0\n")
    with pytest.raises(ValueError):
        matrix_from_text("2 2 2\n0 1\n")


def test_rate_of_exact():
    assert rate_of(6, 1) == Fraction(6)
    assert rate_of(12, 2) == Fraction(6)
    assert rate_of(7, 2) == Fraction(7, 2)
