"""The rank-condition verifier for matrix codes."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from indexcode import (
    LINEAR_CATALOG_NAMES,
    LengthMismatch,
    LinearCode,
    Matrix,
    NotAcyclic,
    UnknownCode,
    acyclic_rank_check,
    column_block,
    field_make,
    linear_catalog_get,
    load_linear_code,
    matrix_to_text,
    rank,
    verify_linear,
    verify_linear_subset,
)
from conftest import random_instance


def identity_code(field, m: int) -> LinearCode:
    rows = tuple(tuple(1 if c == k else 0 for c in range(m)) for k in range(m))
    return LinearCode(Matrix(field, rows))


def test_catalog_code_passes(i1):
    lin = linear_catalog_get("I1-binary")
    report = verify_linear(i1, lin)
    assert report.ok
    assert report.rate == Fraction(6)
    assert report.rank == 6 and report.rows == 6 and report.t == 1
    assert report.failures() == ()
    assert all(c.ok for c in report.checks)
    assert LINEAR_CATALOG_NAMES == ("I1-binary",)


def test_per_user_rank_arithmetic(i1):
    # the verifier's verdict must equal the definition, user by user
    lin = linear_catalog_get("I1-binary")
    for chk in verify_linear(i1, lin).checks:
        interferers = sorted(i1.interfering(chk.user))
        joint = rank(column_block(lin.matrix, sorted({chk.user} | set(interferers))))
        alone = rank(column_block(lin.matrix, interferers))
        assert chk.rank_joint == joint
        assert chk.rank_interferers == alone
        assert chk.ok == (joint == alone + 1)


def test_dropping_a_row_breaks_exactly_user_10(i1):
    lin = linear_catalog_get("I1-binary")
    clipped = LinearCode(Matrix(lin.matrix.field, lin.matrix.data[:5]))
    report = verify_linear(i1, clipped)
    assert not report.ok
    assert report.failures() == (10,)


def test_subset_verification(i1):
    lin = linear_catalog_get("I1-binary")
    assert verify_linear_subset(i1, lin, (1, 2, 3)).ok
    assert verify_linear_subset(i1, lin, ()).ok
    clipped = LinearCode(Matrix(lin.matrix.field, lin.matrix.data[:5]))
    assert verify_linear_subset(i1, clipped, (1, 9)).ok
    assert not verify_linear_subset(i1, clipped, (10,)).ok


def test_decodability_downward_closed(i1):
    # passing the full interference set implies passing every subset of it
    lin = linear_catalog_get("I1-binary")
    assert verify_linear(i1, lin).ok
    for i in range(1, 11):
        interferers = sorted(i1.interfering(i))
        hi = column_block(lin.matrix, [i])
        for k in range(len(interferers) + 1):
            for sub in itertools.combinations(interferers, k):
                if sub:
                    joint = rank(column_block(lin.matrix, sorted({i} | set(sub))))
                    alone = rank(column_block(lin.matrix, sub))
                else:
                    joint, alone = rank(hi), 0
                assert joint == alone + 1


def test_identity_code_always_decodes():
    rng = np.random.default_rng(41)
    for _ in range(30):
        m = int(rng.integers(1, 8))
        inst = random_instance(rng, m)
        q = int(rng.choice((2, 3, 5)))
        assert verify_linear(inst, identity_code(field_make(q), m)).ok


def test_shape_and_t_validation(i1):
    f = field_make(2)
    with pytest.raises(LengthMismatch):
        verify_linear(i1, LinearCode(Matrix(f, ((1, 0, 1),))))
    with pytest.raises(ValueError):
        LinearCode(Matrix(f, ((1, 0, 1),)), t=0)
    with pytest.raises(ValueError):
        LinearCode(Matrix(f, ((1, 0, 1),)), t=2)  # 3 columns, t must divide
    wide = LinearCode(Matrix(f, ((1, 0, 1, 0),)), t=2)
    assert wide.m == 2
    assert wide.rate == Fraction(1, 2)


def test_acyclic_rank_check(i1):
    lin = linear_catalog_get("I1-binary")
    chk = acyclic_rank_check(i1, lin, (1, 2, 3, 8, 9, 10))
    assert chk.ok and chk.rank_joint == 6 and chk.rank_helpers == 0
    # helpers from the common interference of users 1 and 2
    shared = sorted(i1.interfering(1) & i1.interfering(2))
    chk2 = acyclic_rank_check(i1, lin, (1, 2), helpers=shared)
    assert chk2.ok
    assert chk2.rank_joint == chk2.rank_helpers + 2
    with pytest.raises(NotAcyclic):
        acyclic_rank_check(i1, lin, (1, 2, 4))
    with pytest.raises(ValueError):
        acyclic_rank_check(i1, lin, (1,), helpers=(4,))  # 4 is known to user 1


def test_load_linear_code(tmp_path, i1):
    by_name = load_linear_code("I1-binary")
    assert verify_linear(i1, by_name).ok
    path = tmp_path / "code.txt"
    path.write_text(matrix_to_text(by_name.matrix))
    from_file = load_linear_code(str(path))
    assert from_file.matrix == by_name.matrix
    with pytest.raises(UnknownCode):
        load_linear_code("no-such-code")
