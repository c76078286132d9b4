import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from streamcode.galois import make_field, smallest_field_for
from streamcode.linalg import (
    MatrixError,
    MatrixGF,
    cauchy_matrix,
    identity,
    in_span,
    inverse,
    is_mds_generator,
    is_superregular,
    nullspace,
    rank,
    solve,
    zero_band_mds,
    zero_band_violations,
    zeros,
)

F4, F8, F16 = make_field(4), make_field(8), make_field(16)


def leibniz_det(fs, rows):
    """Permutation-expansion determinant; independent of elimination."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = fs.mul(term, rows[i][j])
            if not term:
                break
        total ^= term  # sign is irrelevant in characteristic 2
    return total


def all_square_minors_nonzero(M):
    for s in range(1, min(M.rows, M.cols) + 1):
        for rs in itertools.combinations(range(M.rows), s):
            for cs in itertools.combinations(range(M.cols), s):
                if leibniz_det(M.field, [[M[i, j] for j in cs] for i in rs]) == 0:
                    return False
    return True


def brute_span(fs, target, others):
    for coeffs in itertools.product(range(fs.q), repeat=len(others)):
        v = [0] * len(target)
        for c, vec in zip(coeffs, others):
            for i, x in enumerate(vec):
                v[i] ^= fs.mul(c, x)
        if v == list(target):
            return True
    return False


def test_rank_examples():
    assert rank(identity(F8, 3)) == 3
    assert rank(zeros(F8, 2, 5)) == 0
    assert rank(zero_band_mds(F8, 3, 6)) == 3


def test_in_span_examples():
    e1, e2, e3 = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    assert in_span(F8, [0, 0, 0], [])
    assert not in_span(F8, e1, [e2, e3])
    assert in_span(F8, [1, 1, 0], [e1, e2])


def test_in_span_dimension_mismatch():
    with pytest.raises(MatrixError):
        in_span(F8, [1, 0], [[1, 0, 0]])


@pytest.mark.parametrize("fs,nvec", [(F4, 5), (F8, 4)])
def test_in_span_matches_brute_force(fs, nvec):
    rng = random.Random(fs.q)
    for _ in range(60):
        others = [[rng.randrange(fs.q) if rng.random() < 0.7 else 0 for _ in range(5)] for _ in range(nvec - 1)]
        if rng.random() < 0.5:
            coeffs = [rng.randrange(fs.q) for _ in others]
            target = [0] * 5
            for c, v in zip(coeffs, others):
                for i, x in enumerate(v):
                    target[i] ^= fs.mul(c, x)
        else:
            target = [rng.randrange(fs.q) for _ in range(5)]
        assert in_span(fs, target, others) == brute_span(fs, target, others)


def test_solve_and_inverse():
    rng = random.Random(3)
    for _ in range(30):
        M = MatrixGF.from_rows(F16, [[rng.randrange(16) for _ in range(5)] for _ in range(5)])
        x = [rng.randrange(16) for _ in range(5)]
        rhs = (M @ MatrixGF.from_columns(F16, [x])).col(0)
        sol = solve(M, rhs)
        assert sol is not None
        assert (M @ MatrixGF.from_columns(F16, [sol])).col(0) == rhs
        if leibniz_det(F16, M.tolist()):
            assert (M @ inverse(M)) == identity(F16, 5)
            assert sol == x


def test_nullspace_annihilates():
    rng = random.Random(5)
    for _ in range(20):
        M = MatrixGF.from_rows(F8, [[rng.randrange(8) for _ in range(7)] for _ in range(3)])
        N = nullspace(M)
        assert N.rows == 7 - rank(M)
        assert (M @ N.T).is_zero()
        assert rank(N) == N.rows


def test_sub_is_inclusive():
    M = MatrixGF.from_rows(F8, [[r * 3 + c for c in range(3)] for r in range(2)])
    assert M.sub(0, 1, 1, 2).tolist() == [[1, 2], [4, 5]]
    assert M.sub(1, 1, 0, 0).tolist() == [[3]]


def test_matrix_json_roundtrip():
    M = cauchy_matrix(F8, 2, 3)
    obj = json.loads(json.dumps(M.to_json()))
    assert obj["field"] == {"q": 8, "poly": 11} and obj["rows"] == 2 and obj["cols"] == 3
    assert MatrixGF.from_json(obj) == M


def test_entries_range_checked():
    with pytest.raises(MatrixError):
        MatrixGF.from_rows(F4, [[4]])


def test_cauchy_examples():
    C = cauchy_matrix(F8, 1, 1)
    assert C.rows == C.cols == 1 and C[0, 0] == F8.inv(0 ^ 1)
    assert all_square_minors_nonzero(cauchy_matrix(F8, 4, 4))
    with pytest.raises(MatrixError, match="field too small"):
        cauchy_matrix(F4, 2, 3)


def test_cauchy_entries_follow_enumeration():
    C = cauchy_matrix(F16, 3, 4)
    for i in range(3):
        for j in range(4):
            assert F16.mul(C[i, j], i ^ (3 + j)) == 1


def test_superregular_examples():
    assert is_superregular(cauchy_matrix(F16, 3, 5))
    assert not is_superregular(MatrixGF.from_rows(F8, [[1, 1], [1, 1]]))


def test_superregular_agrees_with_leibniz():
    rng = random.Random(11)
    for _ in range(40):
        M = MatrixGF.from_rows(F8, [[rng.randrange(1, 8) for _ in range(3)] for _ in range(3)])
        assert is_superregular(M) == all_square_minors_nonzero(M)


@pytest.mark.parametrize("k,n", [(k, s - k) for s in range(2, 11) for k in range(1, s)])
def test_cauchy_superregular_exhaustive(k, n):
    assert all_square_minors_nonzero(cauchy_matrix(smallest_field_for(k + n), k, n))


BAND_3X6 = [
    "*00***",
    "**00**",
    "***00*",
]


def test_zero_band_3x6_pattern():
    Z = zero_band_mds(F8, 3, 6)
    pattern = ["".join("*" if x else "0" for x in Z.row(i)) for i in range(3)]
    assert pattern == BAND_3X6
    assert is_mds_generator(Z)


def test_zero_band_k1_and_2x4():
    Z = zero_band_mds(F8, 1, 5)
    assert all(Z.row(0))
    Z = zero_band_mds(F8, 2, 4)
    # Z1 lower triangular with nonzero diagonal, Z2 upper triangular with nonzero diagonal
    assert Z[0, 1] == 0 and Z[0, 0] and Z[1, 1] and Z[1, 0]
    assert Z[1, 2] == 0 and Z[0, 2] and Z[0, 3] and Z[1, 3]


def test_zero_band_field_too_small():
    with pytest.raises(MatrixError):
        zero_band_mds(F4, 2, 5)


def minors_nonzero(M):
    return all(leibniz_det(M.field, [[M[i, j] for j in cs] for i in range(M.rows)])
               for cs in itertools.combinations(range(M.cols), M.rows))


@pytest.mark.parametrize("k,n", [(k, n) for n in range(1, 11) for k in range(1, n + 1)])
def test_zero_band_properties_exhaustive(k, n):
    Z = zero_band_mds(smallest_field_for(max(n, 2)), k, n)
    assert zero_band_violations(Z) == []
    assert all(Z[i, i] == 1 for i in range(k))
    assert minors_nonzero(Z)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 7), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_bounds_and_transpose(rows):
    M = MatrixGF.from_rows(F8, rows)
    r = rank(M)
    assert r <= min(M.rows, M.cols)
    assert r == rank(M.T)
