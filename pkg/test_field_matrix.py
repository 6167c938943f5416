"""
Tests for dense field matrices.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import FieldMismatchError, ShapeError, SingularMatrixError
from field_matrix import (
    Mat, delete_cols, hstack, inverse, is_monomial_orthogonal, is_orthogonal, null_space, rank, scalar_of_identity,
    select_rows, solve, vstack,
)
from finite_field import FieldSpec
from fourier_codes import fourier_scheme
from named_units import golay_x

GF2 = FieldSpec(2)
GF3 = FieldSpec(3)


def test_products_and_identity():
    m = Mat(GF3, [[1, 2], [0, 1]])
    assert m @ Mat.identity(GF3, 2) == m
    assert m @ inverse(m) == Mat.identity(GF3, 2)
    assert inverse(Mat(GF2, [[1, 1], [0, 1]])) == Mat(GF2, [[1, 1], [0, 1]])


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        inverse(Mat(GF2, [[1, 1], [1, 1]]))


def test_entries_out_of_range():
    with pytest.raises(ShapeError):
        Mat(GF2, [[0, 2]])


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        Mat.identity(GF2, 2) @ Mat.identity(GF3, 2)


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        Mat.identity(GF2, 2) @ Mat.identity(GF2, 3)
    with pytest.raises(ShapeError):
        vstack([Mat.identity(GF2, 2), Mat.identity(GF2, 3)])
    with pytest.raises(ShapeError):
        select_rows(Mat.identity(GF2, 2), [0, 0])


def test_rank_and_null_space():
    m = Mat(GF2, [[1, 1, 0], [0, 1, 1]])
    assert rank(m) == 2
    kernel = null_space(m)
    assert kernel.shape == (1, 3)
    assert (m @ kernel.T).is_zero()
    assert null_space(Mat.identity(GF3, 3)).rows == 0


def test_column_surgery():
    m = Mat(GF3, [[1, 2, 0], [0, 1, 2]])
    assert delete_cols(m, [1]) == Mat(GF3, [[1, 0], [0, 2]])
    assert hstack([m, m]).shape == (2, 6)


def test_solve():
    a = Mat(GF3, [[1, 1], [0, 1]])
    b = Mat(GF3, [[2], [1]])
    x = solve(a, b)
    assert a @ x == b
    assert solve(Mat(GF2, [[1, 1], [1, 1]]), Mat(GF2, [[1], [0]])) is None


def test_scalar_of_identity():
    assert scalar_of_identity(Mat(GF3, [[2, 0], [0, 2]])).rep == 2
    assert scalar_of_identity(Mat(GF3, [[2, 0], [0, 1]])) is None
    assert scalar_of_identity(Mat.zeros(GF3, 2, 2)) is None


def test_orthogonality_predicates():
    assert is_orthogonal(golay_x()) == GF2.one
    U = fourier_scheme(7, FieldSpec(2, 3)).scheme.U
    assert is_orthogonal(U) is None
    alpha, perm = is_monomial_orthogonal(U)
    assert alpha == FieldSpec(2, 3).one
    assert perm == [(-i) % 7 for i in range(7)]


def test_json_round_trip():
    m = Mat(FieldSpec(2, 3), [[1, 7, 3], [0, 5, 6]])
    assert Mat.from_json(m.to_json()) == m


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2 ** 16))
def test_inverse_of_random_invertible(n, seed):
    """Test M·M⁻¹ = I for random invertible matrices over GF(3)."""
    rng = np.random.default_rng(seed)
    m = Mat(GF3, rng.integers(0, 3, size=(n, n)))
    if rank(m) < n:
        with pytest.raises(SingularMatrixError):
            inverse(m)
        return
    assert m @ inverse(m) == Mat.identity(GF3, n)
    assert inverse(m) @ m == Mat.identity(GF3, n)
