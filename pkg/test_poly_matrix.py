"""
Tests for polynomial matrices and their sliding-block expansions.
"""

import numpy as np
import pytest

from errors import FieldMismatchError, ShapeError
from field_matrix import Mat, rank
from finite_field import FieldSpec
from poly_matrix import PolyMat, block_toeplitz, flatten_rows, sliding_block

GF2 = FieldSpec(2)
GF5 = FieldSpec(5)


def row(spec, *coeffs):
    """1×len(coeffs[0]) polynomial row from its coefficient vectors."""
    return PolyMat.from_terms([Mat(spec, [c]) for c in coeffs])


def test_trailing_zero_coefficients_trimmed():
    p = PolyMat(GF2, [[[1, 0]], [[0, 0]], [[0, 0]]])
    assert p.degree == 0
    assert PolyMat.zeros(GF2, 2, 3).is_zero()


def test_product():
    """(1+z)² = 1+z² over GF(2)."""
    p = row(GF2, [1], [1])
    assert p @ p == row(GF2, [1], [0], [1])
    q = row(GF5, [1], [1])
    assert (q @ q).reps[:, 0, 0].tolist() == [1, 2, 1]


def test_mismatch():
    with pytest.raises(FieldMismatchError):
        row(GF2, [1]) @ row(GF5, [1])
    with pytest.raises(ShapeError):
        row(GF2, [1, 0]) @ row(GF2, [1, 0])
    with pytest.raises(ShapeError):
        PolyMat(GF2, [[1, 0]])


def test_degrees_and_leading_rows():
    g = PolyMat.from_terms([Mat(GF2, [[1, 1], [0, 1]]), Mat(GF2, [[0, 1], [0, 0]])])
    assert g.row_degrees() == [1, 0]
    assert g.column_degrees() == [0, 1]
    assert g.leading_row_matrix() == Mat(GF2, [[0, 1], [0, 1]])


def test_shift_and_reversal():
    p = row(GF5, [1, 0], [0, 2])
    assert p.shift(2).degree == 3
    assert p.reversed() == row(GF5, [0, 2], [1, 0])
    assert p.reversed(2) == row(GF5, [0, 0], [0, 2], [1, 0])
    with pytest.raises(ShapeError):
        p.reversed(0)


def test_json_round_trip():
    p = PolyMat.from_terms([Mat(GF5, [[1, 0, 3]]), Mat(GF5, [[0, 4, 0]])])
    assert PolyMat.from_json(p.to_json()) == p


def test_flatten_rows():
    p = row(GF2, [1, 0], [1, 1])
    assert flatten_rows(p, 2) == Mat(GF2, [[1, 0, 1, 1, 0, 0]])
    with pytest.raises(ShapeError):
        flatten_rows(p, 0)


def test_sliding_block_counts_shifts():
    g = row(GF2, [1, 1], [0, 1])
    lattice = sliding_block(g, 3)
    assert lattice.shape == (3, 8)
    assert rank(lattice) == 3


def test_block_toeplitz_matches_product():
    g = PolyMat.from_terms([Mat(GF5, [[1, 2, 0]]), Mat(GF5, [[0, 1, 4]])])
    P = row(GF5, [3], [1])
    expected = flatten_rows(P @ g, 2)
    assert flatten_rows(P, 1) @ block_toeplitz(g, 1) == expected
    assert np.array_equal(block_toeplitz(g, 1).reps[0, :3], [1, 2, 0])
