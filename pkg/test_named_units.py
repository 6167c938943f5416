"""
Tests for the fixed unit schemes.
"""

import numpy as np
import pytest

from errors import ConstructionError
from field_matrix import Mat
from finite_field import FieldSpec
from named_units import (
    NAMED_UNITS, binary_x4, golay_x, hadamard_matrix, hadamard_unit, hamming_unit, named_unit, paley_hadamard12,
    reverse_circulant,
)

GF2 = FieldSpec(2)


def test_hamming_unit_inverts():
    scheme = hamming_unit().scheme
    assert scheme.alpha == GF2.one
    assert scheme.U @ scheme.V == Mat.identity(GF2, 7)


def test_reverse_circulant_is_symmetric():
    R = reverse_circulant([1, 2, 3])
    assert R.tolist() == [[1, 2, 3], [2, 3, 1], [3, 1, 2]]


def test_golay_involution():
    X = golay_x()
    assert X == X.T
    assert X @ X == Mat.identity(GF2, 12)


def test_x4_involution():
    X = binary_x4().scheme.U
    assert X @ X == Mat.identity(GF2, 4)


def test_paley_hadamard():
    H = paley_hadamard12()
    assert np.array_equal(H @ H.T, 12 * np.eye(12, dtype=np.int64))
    assert set(np.unique(H)) == {-1, 1}
    assert np.all(H[0] == 1)
    assert np.all(H[:, 0] == 1)


@pytest.mark.parametrize("p, alpha", [(5, 2), (7, 5), (13, 12)])
def test_hadamard_scalar(p, alpha):
    assert hadamard_unit(FieldSpec(p)).scheme.alpha.rep == alpha


def test_hadamard_needs_large_characteristic():
    with pytest.raises(ConstructionError):
        hadamard_matrix(FieldSpec(3))


def test_named_lookup():
    assert set(NAMED_UNITS) == {"hamming", "golay", "x4", "extended-hamming", "hadamard12"}
    assert named_unit("hadamard12", FieldSpec(7)).scheme.spec == FieldSpec(7)
    assert named_unit("golay", FieldSpec(5)).scheme.spec == GF2
    with pytest.raises(ConstructionError):
        named_unit("octacode")


def test_to_dict_carries_matrices():
    payload = hamming_unit().to_dict()
    assert payload["name"] == "hamming"
    assert payload["alpha"] == 1
    assert payload["U"]["field"] == "gf(2)"
