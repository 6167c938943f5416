"""
Tests for unit schemes, splits and the unit-derived block code extraction.
"""

import numpy as np
import pytest

from errors import SchemeError, ShapeError, SingularMatrixError
from field_matrix import Mat, hstack, null_space, rank
from finite_field import FieldSpec
from named_units import hadamard_matrix, hamming_unit
from unit_scheme import (
    SchemeSplit, UnitScheme, complete_to_unit, consecutive_split, derive_block_code, equal_split, make_scaled,
    make_scheme,
)

GF2 = FieldSpec(2)
GF5 = FieldSpec(5)


def random_scheme(spec: FieldSpec, n: int, seed: int) -> UnitScheme:
    rng = np.random.default_rng(seed)
    while True:
        U = Mat(spec, rng.integers(0, spec.order, size=(n, n)))
        if rank(U) == n:
            return make_scheme(U)


def test_make_scheme_inverts():
    scheme = make_scheme(Mat(GF5, [[1, 2], [3, 4]]))
    assert scheme.U @ scheme.V == Mat.identity(GF5, 2)
    assert scheme.alpha == GF5.one


def test_make_scheme_singular():
    with pytest.raises(SingularMatrixError):
        make_scheme(Mat(GF5, [[1, 2], [2, 4]]))
    with pytest.raises(SchemeError):
        make_scheme(Mat(GF5, [[1, 2, 3], [0, 1, 0]]))


def test_make_scaled_finds_alpha():
    U = Mat(GF5, [[1, 1], [1, 4]])
    scheme = make_scaled(U, U.T)
    assert scheme.alpha.rep == 2


def test_make_scaled_rejects_non_scalar():
    with pytest.raises(SchemeError):
        make_scaled(Mat(GF5, [[1, 0], [0, 2]]), Mat.identity(GF5, 2))


def test_scheme_validation():
    with pytest.raises(SchemeError):
        UnitScheme(Mat.identity(GF2, 2), Mat(GF2, [[0, 1], [1, 0]]), GF2.one)


def test_hamming_split_identities():
    split = consecutive_split(hamming_unit().scheme, [4, 3])
    assert split.sizes == [4, 3]
    assert split.verify_block_identities()


def test_bad_partitions():
    scheme = hamming_unit().scheme
    with pytest.raises(SchemeError):
        consecutive_split(scheme, [4, 4])
    with pytest.raises(SchemeError):
        SchemeSplit(scheme, ((0, 1, 2), (2, 3, 4, 5, 6)))
    with pytest.raises(SchemeError):
        equal_split(scheme, 2)


def test_merged_split():
    split = consecutive_split(make_scheme(Mat.identity(GF2, 4)), [1, 1, 1, 1])
    merged = split.merged([[0, 1, 2], [3]])
    assert merged.sizes == [3, 1]
    assert merged.verify_block_identities()


def test_derive_bounds():
    scheme = hamming_unit().scheme
    with pytest.raises(ShapeError):
        derive_block_code(scheme, [])
    with pytest.raises(ShapeError):
        derive_block_code(scheme, range(7))


def test_identity_scheme_derivation():
    code = derive_block_code(make_scheme(Mat.identity(GF2, 5)), [0, 2])
    assert code.generator == Mat(GF2, [[1, 0, 0, 0, 0], [0, 0, 1, 0, 0]])
    assert code.control.shape == (5, 3)


def test_complete_to_unit():
    A = Mat(GF2, [[1, 1, 0, 0], [0, 1, 1, 0]])
    scheme = complete_to_unit(A)
    assert scheme.n == 4
    assert Mat(GF2, scheme.U.reps[:2]) == A


def test_complete_to_unit_rank_deficient():
    with pytest.raises(SchemeError):
        complete_to_unit(Mat(GF2, [[1, 1], [1, 1]]))


@pytest.mark.parametrize("spec", [FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(2, 2)], ids=str)
def test_derived_code_identities(spec):
    """Test G·D = 0 and the rank conditions on 200 random schemes and row sets."""
    rng = np.random.default_rng(spec.order)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        scheme = random_scheme(spec, n, int(rng.integers(0, 2 ** 31)))
        size = int(rng.integers(1, n))
        rows = rng.choice(n, size=size, replace=False).tolist()
        code = derive_block_code(scheme, rows)
        assert (code.generator @ code.control).is_zero()
        assert rank(code.generator) == size
        assert rank(code.control) == n - size


@pytest.mark.parametrize("rows", [[0], [0, 1, 2, 3, 4, 5], [1, 4, 7, 10], list(range(11))])
def test_scaled_scheme_matches_normalised_inverse(rows):
    H = hadamard_matrix(GF5)
    scaled = make_scaled(H, H.T)
    assert scaled.alpha.rep == 2
    normalised = make_scaled(H, H.T.scale(scaled.alpha.inverse()))
    assert normalised.alpha == GF5.one
    assert normalised.V == make_scheme(H).V

    a, b = derive_block_code(scaled, rows), derive_block_code(normalised, rows)
    assert a.generator == b.generator
    assert b.control == a.control.scale(scaled.alpha.inverse())
    assert rank(hstack([a.control, b.control])) == a.control.cols


@pytest.mark.parametrize("spec", [FieldSpec(2), FieldSpec(3), FieldSpec(5)], ids=str)
@pytest.mark.parametrize("seed", range(5))
def test_completed_unit_control_spans_null_space(spec, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 8))
    k = int(rng.integers(1, n))
    G = Mat(spec, rng.integers(0, spec.order, size=(k, n)))
    while rank(G) < k:
        G = Mat(spec, rng.integers(0, spec.order, size=(k, n)))

    code = derive_block_code(complete_to_unit(G), range(k))
    assert code.generator == G
    kernel = null_space(G)
    assert kernel.rows == n - k
    assert rank(code.control) == n - k
    assert rank(hstack([code.control, kernel.T])) == n - k
