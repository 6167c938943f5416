"""
Tests for the trellis free-distance oracle.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from block_codes import min_distance
from conv_codes import (
    ConvCode, build_memory1_equal, build_memory1_unequal, build_memory3, closed_form_equal, gsb, mixed_rate_builders,
)
from errors import BudgetExceededError, CatastrophicEncoderError, ShapeError
from field_matrix import Mat, rank
from finite_field import FieldSpec
from fourier_codes import fourier_scheme
from free_distance import free_distance, support_distance_profile
from named_units import binary_x4, hamming_unit
from poly_matrix import PolyMat
from unit_scheme import consecutive_split, derive_block_code, equal_split, make_scheme

GF2 = FieldSpec(2)


@pytest.fixture(scope="module")
def x4_self_dual():
    return build_memory1_equal(consecutive_split(binary_x4().scheme, [2, 2]))


def test_x4_memory1(x4_self_dual):
    result = free_distance(x4_self_dual)
    assert result.value == 4
    assert result.proven
    assert result.settled


def test_x4_memory3():
    result = free_distance(build_memory3(equal_split(binary_x4().scheme, 4)))
    assert result.value == 12
    assert result.proven


def test_hamming_memory1():
    """(1,1,1,0) + (1,0,0,0)z reaches weight 4."""
    code = build_memory1_unequal(consecutive_split(hamming_unit().scheme, [4, 3]))
    assert free_distance(code).value == 4


def test_fourier_memory1_meets_gsb():
    code = build_memory1_unequal(consecutive_split(fourier_scheme(7, FieldSpec(2, 3)).scheme, [4, 3]))
    assert free_distance(code).value == 7


def test_memory0_equals_block_distance():
    block = derive_block_code(hamming_unit().scheme, range(4))
    result = free_distance(ConvCode(PolyMat.constant(block.generator)))
    assert result.value == min_distance(block) == 3
    assert result.depth == 0


def test_history_is_non_increasing(x4_self_dual):
    history = free_distance(x4_self_dual, depth=6).history
    assert all(a >= b for a, b in zip(history, history[1:]))


def test_catastrophic_refused():
    code = ConvCode(PolyMat.from_terms([Mat(GF2, [[1, 1]]), Mat(GF2, [[1, 1]])]))
    with pytest.raises(CatastrophicEncoderError):
        free_distance(code)
    assert free_distance(code, allow_catastrophic=True).value == 4


def test_budget(x4_self_dual):
    with pytest.raises(BudgetExceededError):
        free_distance(x4_self_dual, cap=4)


def test_negative_depth(x4_self_dual):
    with pytest.raises(ShapeError):
        free_distance(x4_self_dual, depth=-1)


def test_support_profile(x4_self_dual):
    assert support_distance_profile(x4_self_dual, 1) >= 4
    assert support_distance_profile(x4_self_dual, 2) >= 5
    with pytest.raises(ShapeError):
        support_distance_profile(x4_self_dual, 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 16))
def test_equal_split_closed_form_is_a_lower_bound(seed):
    """d_f >= d(A) + d(B) for memory-1 codes of random binary 4x4 units."""
    rng = np.random.default_rng(seed)
    U = Mat(GF2, rng.integers(0, 2, size=(4, 4)))
    while rank(U) < 4:
        U = Mat(GF2, rng.integers(0, 2, size=(4, 4)))
    split = consecutive_split(make_scheme(U), [2, 2])
    code = build_memory1_equal(split)
    value = free_distance(code).value
    assert closed_form_equal(split) <= value <= gsb(code.n, code.k, code.delta)


def random_unit(spec, n, rng):
    while True:
        U = Mat(spec, rng.integers(0, spec.order, size=(n, n)))
        if rank(U) == n:
            return U


@pytest.mark.parametrize("build, allow_catastrophic, expected", [
    (lambda: build_memory1_unequal(consecutive_split(hamming_unit().scheme, [4, 3])), False, 4),
    (lambda: build_memory1_unequal(consecutive_split(fourier_scheme(7, FieldSpec(2, 3)).scheme, [4, 3])), False, 7),
    (lambda: build_memory1_equal(consecutive_split(binary_x4().scheme, [2, 2])), False, 4),
    (lambda: build_memory3(equal_split(binary_x4().scheme, 4)), False, 12),
    (lambda: mixed_rate_builders(equal_split(binary_x4().scheme, 4), "rate34_mem3"), True, 4),
])
def test_free_distance_within_gsb(build, allow_catastrophic, expected):
    code = build()
    value = free_distance(code, allow_catastrophic=allow_catastrophic).value
    assert value == expected
    assert value <= gsb(code.n, code.k, code.delta)


@pytest.mark.parametrize("spec, n, twist", [(GF2, 4, "plain"), (GF2, 6, "plain"), (FieldSpec(5), 4, "i")])
@pytest.mark.parametrize("seed", range(6))
def test_support_profile_lower_bound(spec, n, twist, seed):
    """s nonzero inputs to A + Bz give weight >= d(A) + d(B) + s - 1."""
    split = consecutive_split(make_scheme(random_unit(spec, n, np.random.default_rng(seed))), [n // 2, n // 2])
    code = build_memory1_equal(split, twist=twist)
    floor = closed_form_equal(split)
    profile = [support_distance_profile(code, s) for s in (1, 2, 3)]
    assert profile[0] >= floor
    assert profile[1] >= floor + 1
    assert profile[2] >= floor + 2
    assert min(profile) >= free_distance(code).value
