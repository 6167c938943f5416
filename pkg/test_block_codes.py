"""
Tests for block codes: distance oracle, duals, classification and the
scaled-orthogonal self-dual construction.
"""

from itertools import combinations, product

import numpy as np
import pytest

from block_codes import (
    BlockCode, classify, css_parameters, dual, intersection_dim, min_distance, self_dual_from_orthogonal,
)
from errors import BudgetExceededError, ConstructionError, ShapeError
from field_matrix import Mat, hstack
from finite_field import FieldSpec
from named_units import binary_x4, golay_x, hadamard_matrix, hamming_unit
from unit_scheme import derive_block_code, make_scaled, make_scheme

GF2 = FieldSpec(2)
GF5 = FieldSpec(5)


def test_hamming_distances():
    scheme = hamming_unit().scheme
    assert min_distance(derive_block_code(scheme, range(4))) == 3
    assert min_distance(derive_block_code(scheme, range(4, 7))) == 3


def test_identity_derived_code():
    """Rows of I_n give d = 1 and an LCD code."""
    code = derive_block_code(make_scheme(Mat.identity(GF5, 4)), [0, 1])
    report = classify(code)
    assert report.d == 1
    assert report.flags["lcd"]
    assert not report.flags["dc"]


def test_golay_self_dual():
    code = BlockCode.from_generator(hstack([Mat.identity(GF2, 12), golay_x()]))
    report = classify(code)
    assert (report.n, report.k, report.d) == (24, 12, 8)
    assert report.flags["self_dual"]
    assert report.css == (24, 0, 8)


def test_extended_hamming_self_dual():
    X = binary_x4().scheme.U
    report = classify(BlockCode.from_generator(hstack([Mat.identity(GF2, 4), X])))
    assert (report.n, report.k, report.d) == (8, 4, 4)
    assert report.flags["self_dual"]


def test_threads_do_not_change_distance():
    code = BlockCode.from_generator(hstack([Mat.identity(GF2, 12), golay_x()]))
    assert min_distance(code, threads=4) == 8


def test_budget():
    code = BlockCode.from_generator(hstack([Mat.identity(GF2, 12), golay_x()]))
    with pytest.raises(BudgetExceededError) as info:
        min_distance(code, cap=100)
    assert info.value.required == 4095
    assert info.value.cap == 100


def test_classify_degrades_to_unknown_distance():
    code = BlockCode.from_generator(hstack([Mat.identity(GF2, 12), golay_x()]))
    report = classify(code, cap=10)
    assert report.d is None
    assert report.flags["self_dual"]
    assert report.flags["mds"] is None


def test_dual_pairs():
    code = derive_block_code(hamming_unit().scheme, range(4))
    d = dual(code)
    assert (d.n, d.r) == (7, 3)
    assert (code.generator @ d.generator.T).is_zero()
    assert min_distance(d) == 4


def test_css_needs_dual_containing():
    code = derive_block_code(make_scheme(Mat.identity(GF5, 4)), [0, 1])
    with pytest.raises(ConstructionError):
        css_parameters(code)


def test_hamming_is_dual_containing():
    """[7,4,3] Hamming contains its [7,3,4] simplex dual."""
    code = derive_block_code(hamming_unit().scheme, range(4))
    assert intersection_dim(code) == 3
    assert css_parameters(code) == (7, 1, 3)


def test_identity_times_2h_is_lcd_not_self_dual():
    """(I, 2H)·(I, 2H)ᵀ = 4I over GF(5)."""
    H = hadamard_matrix(GF5)
    code = BlockCode.from_generator(hstack([Mat.identity(GF5, 12), H.scale(GF5.from_int(2))]))
    assert intersection_dim(code) == 0


def test_self_dual_from_orthogonal_extends_field():
    code = self_dual_from_orthogonal(hadamard_matrix(GF5))
    assert code.spec.order == 25
    assert (code.n, code.r) == (24, 12)
    assert intersection_dim(code) == 12


def test_self_dual_from_orthogonal_binary():
    code = self_dual_from_orthogonal(golay_x())
    assert code.spec == GF2
    assert min_distance(code) == 8


def test_self_dual_needs_orthogonal():
    with pytest.raises(ConstructionError):
        self_dual_from_orthogonal(Mat(GF5, [[1, 1], [0, 1]]))


def test_block_code_validation():
    G = Mat(GF2, [[1, 1, 0]])
    with pytest.raises(ConstructionError):
        BlockCode(G, Mat(GF2, [[1, 0], [0, 1], [0, 0]]))
    with pytest.raises(ShapeError):
        BlockCode(G, Mat(GF2, [[1], [1], [0]]))


def test_every_row_selection_of_x4_is_lcd():
    scheme = binary_x4().scheme
    for size in range(1, 4):
        for rows in combinations(range(4), size):
            assert intersection_dim(derive_block_code(scheme, rows)) == 0


def test_row_selections_of_h12_are_lcd():
    H = hadamard_matrix(GF5)
    scheme = make_scaled(H, H.T)
    selections = [list(range(size)) for size in range(1, 12)]
    rng = np.random.default_rng(12)
    selections += [sorted(rng.choice(12, size=int(rng.integers(1, 12)), replace=False).tolist()) for _ in range(20)]
    for rows in selections:
        assert intersection_dim(derive_block_code(scheme, rows)) == 0


@pytest.mark.parametrize("spec, k, t", [(GF2, 3, 4), (GF2, 5, 5), (GF2, 4, 2), (FieldSpec(3), 3, 3)], ids=str)
@pytest.mark.parametrize("seed", range(4))
def test_systematic_distance_cross_check(spec, k, t, seed):
    """d of (I | P) is the least wt(x) + wt(xP) over nonzero messages."""
    P = Mat(spec, np.random.default_rng(seed).integers(0, spec.order, size=(k, t)))
    expected = min(
        int(np.count_nonzero(x)) + int(np.count_nonzero((Mat(spec, [list(x)]) @ P).reps))
        for x in product(range(spec.order), repeat=k) if any(x)
    )
    assert min_distance(BlockCode.from_generator(hstack([Mat.identity(spec, k), P]))) == expected
