"""
Tests for GF(2)[C_n × C_4] elements, Tanner-graph cycle counts and the
LDPC derivations built on them.
"""

import numpy as np
import pytest

from errors import FieldMismatchError, GirthError, NonUnitError, ShapeError
from field_matrix import Mat, delete_cols
from finite_field import FieldSpec
from group_rings import (
    CHECK_ELEMENT, GroupRingElem, four_cycle_count, from_alist, gr_inverse, gr_to_matrix, is_unit, ldpc_conv_memory1,
    ldpc_conv_memory3, ldpc_derive, random_unit_search, repair_check_element, select_rows_for, short_cycle_census,
    to_alist, unit_scheme_of,
)

GF2 = FieldSpec(2)


@pytest.fixture(scope="module")
def check_element():
    return GroupRingElem.parse(CHECK_ELEMENT)


@pytest.fixture(scope="module")
def repaired(check_element):
    return repair_check_element(check_element)


def test_parse_and_format():
    v = GroupRingElem.parse("1 + g + h^2*g^3 @ C5xC4")
    assert v.n == 5
    assert v.terms() == [(0, 0), (0, 1), (2, 3)]
    assert str(v) == "1 + g + h^2*g^3 @ C5xC4"
    assert GroupRingElem.parse("h + g^2", n=3).indices() == [2, 3]


@pytest.mark.parametrize("literal", ["g + x @ C5xC4", "g + h", "g @ C5xC3"])
def test_parse_errors(literal):
    with pytest.raises(ShapeError):
        GroupRingElem.parse(literal)


def test_repeated_terms_cancel():
    assert GroupRingElem.from_terms(3, [(1, 2), (1, 2)]) == GroupRingElem.zero(3)


def test_multiplication_is_represented():
    a = GroupRingElem.parse("1 + g + h @ C3xC4")
    b = GroupRingElem.parse("g^2 + h^3*g @ C3xC4")
    assert gr_to_matrix(a * b) == gr_to_matrix(a) @ gr_to_matrix(b)
    assert a * GroupRingElem.identity(3) == a
    assert gr_to_matrix(GroupRingElem.identity(3)) == Mat.identity(GF2, 12)


def test_group_element_inverse():
    g = GroupRingElem.parse("g @ C3xC4")
    assert gr_inverse(g) == GroupRingElem.parse("g^2 @ C3xC4")
    assert is_unit(g)


def test_even_support_is_not_a_unit():
    v = GroupRingElem.parse("1 + g @ C3xC4")
    assert not is_unit(v)
    assert gr_inverse(v) is None
    with pytest.raises(NonUnitError):
        unit_scheme_of(v)


def test_four_cycles_from_differences():
    """1 + g + g² + h: differences ±g each appear three times."""
    v = GroupRingElem.parse("1 + g + g^2 + h @ C3xC4")
    assert four_cycle_count(v) == 36
    assert short_cycle_census(gr_to_matrix(v)).four_cycles == 36


def test_census_small_matrices():
    assert short_cycle_census(Mat(GF2, [[1, 1], [1, 1]])).four_cycles == 1
    hexagon = short_cycle_census(Mat(GF2, [[0, 1, 1], [1, 0, 1], [1, 1, 0]]), max_girth_checked=6)
    assert hexagon.four_cycles == 0
    assert hexagon.six_cycles == 1
    assert hexagon.max_row_weight == 2


def test_census_threads_agree():
    m = gr_to_matrix(GroupRingElem.parse("1 + g + h^2*g @ C3xC4"))
    assert short_cycle_census(m, 6).six_cycles == short_cycle_census(m, 6, threads=3).six_cycles


def test_census_rejects_bad_input():
    with pytest.raises(FieldMismatchError):
        short_cycle_census(Mat(FieldSpec(3), [[1, 2]]))
    with pytest.raises(ShapeError):
        short_cycle_census(Mat(GF2, [[1, 1]]), max_girth_checked=8)


def test_check_element(check_element):
    assert check_element.support == 8
    assert not is_unit(check_element)
    report = short_cycle_census(gr_to_matrix(check_element))
    assert report.four_cycles == four_cycle_count(check_element) == 288
    assert report.max_col_weight == 8


def test_repair(repaired):
    assert repaired is not None
    assert repaired.support == 7
    assert is_unit(repaired)
    assert four_cycle_count(repaired) == 0


def test_ldpc_block_code(repaired):
    derivation = ldpc_derive(repaired, require_girth=4)
    assert (derivation.code.n, derivation.code.r) == (96, 48)
    assert derivation.keep_rows == tuple(range(48))
    assert derivation.cycle_report.max_col_weight == 7
    assert (derivation.code.generator @ derivation.code.control).is_zero()


def test_ldpc_girth_requirement():
    """1 + g + g² is a unit of GF(2)[C5] whose differences ±1 repeat."""
    v = GroupRingElem.parse("1 + g + g^2 @ C5xC4")
    assert is_unit(v)
    assert four_cycle_count(v) == 20
    with pytest.raises(GirthError):
        ldpc_derive(v, require_girth=4)


def test_ldpc_convolutional(repaired):
    mem1, census1 = ldpc_conv_memory1(repaired)
    assert mem1.parameters == (96, 48, 48, 1)
    assert set(census1) == {"z^0", "z^1"}
    assert max(r.four_cycles for r in census1.values()) == 0

    mem3, census3 = ldpc_conv_memory3(repaired)
    assert mem3.parameters == (96, 24, 72, 3)
    assert set(census3) == {"z^0", "z^1", "z^2", "z^3", "composite"}


def test_select_rows():
    assert select_rows_for(8, 3, None) == [0, 1, 2]
    sample = select_rows_for(96, 48, seed=7)
    assert sample == sorted(set(sample)) and len(sample) == 48
    assert select_rows_for(96, 48, seed=7) == sample
    with pytest.raises(ShapeError):
        select_rows_for(8, 8, None)


def test_random_unit_search():
    found = random_unit_search(7, 5, seed=3, max_trials=200)
    if found is not None:
        assert found.support == 5
        assert is_unit(found)
        assert four_cycle_count(found) == 0
    assert random_unit_search(7, 5, seed=3, max_trials=200) == found
    with pytest.raises(ShapeError):
        random_unit_search(7, 0)


def test_alist_format():
    m = Mat(GF2, [[1, 1, 0], [0, 1, 1]])
    text = to_alist(m)
    assert text.splitlines() == ["3 2", "2 2", "1 2 1", "2 2", "1 0", "1 2", "2 0", "1 2", "2 3"]
    assert from_alist(text) == m


def test_alist_needs_binary():
    with pytest.raises(FieldMismatchError):
        to_alist(Mat(FieldSpec(3), np.eye(2, dtype=np.int64)))


@pytest.mark.parametrize("seed", range(5))
def test_cycle_counts_do_not_grow_under_column_deletion(seed):
    v = GroupRingElem.parse("1 + g + g^2 + h @ C3xC4")
    H = gr_to_matrix(v)
    full = short_cycle_census(H, max_girth_checked=6)
    assert full.four_cycles == four_cycle_count(v)

    order = np.random.default_rng(seed).permutation(H.cols).tolist()
    previous = full
    for count in range(1, H.cols):
        current = short_cycle_census(delete_cols(H, order[:count]), max_girth_checked=6)
        assert current.four_cycles <= previous.four_cycles
        assert current.six_cycles <= previous.six_cycles
        previous = current
    assert previous.four_cycles == 0
