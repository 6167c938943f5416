"""
Tests for the finite field layer: literals, element arithmetic, roots of
unity, square roots and degree-2 extensions.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import FieldConstructionError, FieldMismatchError
from finite_field import (
    FieldSpec, arith, degree_two_extension, element_of_order, quadratic_extension, sqrt_minus_one, sqrt_of,
)

FIELDS_UP_TO_64 = [FieldSpec(p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)] + [
    FieldSpec(2, 2), FieldSpec(2, 3), FieldSpec(3, 2), FieldSpec(2, 4), FieldSpec(5, 2), FieldSpec(3, 3), FieldSpec(2, 5),
    FieldSpec(7, 2), FieldSpec(2, 6),
]
FIELDS_UP_TO_16 = [spec for spec in FIELDS_UP_TO_64 if spec.order <= 16]
LARGE_FIELDS = [FieldSpec(2, 8), FieldSpec(101), FieldSpec(3, 5)]


def test_literal_parsing():
    """Test the accepted literal forms."""
    assert FieldSpec.from_literal("gf(8)") == FieldSpec(2, 3)
    assert FieldSpec.from_literal("GF(2^3)") == FieldSpec(2, 3)
    assert FieldSpec.from_literal("gf(17)").order == 17
    assert FieldSpec.from_literal("gf(2^2; modulus=[1,1,1])") == FieldSpec(2, 2)
    assert FieldSpec(2, 3).literal == "gf(2^3)"
    assert FieldSpec(5).literal == "gf(5)"


@pytest.mark.parametrize("literal", ["gf(6)", "gf(2^0)", "gf(x)", "gf(2^2; modulus=[1,0,1])"])
def test_bad_literals(literal):
    with pytest.raises(FieldConstructionError):
        FieldSpec.from_literal(literal)


def test_non_prime_characteristic():
    with pytest.raises(FieldConstructionError):
        FieldSpec(4)


def test_integer_image():
    assert FieldSpec(5).from_int(12).rep == 2
    assert FieldSpec(2, 3).from_int(7).rep == 1


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        FieldSpec(5).one + FieldSpec(7).one


def test_division_by_zero():
    gf = FieldSpec(7)
    with pytest.raises(ZeroDivisionError):
        gf.one / gf.zero


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(LARGE_FIELDS), st.data())
def test_field_axioms_large_fields(spec, data):
    """Test ring identities and inverses on random elements of larger fields."""
    a = spec.element(data.draw(st.integers(0, spec.order - 1)))
    b = spec.element(data.draw(st.integers(0, spec.order - 1)))
    c = spec.element(data.draw(st.integers(0, spec.order - 1)))
    assert (a + b) - b == a
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == spec.one
    assert a + (-a) == spec.zero


def test_element_of_order():
    omega = element_of_order(FieldSpec(2, 3), 7)
    assert omega ** 7 == FieldSpec(2, 3).one
    assert omega != FieldSpec(2, 3).one

    omega = element_of_order(FieldSpec(17), 8)
    assert omega ** 8 == FieldSpec(17).one
    assert omega ** 4 != FieldSpec(17).one


def test_no_element_of_order():
    with pytest.raises(FieldConstructionError):
        element_of_order(FieldSpec(2, 3), 4)


def test_square_roots():
    assert sqrt_minus_one(FieldSpec(5)).rep == 2
    assert sqrt_minus_one(FieldSpec(7)) is None
    assert sqrt_minus_one(FieldSpec(2, 3)).rep == 1
    assert sqrt_of(FieldSpec(11), FieldSpec(11).element(4)).rep == 2
    assert sqrt_of(FieldSpec(5), FieldSpec(5).element(2)) is None


def test_quadratic_extension_adds_sqrt_minus_one():
    extension = quadratic_extension(FieldSpec(7))
    assert extension.field.order == 49
    i = sqrt_minus_one(extension.field)
    assert i is not None
    assert i * i == -extension.field.one


def test_quadratic_extension_refused_when_present():
    with pytest.raises(FieldConstructionError):
        quadratic_extension(FieldSpec(5))


@pytest.mark.parametrize("spec", FIELDS_UP_TO_16, ids=str)
def test_embedding_is_a_homomorphism(spec):
    extension = degree_two_extension(spec)
    assert extension.field.order == spec.order ** 2
    elements = [spec.element(r) for r in range(spec.order)]
    assert len({extension.embed(a) for a in elements}) == spec.order
    assert extension.embed(spec.one) == extension.field.one
    for a in elements:
        for b in elements:
            assert extension.embed(a * b) == extension.embed(a) * extension.embed(b)
            assert extension.embed(a + b) == extension.embed(a) + extension.embed(b)


@pytest.mark.parametrize("spec", FIELDS_UP_TO_64, ids=str)
def test_field_axioms_exhaustive(spec):
    """Every triple of elements, checked on broadcast arrays."""
    q = spec.order
    x = spec.gf(np.arange(q))
    a, b, c = x[:, None, None], x[None, :, None], x[None, None, :]
    assert np.all((a + b) + c == a + (b + c))
    assert np.all((a * b) * c == a * (b * c))
    assert np.all(a * (b + c) == a * b + a * c)
    assert np.all(x[:, None] + x[None, :] == x[None, :] + x[:, None])
    assert np.all(x[:, None] * x[None, :] == x[None, :] * x[:, None])
    assert np.all(x + (-x) == 0)
    assert np.all(x * 1 == x)
    nonzero = x[1:]
    assert np.all(nonzero * nonzero ** -1 == 1)
    assert np.all(nonzero ** (q - 1) == 1)
    assert np.all(x * spec.p == 0)
    assert np.all(nonzero[:, None] * nonzero[None, :] != 0)


@pytest.mark.parametrize("spec", FIELDS_UP_TO_16, ids=str)
def test_element_arithmetic_matches_galois(spec):
    gf = spec.gf
    for r in range(spec.order):
        for s in range(spec.order):
            a, b = spec.element(r), spec.element(s)
            assert arith(a, b, "add").rep == int(gf(r) + gf(s))
            assert arith(a, b, "sub").rep == int(gf(r) - gf(s))
            assert arith(a, b, "mul").rep == int(gf(r) * gf(s))
            if s:
                assert arith(a, b, "div").rep == int(gf(r) / gf(s))
                assert (a / b) * b == a
    with pytest.raises(ValueError):
        arith(spec.one, spec.one, "pow")
