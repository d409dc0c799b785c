"""Tests for monomial bases, forms, contraction and Macaulay growth."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.graded_ring import (
    Form,
    catalecticant,
    contract,
    hq,
    macaulay_growth,
    monomial_basis,
    mult_tensor,
    multiply,
    multiply_by_variables,
)
from algebra.linalg_gf import FieldPrime
from errors import DegreeError, IdealInputError, ParameterRangeError

P = 101
FIELD = FieldPrime(P)


def forms(degree):
    return st.lists(
        st.integers(0, P - 1), min_size=hq(3, degree), max_size=hq(3, degree)
    ).map(lambda coeffs: Form(degree, np.array(coeffs, dtype=np.int64), FIELD))


def test_hq_values():
    assert [hq(3, i) for i in range(5)] == [1, 3, 6, 10, 15]
    assert hq(3, -1) == 0
    assert hq(2, 4) == 5
    with pytest.raises(ParameterRangeError):
        hq(0, 2)


def test_basis_order_is_graded_lex():
    assert monomial_basis(2).exponents == (
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    )
    assert monomial_basis(0).exponents == ((0, 0, 0),)
    assert monomial_basis(1).index((0, 1, 0)) == 1


def test_basis_index_rejects_wrong_degree():
    with pytest.raises(DegreeError):
        monomial_basis(2).index((1, 0, 0))


@pytest.mark.parametrize("d", [0, 1, 2, 5])
def test_mult_tensor_by_linear_forms_covers_pairs(d):
    table = mult_tensor(1, d)
    assert table.shape == (3, hq(3, d))
    assert table.size == 3 * hq(3, d)
    assert table.max() < hq(3, d + 1)


def test_mult_tensor_is_read_only():
    with pytest.raises(ValueError):
        mult_tensor(1, 1)[0, 0] = 0


def test_multiply_by_variables_blocks():
    rows = np.array([[1, 0, 0]])  # x
    out = multiply_by_variables(rows, 1)
    basis = monomial_basis(2)
    assert out.shape == (3, 6)
    assert out[0, basis.index((2, 0, 0))] == 1
    assert out[1, basis.index((1, 1, 0))] == 1
    assert out[2, basis.index((1, 0, 1))] == 1


class TestForm:
    def test_from_terms_reduces_and_merges(self):
        f = Form.from_terms([(1, (1, 1, 0)), (P + 2, (1, 1, 0)), (-1, (0, 0, 2))], FIELD)
        assert f.degree == 2
        assert dict((e, c) for c, e in f.terms()) == {(1, 1, 0): 3, (0, 0, 2): P - 1}

    def test_from_terms_rejects_inhomogeneous(self):
        with pytest.raises(IdealInputError):
            Form.from_terms([(1, (2, 0, 0)), (1, (0, 0, 3))], FIELD)

    def test_from_terms_rejects_empty(self):
        with pytest.raises(IdealInputError):
            Form.from_terms([], FIELD)

    def test_from_terms_rejects_bad_exponent(self):
        with pytest.raises(IdealInputError):
            Form.from_terms([(1, (1, 1))], FIELD)

    def test_str_uses_signs(self):
        f = Form.from_terms([(1, (1, 1, 0)), (-1, (0, 0, 2))], FIELD)
        assert str(f) == "x*y - z^2"
        assert str(Form.zero(3, FIELD)) == "0"

    def test_arithmetic(self):
        x = Form.monomial((1, 0, 0), FIELD)
        y = Form.monomial((0, 1, 0), FIELD)
        assert (x + y) * (x - y) == x * x - y * y
        assert 2 * x == x + x

    def test_adding_mixed_degrees(self):
        with pytest.raises(DegreeError):
            Form.monomial((1, 0, 0), FIELD) + Form.monomial((2, 0, 0), FIELD)


class TestContraction:
    def test_monomial_contraction(self):
        g = Form.monomial((1, 0, 0), FIELD)
        F = Form.monomial((2, 1, 0), FIELD)
        assert contract(g, F) == Form.monomial((1, 1, 0), FIELD)
        assert contract(Form.monomial((0, 0, 1), FIELD), F).is_zero()

    def test_contraction_has_no_factorials(self):
        """x^2 o x^2 = 1 even in characteristic 2."""
        field = FieldPrime(2)
        g = Form.monomial((2, 0, 0), field)
        assert contract(g, g) == Form.monomial((0, 0, 0), field)

    def test_degree_too_large(self):
        with pytest.raises(DegreeError):
            contract(Form.monomial((3, 0, 0), FIELD), Form.monomial((2, 0, 0), FIELD))

    def test_catalecticant_shape(self):
        F = Form.monomial((1, 1, 2), FIELD)
        assert catalecticant(F, 1).shape == (3, hq(3, 3))
        with pytest.raises(DegreeError):
            catalecticant(F, 5)

    @given(forms(1), forms(2), forms(5))
    @settings(max_examples=40, deadline=None)
    def test_contraction_is_a_module_action(self, g, h, F):
        """(g*h) o F = g o (h o F)."""
        assert contract(multiply(g, h), F) == contract(g, contract(h, F))

    @given(forms(1), forms(2), forms(2))
    @settings(max_examples=40, deadline=None)
    def test_multiplication_is_associative_and_commutative(self, a, b, c):
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        assert multiply(a, b) == multiply(b, a)


class TestMacaulayGrowth:
    def test_known_values(self):
        assert macaulay_growth(3, 1) == 6
        assert macaulay_growth(4, 2) == 5
        assert macaulay_growth(6, 2) == 10
        assert macaulay_growth(0, 3) == 0
        assert macaulay_growth(1, 4) == 1

    def test_rejects_bad_arguments(self):
        with pytest.raises(ParameterRangeError):
            macaulay_growth(3, 0)
        with pytest.raises(ParameterRangeError):
            macaulay_growth(-1, 2)

    @given(st.integers(1, 8))
    @settings(max_examples=20, deadline=None)
    def test_full_polynomial_ring_is_extremal(self, d):
        assert macaulay_growth(hq(3, d), d) == hq(3, d + 1)
