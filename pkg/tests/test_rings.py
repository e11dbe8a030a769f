from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thetaparity.core.exceptions.algebra_exceptions import NotAUnit, UsageError
from thetaparity.rings.arith import series_inv, series_matmul, series_mul, series_outer, shift_down, valuations
from thetaparity.rings.fields import PrimeField, RationalField, make_field
from thetaparity.rings.models import PolyElement, SquareZeroPlaneElement, TruncSeries
from thetaparity.rings.utils import halve, trunc_inv, trunc_mul


def series(field, coeffs, precision):
    return TruncSeries.from_coeffs(field, coeffs, precision)


def test_trunc_mul_truncates_square_term(small_field):
    a = series(small_field, [1, 1], 2)
    b = series(small_field, [1, -1], 2)
    assert trunc_mul(a, b) == TruncSeries.one(small_field, 2)


def test_trunc_mul_by_zero(small_field):
    a = series(small_field, [3, 2, 5], 3)
    assert trunc_mul(a, TruncSeries.zero(small_field, 3)).is_zero


def test_trunc_mul_monomials(small_field):
    s = TruncSeries.monomial(small_field, 1, 3)
    assert trunc_mul(s, s) == TruncSeries.monomial(small_field, 2, 3)


def test_trunc_mul_precision_mismatch(f7):
    with pytest.raises(UsageError):
        trunc_mul(TruncSeries.one(f7, 2), TruncSeries.one(f7, 3))


def test_trunc_inv_examples(small_field):
    assert trunc_inv(TruncSeries.one(small_field, 4)) == TruncSeries.one(small_field, 4)
    assert trunc_inv(series(small_field, [1, 1], 3)) == series(small_field, [1, -1, 1], 3)
    with pytest.raises(NotAUnit):
        trunc_inv(TruncSeries.monomial(small_field, 1, 3))


def test_halve():
    f7 = PrimeField(7)
    assert halve(0, f7) == 0
    assert halve(1, f7) == 4
    assert halve(3, RationalField()) == Fraction(3, 2)


def test_prime_field_rejects_two_and_composites():
    with pytest.raises(UsageError):
        PrimeField(2)
    with pytest.raises(UsageError):
        PrimeField(9)
    with pytest.raises(UsageError):
        make_field('prime', None)
    with pytest.raises(UsageError):
        make_field('complex', 7)


def test_make_field_is_cached():
    assert make_field('prime', 7) is make_field('prime', 7)
    assert isinstance(make_field('rational'), RationalField)


def test_rational_field_maps_fractions_into_prime_field():
    f7 = PrimeField(7)
    assert f7(Fraction(1, 2)) == 4
    with pytest.raises(NotAUnit):
        f7(Fraction(1, 7))


def test_series_outer_matches_entrywise_products(f7):
    rng = np.random.default_rng(5)
    a = f7.random_array(rng, (4, 3))
    b = f7.random_array(rng, (4, 2))
    out = series_outer(f7, a, b)
    for i in range(3):
        for j in range(2):
            assert np.array_equal(out[:, i, j], series_mul(f7, a[:, i], b[:, j]))


def test_prime_field_array_reduces_integers():
    f7 = PrimeField(7)
    arr = f7.array([[-1, 8], [14, 3]])
    assert arr.dtype == np.int64
    assert arr.tolist() == [[6, 1], [0, 3]]
    assert f7.array([[Fraction(1, 2), 1]]).tolist() == [[4, 1]]
    assert f7.zeros((2, 3)).dtype == np.int64
    assert f7.identity(3).tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_series_mul_by_hand(small_field):
    # (1 + 2s + 3s^2)(4 + 5s) = 4 + 13s + 22s^2 mod s^3
    a = small_field.array([1, 2, 3])
    b = small_field.array([4, 5, 0])
    assert np.array_equal(series_mul(small_field, a, b), small_field.array([4, 13, 22]))


def test_series_matmul_matches_layer_sums(f7):
    rng = np.random.default_rng(8)
    a = f7.random_array(rng, (3, 2, 4))
    b = f7.random_array(rng, (3, 4, 3))
    expected = f7.zeros((3, 2, 3))
    for t in range(3):
        for i in range(t + 1):
            expected[t] = f7.reduce(expected[t] + a[i] @ b[t - i])
    assert np.array_equal(series_matmul(f7, a, b), expected)


def test_shift_down_and_valuations(f7):
    a = f7.array([[0, 1], [0, 0], [3, 0]])
    assert list(valuations(a)) == [2, 0]
    assert np.array_equal(shift_down(f7, a, 2), f7.array([[3, 0], [0, 0], [0, 0]]))


def test_poly_element_trims_and_multiplies(f7):
    p = PolyElement(f7, (0, 1, 0, 0))
    assert p.coeffs == (0, 1)
    assert p.degree == 1
    assert p.valuation == 1
    assert (p * p).coeffs == (0, 0, 1)
    assert PolyElement(f7, (7, 14)).is_zero
    assert PolyElement(f7, ()).valuation is None


def test_square_zero_plane_products_vanish(f7):
    x, y = SquareZeroPlaneElement.x(f7), SquareZeroPlaneElement.y(f7)
    assert (x * y).is_zero
    assert (x * x).is_zero
    one = SquareZeroPlaneElement.constant(f7, 1)
    assert one * x == x


@given(st.lists(st.integers(0, 32002), min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_series_inverse_property(coeffs):
    field = PrimeField(32003)
    coeffs[0] = coeffs[0] or 1
    a = field.array(coeffs)
    product = series_mul(field, a, series_inv(field, a))
    assert product[0] == 1
    assert not product[1:].any()


@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=5),
    st.lists(st.integers(-20, 20), min_size=1, max_size=5),
)
@settings(max_examples=60, deadline=None)
def test_trunc_mul_commutes_over_rationals(a, b):
    field = RationalField()
    k = max(len(a), len(b))
    x, y = series(field, a, k), series(field, b, k)
    assert trunc_mul(x, y) == trunc_mul(y, x)
