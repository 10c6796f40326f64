import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monogenic.clifford import CliffordNumber, Paravector
from monogenic.errors import DimensionMismatchError
from monogenic.multiindex import enumerate_up_to, mi_add, mi_abs
from monogenic.series import (
    MonogenicSeries,
    ck_mul_left,
    dirac_residual,
    max_modulus,
    series_derivative,
    series_eval,
    taylor_coefficient,
)
from monogenic.verify import brute_force_ck, random_rational_series

from conftest import random_point


def test_constant_series_everywhere():
    c = CliffordNumber(2, {0b11: Fraction(3, 2)})
    f = MonogenicSeries(2, 0, {(0, 0): c})
    for x in [Paravector(0.0, [0.0, 0.0]), Paravector(1.0, [2.0, -3.0])]:
        assert series_eval(f, x) == c.to_float()


def test_eval_single_basis_coefficient():
    f = MonogenicSeries.basis_element(2, (1, 0), exact=False)
    x = Paravector(0.5, [0.25, 9.0])
    value = series_eval(f, x)
    assert value == CliffordNumber(2, {0: 0.25, 0b01: -0.5})
    # restriction to the first axis is the plain monomial
    g = MonogenicSeries.basis_element(2, (2, 0), exact=False)
    x_axis = Paravector(0.0, [1.5, 0.0])
    got = series_eval(g, x_axis)
    assert got[0] == pytest.approx(1.5**2, rel=1e-15)


def test_derivative_shift_and_commutativity(rng):
    f = random_rational_series(2, 5, 99)
    assert series_derivative(f, (0, 0)) is f
    d = series_derivative(MonogenicSeries.basis_element(2, (2, 0)), (1, 0))
    assert d.coeffs == {(1, 0): CliffordNumber.scalar(2, Fraction(2))}
    d12 = series_derivative(series_derivative(f, (1, 0)), (0, 1))
    d21 = series_derivative(series_derivative(f, (0, 1)), (1, 0))
    assert d12.coeffs == d21.coeffs
    assert series_derivative(f, (6, 0)).is_zero()


def test_derivative_matches_rule_numerically(rng):
    f = random_rational_series(2, 4, 5).to_float()
    df = series_derivative(f, (1, 0))
    h = 1e-6
    for _ in range(5):
        x = random_point(2, rng)
        plus, minus = list(x.components()), list(x.components())
        plus[1] += h
        minus[1] -= h
        approx = (
            series_eval(f, Paravector.from_components(plus))
            - series_eval(f, Paravector.from_components(minus))
        ).scale(1.0 / (2 * h))
        exact = series_eval(df, x)
        assert (approx - exact).norm() <= 1e-6 * (1.0 + exact.norm())


def test_taylor_round_trip_exact():
    f = random_rational_series(2, 5, 123)
    for m in f.coeffs:
        assert taylor_coefficient(f, m) == f.coeffs[m]
    empty = tuple(m for m in enumerate_up_to(2, 5) if m not in f.coeffs)
    for m in empty[:5]:
        assert taylor_coefficient(f, m).is_zero()


def test_ck_unit_laws_and_single_term():
    f = random_rational_series(2, 4, 7)
    unit = MonogenicSeries.unit(2)
    assert ck_mul_left(f, unit, 4).coeffs == f.coeffs
    assert ck_mul_left(unit, f, 4).coeffs == f.coeffs
    a = MonogenicSeries.basis_element(2, (1, 0))
    b = MonogenicSeries.basis_element(2, (0, 1))
    prod = ck_mul_left(a, b, 2)
    assert prod.coeffs == {(1, 1): CliffordNumber.scalar(2, Fraction(1))}


def test_ck_against_brute_force_exact():
    for seed in range(6):
        f = random_rational_series(2, 5, seed)
        g = random_rational_series(2, 5, 1000 + seed)
        for q_out in (3, 5, 10):
            assert ck_mul_left(f, g, q_out).coeffs == brute_force_ck(f, g, q_out).coeffs


def test_ck_truncation_coherence():
    f = random_rational_series(2, 5, 21)
    g = random_rational_series(2, 5, 22)
    full = ck_mul_left(f, g, 8)
    assert full.truncate(4).coeffs == ck_mul_left(f, g, 4).coeffs


def test_ck_associative_up_to_truncation():
    for seed in range(4):
        f = random_rational_series(2, 3, seed)
        g = random_rational_series(2, 3, 50 + seed)
        h = random_rational_series(2, 3, 90 + seed)
        q = 5
        left = ck_mul_left(ck_mul_left(f, g, q), h, q)
        right = ck_mul_left(f, ck_mul_left(g, h, q), q)
        assert left.coeffs == right.coeffs


def test_ck_noncommutative_in_general():
    a = MonogenicSeries(2, 0, {(0, 0): CliffordNumber.unit(2, 1)})
    b = MonogenicSeries(2, 0, {(0, 0): CliffordNumber.unit(2, 2)})
    assert ck_mul_left(a, b, 0).coeffs != ck_mul_left(b, a, 0).coeffs


def test_ck_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        ck_mul_left(MonogenicSeries.unit(2), MonogenicSeries.unit(3), 2)


def test_dirac_residual_small_for_series(rng):
    f = random_rational_series(2, 4, 31).to_float()
    points = [random_point(2, rng, radius=1.2) for _ in range(10)]
    res = dirac_residual(f, points, h=1e-5)
    bound = 1e-6 * (1.0 + max(f.coeff_upper_bound(p.norm()) for p in points))
    assert res <= bound


def test_dirac_residual_detects_corruption(rng):
    f = random_rational_series(2, 4, 31).to_float()
    points = [random_point(2, rng, radius=1.0) for _ in range(10)]

    def corrupted(x):
        return series_eval(f, x).scale(x.x0)

    assert dirac_residual(corrupted, points, h=1e-5) > 1e-2


def test_dirac_residual_constant_is_roundoff():
    f = MonogenicSeries(2, 0, {(0, 0): CliffordNumber.scalar(2, 2.5)})
    assert dirac_residual(f, [Paravector(0.4, [0.1, 0.2])], h=1e-5) <= 1e-10


def test_max_modulus_axis_family():
    f = MonogenicSeries.basis_element(2, (5, 0), exact=False)
    for r in (0.5, 1.0, 2.0):
        lower, upper = max_modulus(f, r, samples=64)
        assert upper == pytest.approx(r**5, rel=1e-12)
        assert lower == pytest.approx(r**5, rel=1e-12)  # axis point is sampled
    lower, upper = max_modulus(f, 0.0)
    assert lower == upper == 0.0


def test_max_modulus_bracket(rng):
    f = random_rational_series(2, 4, 77).to_float()
    lower, upper = max_modulus(f, 1.7, samples=64)
    assert lower <= upper * (1 + 1e-12)
    c = MonogenicSeries(2, 0, {(0, 0): CliffordNumber.scalar(2, -3.0)})
    lo, up = max_modulus(c, 2.0, samples=8)
    assert lo == pytest.approx(3.0) and up == pytest.approx(3.0)


def test_cauchy_inequality_upper_bound_form():
    from monogenic.multiindex import ln_c_nm

    for seed in range(10):
        f = random_rational_series(2, 5, 400 + seed)
        for r in (0.5, 1.0, 2.0, 4.0):
            upper = f.coeff_upper_bound(r)
            for m, a in f.coeffs.items():
                bound = math.exp(ln_c_nm(2, m)) * upper / r ** mi_abs(m)
                assert a.norm() <= bound * (1 + 1e-12)


def test_homogeneous_part():
    f = random_rational_series(2, 5, 3)
    p2 = f.homogeneous_part(2)
    assert all(mi_abs(m) == 2 for m in p2.coeffs)
    zero = Paravector(0.0, [0.0, 0.0])
    if not p2.is_zero():
        assert series_eval(p2, zero).is_zero() or series_eval(p2, zero).norm() == 0.0


def small_series(n=2, degree=3):
    from monogenic.multiindex import enumerate_up_to

    indices = enumerate_up_to(n, degree)
    coeff = st.integers(-3, 3).map(Fraction)
    blade = st.dictionaries(st.integers(0, (1 << n) - 1), coeff, max_size=3).map(
        lambda d: CliffordNumber(n, d)
    )
    return st.dictionaries(st.sampled_from(indices), blade, max_size=6).map(
        lambda d: MonogenicSeries(n, degree, d)
    )


@settings(max_examples=60, deadline=None)
@given(small_series(), small_series(), small_series())
def test_ck_bilinear_and_truncation_coherent(f, g, h):
    q = 6
    left = ck_mul_left(f, g + h, q)
    right = ck_mul_left(f, g, q) + ck_mul_left(f, h, q)
    assert left.coeffs == right.coeffs
    assert ck_mul_left(f, g, q).truncate(3).coeffs == ck_mul_left(f, g, 3).coeffs


@settings(max_examples=40, deadline=None)
@given(small_series())
def test_taylor_round_trip_property(f):
    for m in f.coeffs:
        assert taylor_coefficient(f, m) == f.coeffs[m]


def test_right_module_action():
    f = random_rational_series(2, 3, 8)
    c = CliffordNumber(2, {0b11: Fraction(2), 0: Fraction(-1)})
    g = f.scale_right(c)
    x = Paravector(0.3, [0.1, -0.7])
    from monogenic.clifford import cl_mul

    assert (series_eval(g, x) - cl_mul(series_eval(f, x), c.to_float())).norm() <= 1e-12
