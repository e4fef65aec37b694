import math

import pytest
from hypothesis import given, settings, strategies as st

from quatcalc import exp_log as E
from quatcalc import oracles
from quatcalc import series as S
from quatcalc.errors import NearRealAxis, NonRealG
from quatcalc.harness.sweeps import fit_loglog
from quatcalc.quaternion import I, J, K, ONE, ZERO, Quaternion, mul, polar_decompose, split_delta
from quatcalc.series import PowerSeries

from .helpers import off_axis_quaternions, qclose, quaternions, series

SCALES = [1e-1, 1e-2, 1e-3, 1e-4]
SQUARE = PowerSeries.monomial(2)


def test_eval_examples():
    assert qclose(S.eval(SQUARE, I + J), Quaternion(-2.0), 1e-15)
    x = Quaternion(0.3, -0.7, 1.1, 0.2)
    assert qclose(S.eval(PowerSeries.from_reals([1, 1]), x), ONE + x, 1e-15)
    F = PowerSeries.monomial(3, J)
    x = Quaternion(1, 2)
    expected = Quaternion(0, 0, -11, 2)
    assert qclose(oracles.eval_direct(F, x), expected, 0)
    assert qclose(S.eval(F, x), expected, 1e-15)


@given(series(), quaternions)
def test_eval_matches_direct_multiplication(F, x):
    ref = oracles.eval_direct(F, x)
    assert (S.eval(F, x) - ref).norm() <= 1e-14 * F.abs_bound(x.norm()) + 1e-300


@given(series(left=False), st.floats(-2, 2))
def test_eval_on_real_axis_is_real_polynomial(F, t):
    expected = sum(c * t ** n for n, c in enumerate(F.real_coeffs()))
    got = S.eval(F, Quaternion(t))
    assert got.x == got.y == got.z == 0.0
    assert abs(got.w - expected) <= 1e-14 * F.abs_bound(abs(t)) + 1e-300


def test_eval_embedded_square():
    ev = S.eval_embedded(SQUARE, Quaternion(1, 1))
    assert qclose(ev.F_at_x, Quaternion(0, 2), 1e-15)
    assert qclose(ev.F_at_xstar, Quaternion(0, -2), 1e-15)
    assert qclose(ev.difference_quotient, Quaternion(2.0), 1e-15)


def test_eval_embedded_real_limit():
    F = PowerSeries.from_reals([0.5, -1.0, 2.0, 3.0])
    x0 = 0.7
    ev = S.eval_embedded(F, Quaternion(x0, 1e-14))
    fprime = -1.0 + 4.0 * x0 + 9.0 * x0 ** 2
    assert ev.on_real_axis
    assert ev.difference_quotient == ev.Fprime_at_x
    assert ev.difference_quotient.w == pytest.approx(fprime, rel=1e-15)


def test_eval_embedded_exp_series():
    ev = S.eval_embedded(PowerSeries.exp_series(30), Quaternion(1, 0, 2, 0))
    expected = math.e * math.sin(2.0) / 2.0
    assert qclose(ev.difference_quotient, Quaternion(expected), 1e-15)
    assert qclose(ev.F_at_x, E.exp(Quaternion(1, 0, 2, 0)), 1e-15)


@given(series(left=False), off_axis_quaternions())
def test_real_series_conjugate_symmetry(F, x):
    ev = S.eval_embedded(F, x)
    assert ev.F_at_xstar == ev.F_at_x.conjugate()


def test_first_order_complex_reduction():
    F = PowerSeries.from_reals([0.1, 0.2, -0.3, 0.4, 0.5])
    x = Quaternion(0.3, 0.4, -1.2, 0.5)
    u = polar_decompose(x).u
    d = 0.3 * ONE + 0.8 * u
    ev = S.eval_embedded(F, x)
    assert qclose(S.general_first_order(F, x, d), mul(ev.Fprime_at_x, d), 1e-14)
    assert qclose(S.general_first_order_commutator_form(F, x, d), mul(ev.Fprime_at_x, d), 1e-14)


def test_first_order_square_perpendicular():
    # (x + ej)^2 - x^2 = e (xj + jx) + e^2 j^2 and xj + jx = (x + x*) j = 2j
    eps = 1e-3
    x, d = Quaternion(1, 1), eps * J
    sp = split_delta(d, I)
    assert sp.parallel == ZERO and sp.perp == d
    assert qclose(S.general_first_order(SQUARE, x, d), 2 * eps * J, 1e-15)
    assert qclose(mul(x, J) + mul(J, x), 2 * J, 0)


@settings(max_examples=50, deadline=None)
@given(series(max_degree=8), off_axis_quaternions(), quaternions.filter(lambda q: q.norm() > 1e-3))
def test_first_order_residual_is_second_order(F, x, d):
    d = d / d.norm()
    res = [(S.eval(F, x + s * d) - S.eval(F, x) - S.general_first_order(F, x, s * d)).norm()
           for s in (1e-2, 1e-3)]
    # O(d^2): ratio ~100; the bound allows curvature and rounding slop
    scale = F.abs_bound(x.norm() + 0.01, 2)
    assert res[1] <= 1e-6 * scale + 1e-11 * F.abs_bound(x.norm() + 0.01)
    assert res[0] <= 1e-4 * scale + 1e-11 * F.abs_bound(x.norm() + 0.01)


def test_first_order_slope_fixed_case():
    F = PowerSeries([Quaternion(0.2, 0.1, 0, 0), K, Quaternion(-0.5), Quaternion(0, 0.3, 0.3, 0),
                     Quaternion(0.1)])
    x, d = Quaternion(0.4, -0.6, 1.1, 0.9), Quaternion(0.2, 0.5, -0.3, 0.7)
    res = [(S.eval(F, x + s * d) - S.eval(F, x) - S.general_first_order(F, x, s * d)).norm()
           for s in SCALES]
    slope, _ = fit_loglog(SCALES, res)
    assert abs(slope - 2.0) <= 0.05


@given(series(), off_axis_quaternions(), quaternions)
def test_two_forms_agree(F, x, d):
    a = S.general_first_order(F, x, d)
    b = S.general_first_order_commutator_form(F, x, d)
    assert (a - b).norm() <= 1e-13 * d.norm() * F.abs_bound(x.norm(), 1) + 1e-300


def test_commutator_form_needs_direction():
    with pytest.raises(NearRealAxis):
        S.general_first_order_commutator_form(SQUARE, Quaternion(2.0), J)


@given(off_axis_quaternions(), quaternions)
def test_identity_and_constant(x, d):
    ident = PowerSeries.from_reals([0, 1])
    assert qclose(S.general_first_order(ident, x, d), d, 1e-15)
    assert qclose(S.general_first_order_commutator_form(ident, x, d), d, 1e-14)
    const = PowerSeries([Quaternion(0.3, 0.1, -2, 4)])
    assert S.general_first_order(const, x, d) == ZERO


@pytest.mark.parametrize("n", range(1, 11))
def test_monomial_first_order_words(n):
    x, d = Quaternion(0.3, 0.9, -0.4, 0.7), Quaternion(-0.2, 0.6, 0.5, -0.1)
    F = PowerSeries.monomial(n)
    got = S.general_first_order(F, x, d)
    ref = oracles.monomial_first_order_words(n, x, d)
    assert (got - ref).norm() <= 1e-12 * n * x.norm() ** (n - 1) * d.norm()


@pytest.mark.parametrize("n", range(2, 11))
def test_monomial_second_order_words(n):
    x, d = Quaternion(-0.5, 0.2, 1.3, -0.4), Quaternion(0.4, -0.3, 0.2, 0.9)
    F = PowerSeries.monomial(n)
    got = S.second_order(F, x, d)
    ref = oracles.monomial_second_order_words(n, x, d)
    assert (got - ref).norm() <= 1e-12 * n * (n - 1) * x.norm() ** (n - 2) * d.norm() ** 2


@given(series(max_degree=6), off_axis_quaternions(), quaternions)
def test_first_order_equals_word_oracle(F, x, d):
    ref = oracles.series_first_order_words(F, x, d)
    got = S.general_first_order(F, x, d)
    assert (got - ref).norm() <= 1e-12 * d.norm() * F.abs_bound(x.norm(), 1) + 1e-300


@given(series(), series(), st.floats(-2, 2), off_axis_quaternions(), quaternions)
def test_linearity(F, G, alpha, x, d):
    lhs = S.general_first_order(alpha * F + G, x, d)
    rhs = alpha * S.general_first_order(F, x, d) + S.general_first_order(G, x, d)
    scale = d.norm() * (abs(alpha) * F.abs_bound(x.norm(), 1) + G.abs_bound(x.norm(), 1))
    assert (lhs - rhs).norm() <= 1e-13 * scale + 1e-300


def test_second_order_complex_reduction():
    F = PowerSeries.from_reals([0.1, 0.2, -0.3, 0.4, 0.5])
    x = Quaternion(0.3, 0.4, -1.2, 0.5)
    u = polar_decompose(x).u
    d = 0.3 * ONE + 0.8 * u
    ev = S.eval_embedded(F, x)
    assert qclose(S.second_order(F, x, d), 0.5 * mul(ev.Fdoubleprime_at_x, mul(d, d)), 1e-14)


@given(off_axis_quaternions(), quaternions)
def test_second_order_square_is_exact(x, d):
    total = S.general_first_order(SQUARE, x, d) + S.second_order(SQUARE, x, d)
    exact = mul(x, d) + mul(d, x) + mul(d, d)
    assert (total - exact).norm() <= 1e-13 * (x.norm() + d.norm()) ** 2 + 1e-300


@given(series(max_degree=2), off_axis_quaternions(), quaternions)
def test_polynomial_exactness(F, x, d):
    pred = S.eval(F, x) + S.general_first_order(F, x, d) + S.second_order(F, x, d)
    assert (pred - S.eval(F, x + d)).norm() <= 1e-13 * F.abs_bound(x.norm() + d.norm()) + 1e-300


def test_second_order_slope_fixed_case():
    F = PowerSeries([Quaternion(0.2, 0.1, 0, 0), K, Quaternion(-0.5), Quaternion(0, 0.3, 0.3, 0),
                     Quaternion(0.1), Quaternion(0.05, 0, 0, -0.2)])
    x, d = Quaternion(0.4, -0.6, 1.1, 0.9), Quaternion(0.2, 0.5, -0.3, 0.7)
    res = []
    for s in SCALES:
        inc = S.eval(F, x + s * d) - S.eval(F, x)
        res.append((inc - S.general_first_order(F, x, s * d) - S.second_order(F, x, s * d)).norm())
    slope, _ = fit_loglog(SCALES, res)
    assert abs(slope - 3.0) <= 0.1


def test_second_order_needs_direction():
    with pytest.raises(NearRealAxis):
        S.second_order(SQUARE, Quaternion(1.0), J)


def test_leibnitz_smallest_product():
    ident = PowerSeries.from_reals([0, 1])
    x, d = Quaternion(0.3, 0.5, -0.2, 1.0), Quaternion(0.1, 0.7, -0.4, 0.2)
    assert S.leibnitz_check(ident, ident, x, d) <= 1e-13
    lhs, _ = S.leibnitz_sides(ident, ident, x, d)
    assert qclose(lhs, mul(x, d) + mul(d, x), 1e-14)


@given(series(max_degree=6), series(max_degree=6, left=False), off_axis_quaternions(), quaternions)
def test_leibnitz_random(F, G, x, d):
    rad = x.norm()
    scale = d.norm() * (F.abs_bound(rad) * G.abs_bound(rad, 1) + F.abs_bound(rad, 1) * G.abs_bound(rad))
    assert S.leibnitz_check(F, G, x, d) <= 1e-12 * scale + 1e-300


def test_leibnitz_quaternion_left_coefficient():
    F = PowerSeries([Quaternion(0.5), Quaternion(-0.2), K, Quaternion(0.1)])
    G = PowerSeries.from_reals([0.3, -1.0, 0.25, 0.7])
    x, d = Quaternion(-0.4, 1.1, 0.3, -0.8), Quaternion(0.6, 0.1, -0.9, 0.4)
    assert S.leibnitz_check(F, G, x, d) <= 1e-12


def test_leibnitz_rejects_quaternion_g():
    F = PowerSeries.from_reals([0, 1])
    with pytest.raises(NonRealG):
        S.leibnitz_check(F, PowerSeries([ZERO, J]), Quaternion(0, 1), J)


def test_recenter_at_origin_matches_general():
    F = PowerSeries.from_reals([0.2, -0.4, 0.3, 0.1])
    x, d = Quaternion(0.5, 0.7, -0.2, 0.3), Quaternion(0.1, 0.2, 0.3, 0.4)
    assert S.recenter(F, ZERO, x, d) == S.general_first_order(F, x, d)


def test_recenter_real_shift_keeps_direction():
    F = PowerSeries.from_reals([0.2, -0.4, 0.3, 0.1])
    x, d = Quaternion(0.5, 0.7, -0.2, 0.3), Quaternion(0.1, 0.2, 0.3, 0.4)
    shift = Quaternion(1.5)
    assert polar_decompose(x - shift).u == polar_decompose(x).u
    assert S.recenter(F, shift, x, d) == S.general_first_order(F, x - shift, d)


def test_recenter_quaternion_shift():
    x_f, x = J, Quaternion(1, 1, 1, 0)
    y = x - x_f
    assert y == Quaternion(1, 1) and polar_decompose(y).u == I
    d = Quaternion(0.3, -0.2, 0.6, 0.5)
    res = [(S.eval(SQUARE, y + s * d) - S.eval(SQUARE, y) - S.recenter(SQUARE, x_f, x, s * d)).norm()
           for s in SCALES]
    slope, _ = fit_loglog(SCALES, res)
    assert abs(slope - 2.0) <= 0.05
    # split against u_y = i, not u_x
    assert qclose(S.recenter(SQUARE, x_f, x, d), mul(y, d) + mul(d, y), 1e-15)


def test_recenter_near_real_axis():
    with pytest.raises(NearRealAxis):
        S.recenter(SQUARE, J, Quaternion(2, 0, 1, 0), I)


@given(off_axis_quaternions(), quaternions.filter(lambda q: q.norm() > 1e-6))
def test_exp_series_matches_exp_expansion(x, d):
    direct = E.exp_first_order(x, d) - E.exp(x)
    via_series = S.general_first_order(PowerSeries.exp_series(40), x, d)
    assert (direct - via_series).norm() <= 1e-12 * E.exp(x).norm() * d.norm() + 1e-300


def test_series_json_roundtrip():
    F = PowerSeries([Quaternion(1.0, 2.0, 3.0, 4.0), Quaternion(0.5)])
    text = F.to_json()
    assert text == '{"coeffs": [[1.0, 2.0, 3.0, 4.0], [0.5, 0.0, 0.0, 0.0]]}'
    assert PowerSeries.from_json(text) == F


def test_degree_cap():
    PowerSeries.from_reals([1.0] * 65)
    with pytest.raises(ValueError):
        PowerSeries.from_reals([1.0] * 66)


def test_series_product_requires_real_right_factor():
    F = PowerSeries([ONE, J])
    G = PowerSeries.from_reals([1.0, 2.0])
    prod = F.times(G)
    assert prod.coeffs == (ONE, J + 2 * ONE, 2 * J)
    with pytest.raises(NonRealG):
        G.times(F)
