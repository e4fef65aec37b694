import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from quatcalc import exp_log as E
from quatcalc.errors import BranchPoint, Overflow, ZeroArgument
from quatcalc.harness.sweeps import fit_loglog
from quatcalc.quaternion import I, J, ONE, Quaternion, inverse, mul
from quatcalc.series import PRINCIPAL_LOG, general_first_order

from .helpers import off_axis_quaternions, qclose, quaternions


def test_exp_examples():
    assert E.exp(Quaternion()) == ONE
    assert qclose(E.exp(Quaternion(0, math.pi / 2)), I, 1e-16)
    s3 = math.sqrt(3)
    expected = math.e * Quaternion(math.cos(s3), *(3 * [math.sin(s3) / s3]))
    x = Quaternion(1, 1, 1, 1)
    assert qclose(E.exp(x), expected, 1e-15)
    assert qclose(E.exp(x), E.exp_taylor(x), 1e-13)


def test_exp_overflow():
    with pytest.raises(Overflow):
        E.exp(Quaternion(701.0))


@given(quaternions, st.floats(0.0, 3.0))
def test_exp_matches_taylor(q, radius):
    if q.norm() == 0:
        return
    x = q * (radius / q.norm())
    ref = E.exp_taylor(x)
    assert (E.exp(x) - ref).norm() <= 1e-13 * ref.norm()


@given(quaternions)
def test_exp_conjugation_equivariance(x):
    assert qclose(E.exp(x.conjugate()), E.exp(x).conjugate(), 1e-15)


def test_limit_oracle_examples():
    assert E.exp_limit_oracle(Quaternion(), 1024) == ONE
    approx_e = E.exp_limit_oracle(Quaternion(1.0), 2 ** 20).w
    assert abs(approx_e - math.e) <= 2e-6 * math.e


def test_limit_oracle_first_order_convergence():
    x = Quaternion(0, 1)
    ns = [2 ** k for k in range(10, 25)]
    errors = [(E.exp_limit_oracle(x, n) - E.exp(x)).norm() for n in ns]
    slope, _ = fit_loglog(ns, errors)
    assert abs(slope + 1.0) <= 0.05


def test_limit_oracle_non_power_of_two():
    x = Quaternion(0.3, -0.2, 0.5, 0.1)
    assert qclose(E.exp_limit_oracle(x, 3), mul(mul(ONE + x / 3, ONE + x / 3), ONE + x / 3), 1e-15)
    with pytest.raises(ValueError):
        E.exp_limit_oracle(x, 0)


def test_coefficients_at_quarter_pi():
    co = E.ExpExpansionCoeffs.at(math.pi / 4)
    assert co.a == pytest.approx(0.5 * (1 + 2 / math.pi), rel=1e-15)
    assert co.b == pytest.approx(-1 / math.pi, rel=1e-15)
    assert co.c == pytest.approx(0.5 * (-1 + 2 / math.pi), rel=1e-15)


@pytest.mark.parametrize("r", [1e-9, 1e-6, 5e-5, 9.99e-5, 1.01e-4, 1e-3, 0.5, 2.9])
def test_coefficients_against_high_precision(r):
    mpmath.mp.dps = 40
    R = mpmath.mpf(r)
    sinc2 = mpmath.sin(2 * R) / (2 * R)
    rcot = R * mpmath.cot(R)
    co, lo = E.ExpExpansionCoeffs.at(r), E.LogExpansionCoeffs.at(r)
    assert co.a == pytest.approx(float((1 + sinc2) / 2), rel=1e-15)
    assert co.b == pytest.approx(float((mpmath.cos(2 * R) - 1) / (4 * R)), rel=1e-14)
    assert co.c == pytest.approx(float((-1 + sinc2) / 2), rel=1e-12, abs=1e-16)
    assert lo.A == pytest.approx(float((rcot + 1) / 2), rel=1e-15)
    assert lo.C == pytest.approx(float((rcot - 1) / 2), rel=1e-12, abs=1e-16)


def test_coefficient_limits_at_zero():
    co, lo = E.ExpExpansionCoeffs.at(0.0), E.LogExpansionCoeffs.at(0.0)
    assert (co.a, co.b, co.c) == (1.0, 0.0, 0.0)
    assert (lo.A, lo.B, lo.C) == (1.0, 0.0, 0.0)


@given(st.floats(0.01, 3.0))
def test_coefficient_ties(r):
    co, lo = E.ExpExpansionCoeffs.at(r), E.LogExpansionCoeffs.at(r)
    assert abs(co.a - co.c - 1.0) <= 1e-14
    assert abs(co.a + co.c - math.sin(2 * r) / (2 * r)) <= 1e-14
    assert abs(lo.A - lo.C - 1.0) <= 1e-14
    assert abs(lo.B - r / 2) <= 1e-14


@given(off_axis_quaternions(), st.floats(-1, 1))
def test_exp_first_order_commuting_delta(x, t):
    d = Quaternion(t)
    ex = E.exp(x)
    assert qclose(E.exp_first_order(x, d), ex + mul(ex, d), 1e-14)


def test_exp_first_order_real_limit():
    x, d = Quaternion(0.5, 1e-14), Quaternion(0, 0, 1e-3, 0)
    ex = E.exp(x)
    assert E.exp_first_order(x, d) == ex + mul(ex, d)


def test_exp_first_order_second_order_residual():
    x, d = Quaternion(0, math.pi / 4), Quaternion(0, 0, 1, 0)
    scales = [1e-1, 1e-2, 1e-3, 1e-4]
    res = [(E.exp(x + s * d) - E.exp_first_order(x, s * d)).norm() for s in scales]
    slope, _ = fit_loglog(scales, res)
    assert abs(slope - 2.0) <= 0.05


def test_quadrature_oracle_matches_closed_form():
    x, d = Quaternion(0, math.pi / 4), J
    assert qclose(E.exp_integral_oracle(x, d, 64), E.exp_first_order(x, d), 1e-10)


@pytest.mark.parametrize("panels", [8, 13, 64])
def test_quadrature_with_commuting_delta(panels):
    x, d = Quaternion(0.3, 0.4, -1.0, 0.2), Quaternion(0.7)
    ex = E.exp(x)
    assert qclose(E.exp_integral_oracle(x, d, panels), ex + mul(ex, d), 1e-14)


def test_quadrature_panel_order():
    # 3-point Gauss-Legendre panels converge at order 6
    x, d = Quaternion(0.2, 0, 0, 3.0), Quaternion(0.1, 0.5, -0.7, 0.3)
    ref = E.exp_first_order(x, d)
    panels = [8, 16, 32]
    errors = [(E.exp_integral_oracle(x, d, p) - ref).norm() for p in panels]
    slope, _ = fit_loglog(panels, errors)
    assert abs(slope + 6.0) <= 0.2
    with pytest.raises(ValueError):
        E.exp_integral_oracle(x, d, 4)


def test_log_examples():
    assert E.log(ONE) == Quaternion()
    assert qclose(E.log(I), Quaternion(0, math.pi / 2), 1e-16)
    y = math.e * Quaternion(math.cos(1), 0, math.sin(1), 0)
    assert qclose(E.log(y), Quaternion(1, 0, 1, 0), 1e-15)


def test_log_errors():
    with pytest.raises(ZeroArgument):
        E.log(Quaternion())
    with pytest.raises(BranchPoint):
        E.log(Quaternion(-2.0))
    with pytest.raises(BranchPoint):
        E.log(Quaternion(-2.0, 0, 1e-13, 0))
    with pytest.raises(BranchPoint):
        E.log_first_order(Quaternion(-1.0, 0, 1e-13, 0), J)


@given(off_axis_quaternions(1e-3, math.pi - 1e-3), st.floats(-3, 3))
def test_exp_log_roundtrip(x, log_scale):
    y = E.exp(x) * 10.0 ** log_scale
    assert (E.exp(E.log(y)) - y).norm() <= 1e-12 * y.norm()


@given(off_axis_quaternions(0.0, math.pi - 1e-6))
def test_log_principal_range(x):
    r = E.log(E.exp(x)).imag_norm
    assert 0.0 <= r <= math.pi


@given(off_axis_quaternions(), st.floats(-1, 1))
def test_log_first_order_commuting_delta(x, t):
    y = E.exp(x)
    D = t * y  # commutes with y
    expected = E.log(y) + mul(inverse(y), D)
    assert qclose(E.log_first_order(y, D), expected, 1e-13)


def test_log_first_order_residual_slope():
    y = E.exp(Quaternion(0.2, 0.3, -1.1, 0.8))
    D = Quaternion(0.1, -0.5, 0.2, 0.4)
    scales = [1e-1, 1e-2, 1e-3, 1e-4]
    res = [(E.log(y + s * D) - E.log_first_order(y, s * D)).norm() for s in scales]
    slope, _ = fit_loglog(scales, res)
    assert abs(slope - 2.0) <= 0.05


@given(off_axis_quaternions(0.1, 3.0), quaternions)
def test_log_expansion_agrees_with_general_formula(x, D):
    y = E.exp(x)
    direct = E.log_first_order(y, D) - E.log(y)
    via_general = general_first_order(PRINCIPAL_LOG, y, D)
    assert (direct - via_general).norm() <= 1e-12 * max(1.0, direct.norm())
