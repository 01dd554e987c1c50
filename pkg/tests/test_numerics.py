from math import log

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primecurtains import numerics
from primecurtains.errors import ConvergenceError, DomainError
from primecurtains.numerics import QuadratureConfig, fit_exponent, li, li_inverse, sum_vs_integral, weighted_integral

mpmath.mp.dps = 30


def li_oracle(x):
    return float(mpmath.li(x) - mpmath.li(2))


def test_li_values():
    assert li(2) == 0
    assert li(10) == pytest.approx(li_oracle(10), rel=1e-12)
    assert li(10) == pytest.approx(5.12044, abs=1e-5)
    assert li(1e6) == pytest.approx(li_oracle(1e6), rel=1e-12)
    assert li(1e6) == pytest.approx(78626.5, abs=0.01)


@pytest.mark.parametrize("x", [2.5, 37.0, 1e3, 1e5, 3.3e7, 1e9])
def test_li_against_mpmath(x):
    assert li(x) == pytest.approx(li_oracle(x), rel=1e-11)


def test_li_domain():
    with pytest.raises(DomainError):
        li(1.9)


def test_convergence_error_names_achieved_error():
    cfg = QuadratureConfig(abs_tol=1e-30, rel_tol=1e-30, max_subdivisions=1)
    with pytest.raises(ConvergenceError) as info:
        li(1e6, cfg)
    assert info.value.achieved is not None and info.value.achieved > 0


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=0)


def test_li_inverse_values():
    assert li_inverse(0) == 2
    assert li_inverse(5.12044) == pytest.approx(10, abs=1e-4)
    oracle = float(mpmath.findroot(lambda x: mpmath.li(x) - mpmath.li(2) - 78498, 998000))
    assert li_inverse(78498) == pytest.approx(oracle, rel=1e-10)
    assert li_inverse(78498) == pytest.approx(998224.77, abs=0.01)


def test_li_inverse_large():
    x = li_inverse(1e12)
    assert abs(li(x) - 1e12) <= 1e-9 * 1e12


def test_li_inverse_domain():
    with pytest.raises(DomainError):
        li_inverse(-1)


def test_round_trip_grid():
    for y in [0.0, *np.geomspace(1e-3, 1e5, 40)]:
        assert abs(li(li_inverse(y)) - y) <= 1e-9 * max(1.0, y)


@settings(max_examples=40, deadline=None)
@given(st.floats(2.0, 1e7), st.floats(0.0, 1e7))
def test_li_monotone_and_slope_bound(x1, dx):
    x2 = x1 + dx
    lo, hi = li(x1), li(x2)
    # both values carry quadrature error up to the 1e-10 relative tolerance
    slack = 2e-10 * max(1.0, hi)
    assert lo <= hi + slack
    if dx / log(x2) > slack:
        assert lo < hi
    assert hi - lo <= dx / log(x1) + slack


def test_weighted_integral():
    assert weighted_integral(0, 10) == li(10)
    assert weighted_integral(0, 2) == 0
    oracle = float(mpmath.quad(lambda t: t / mpmath.log(t), [2, 10]))
    assert weighted_integral(1, 10) == pytest.approx(oracle, rel=1e-12)
    assert weighted_integral(1, 10) == pytest.approx(27.158556, abs=1e-6)
    with pytest.raises(DomainError):
        weighted_integral(-0.5, 10)


@pytest.mark.parametrize("x", [3.0, 1e4, 1e7])
def test_weighted_zero_is_li_bitwise(x):
    assert weighted_integral(0.0, x) == li(x)


@pytest.mark.parametrize("alpha,x", [(0.5, 1e4), (1.0, 1e5), (2.0, 1e3)])
def test_weighted_integral_mpmath(alpha, x):
    oracle = float(mpmath.quad(lambda t: t**alpha / mpmath.log(t), [2, 100, x]))
    assert weighted_integral(alpha, x) == pytest.approx(oracle, rel=1e-10)


def test_sum_vs_integral():
    r = sum_vs_integral(1, 3)
    assert r.sum == pytest.approx(3 / log(3), rel=1e-15)
    assert r.error == r.sum - r.integral
    for x in (1e3, 1e4, 1e5):
        assert abs(sum_vs_integral(1, x).error) <= 2 * x / log(x)
    with pytest.raises(DomainError):
        sum_vs_integral(1, 2.5)


def test_sum_vs_integral_alpha_zero_constant_offset():
    # the alpha = 0 error settles to a constant rather than decaying like 1/log x
    errs = [sum_vs_integral(0, x).error for x in (1e3, 1e4, 1e5)]
    assert max(errs) - min(errs) < 0.05
    assert all(abs(e) > 0.5 for e in errs)
    # direct summation oracle for the sum itself
    direct = float(mpmath.fsum(1 / mpmath.log(n) for n in range(3, 10**4 + 1)))
    assert sum_vs_integral(0, 1e4).sum == pytest.approx(direct, rel=1e-13)


def test_fit_exponent_exact_power():
    fit = fit_exponent([(x, x**0.5) for x in (10, 100, 1000)])
    assert fit.slope == pytest.approx(0.5, abs=1e-9)
    assert fit.points_used == 3
    fit_c = fit_exponent([(x, 7.5 * x**0.5) for x in (10, 100, 1000)])
    assert fit_c.slope == pytest.approx(0.5, abs=1e-9)
    assert fit_c.intercept == pytest.approx(log(7.5), abs=1e-9)


def test_fit_exponent_drops_zeros_and_validates():
    fit = fit_exponent([(10, 0.0), (100, 100.0), (1000, 1000.0)])
    assert fit.points_used == 2 and fit.slope == pytest.approx(1.0)
    with pytest.raises(ValueError):
        fit_exponent([(10, 1.0), (100, 0.0)])
    with pytest.raises(ValueError):
        fit_exponent([(0, 1.0), (100, 3.0)])


@settings(max_examples=50, deadline=None)
@given(st.floats(-3, 3), st.floats(1e-3, 1e3))
def test_fit_exponent_recovers_power_laws(k, c):
    fit = fit_exponent([(x, c * x**k) for x in (2.0, 30.0, 500.0, 7000.0)])
    assert fit.slope == pytest.approx(k, abs=1e-9)


def test_default_config():
    cfg = numerics.DEFAULT_QUADRATURE
    assert (cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions) == (1e-10, 1e-10, 10**6)
