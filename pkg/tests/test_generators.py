import math

import pytest
from scipy.optimize import brentq

from pwshape.errors import DomainError
from pwshape.generators import (
    GaussianGenerator,
    KotzGenerator,
    gaussian_h_deriv,
    generator_mass_check,
    kotz_h,
    kotz_h_deriv,
    log_kotz_h,
    log_kotz_h_deriv,
)
from pwshape.oracles import finite_difference


def test_kotz_h_examples():
    assert kotz_h(KotzGenerator(1, 0.5, 2), 0.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert kotz_h(KotzGenerator(2, 0.5, 10), 0.0) == 0.0
    assert kotz_h(KotzGenerator(3, 0.5, 10), 1e4) == 0.0


def test_kotz_h_domain():
    with pytest.raises(DomainError):
        log_kotz_h(KotzGenerator(0.5, 0.5, 10), 0.0)
    with pytest.raises(DomainError):
        log_kotz_h(KotzGenerator(1, 0.5, 10), -1.0)
    with pytest.raises(DomainError):
        KotzGenerator(1, 0.0, 10)
    with pytest.raises(DomainError):
        KotzGenerator(-5, 0.5, 4)


def test_zeroth_derivative_is_h():
    g = KotzGenerator(2.5, 0.7, 10)
    for y in (0.3, 2.0, 9.0):
        assert kotz_h_deriv(g, 0, y) == pytest.approx(kotz_h(g, y), rel=1e-14)


def test_t2_first_derivative_core():
    g = KotzGenerator(2, 0.5, 10)
    c = math.exp(g.log_const)
    for y in (0.5, 1.0, 5.0):
        expected = c * math.exp(-0.5 * y) * (1 - 0.5 * y)
        assert kotz_h_deriv(g, 1, y) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("T", [1, 2, 3, 2.5])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("y", [0.5, 1.0, 5.0])
def test_derivative_matches_finite_differences(T, k, y):
    g = KotzGenerator(T, 0.5, 10)
    fd, _ = finite_difference(lambda s: kotz_h(g, s), y, k)
    assert abs(fd - kotz_h_deriv(g, k, y)) <= 1e-6 * abs(fd)


def test_gaussian_examples():
    assert gaussian_h_deriv(2, 0, 0.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert gaussian_h_deriv(2, 1, 0.0) == pytest.approx(-0.5 / (2 * math.pi), rel=1e-15)
    for k in range(6):
        assert math.copysign(1, gaussian_h_deriv(10, k, 3.0)) == (-1) ** k


@pytest.mark.parametrize("k", range(8))
def test_gaussian_matches_kotz_t1(k):
    g = KotzGenerator(1, 0.5, 10)
    for y in (0.5, 3.0, 40.0):
        assert kotz_h_deriv(g, k, y) == pytest.approx(gaussian_h_deriv(10, k, y), rel=1e-12)
        lv, s = GaussianGenerator(10).log_deriv(k, y)
        assert s * math.exp(lv) == pytest.approx(gaussian_h_deriv(10, k, y), rel=1e-12)


@pytest.mark.parametrize("T", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [0, 1, 2, 5, 9])
def test_full_binomial_sum_changes_nothing(T, k):
    g = KotzGenerator(T, 0.5, 10)
    for y in (0.5, 2.0, 7.0):
        a = log_kotz_h_deriv(g, k, y)
        b = log_kotz_h_deriv(g, k, y, full_sum=True)
        assert a[1] == b[1]
        if a[1] == 0:  # exact root of the derivative
            assert a[0] == b[0] == -math.inf
        else:
            assert abs(a[0] - b[0]) <= 1e-14 * max(1.0, abs(a[0]))


@pytest.mark.parametrize("t", [1, 2, 5, 20])
def test_t1_even_derivatives_positive(t):
    g = KotzGenerator(1, 0.5, 10)
    for y in (1e-3, 1.0, 50.0, 500.0):
        assert log_kotz_h_deriv(g, 2 * t, y)[1] == 1.0


@pytest.mark.parametrize("t", [1, 2, 5, 20])
def test_t2_even_derivative_single_sign_change(t):
    g = KotzGenerator(2, 0.5, 10)
    root_expected = 2 * t / g.R
    sign = lambda y: log_kotz_h_deriv(g, 2 * t, y)[1]
    assert sign(0.5 * root_expected) == -1.0
    assert sign(2.0 * root_expected) == 1.0
    def scaled(y):
        # h^(2t)(y) e^(Ry) keeps the magnitude O(1) over the bracket
        lv, s = log_kotz_h_deriv(g, 2 * t, y)
        return s * math.exp(lv + g.R * y - g.log_const) if s else 0.0

    root = brentq(scaled, 0.5 * root_expected, 2.0 * root_expected, xtol=1e-13)
    assert root == pytest.approx(root_expected, rel=1e-9)
    grid = [root_expected * (0.05 + 0.01 * i) for i in range(400)]
    changes = sum(sign(a) != sign(b) for a, b in zip(grid, grid[1:]))
    assert changes == 1


@pytest.mark.parametrize("T", [1, 2, 3])
@pytest.mark.parametrize("R", [0.5, 1.0])
def test_mass_identity_grid(T, R):
    assert generator_mass_check(KotzGenerator(T, R, 10)) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("T,R,M", [(1, 0.5, 4), (3, 0.5, 10), (1, 1.0, 2), (2.5, 0.3, 6)])
def test_mass_identity_examples(T, R, M):
    assert generator_mass_check(KotzGenerator(T, R, M)) == pytest.approx(1.0, abs=1e-8)


def test_log_derivative_survives_underflow():
    g = KotzGenerator(3, 0.5, 10)
    lv, s = log_kotz_h_deriv(g, 40, 3000.0)
    assert math.isfinite(lv) and lv < -1000 and s == 1.0
