import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import hyp0f1, poch

from pwshape.errors import PoleError, SeriesNonconvergenceError
from pwshape.partitions import (
    SeriesSpec,
    SignedLogValue,
    gen_pochhammer,
    log_degree_sums,
    log_mv_gamma,
    mv_gamma,
    partitions,
    signed_logsumexp,
    weighted_zonal_series,
    zonal,
)


def test_partitions_examples():
    assert partitions(0, 2) == [()]
    assert partitions(3, 2) == [(3,), (2, 1)]
    assert partitions(4, 4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


@pytest.mark.parametrize("t", range(9))
def test_partition_counts_match_unrestricted(t):
    # p(t) for t = 0..8
    assert len(partitions(t, t or 1)) == [1, 1, 2, 3, 5, 7, 11, 15, 22][t]


def test_gen_pochhammer_examples():
    assert gen_pochhammer(1, ()) == 1
    assert gen_pochhammer(1, (2,)) == 2
    assert gen_pochhammer(1, (1, 1)) == 0.5


@pytest.mark.parametrize("a,t", [(0.5, 3), (1.0, 7), (2.5, 4), (-1.5, 2)])
def test_gen_pochhammer_single_row_is_rising_factorial(a, t):
    assert gen_pochhammer(a, (t,)) == pytest.approx(poch(a, t), rel=1e-15)


def test_mv_gamma():
    assert mv_gamma(1, 2.5) == pytest.approx(1.329340388, rel=1e-9)
    assert mv_gamma(2, 1.5) == pytest.approx(math.pi / 2, rel=1e-14)
    assert log_mv_gamma(2, 1.5) == pytest.approx(math.log(math.pi / 2), rel=1e-14)
    with pytest.raises(PoleError):
        mv_gamma(2, 0.5)


def test_zonal_examples():
    lam = [0.3, 1.7]
    assert zonal((1,), lam) == pytest.approx(2.0, rel=1e-14)
    assert zonal((2,), [1.0, 1.0]) == pytest.approx(8 / 3, rel=1e-14)
    assert zonal((1, 1), [2.5, 0.0]) == 0.0


def test_zonal_degree_two_closed_forms():
    rng = np.random.default_rng(0)
    for _ in range(10):
        lam = rng.uniform(0, 3, 2)
        tr, tr2 = lam.sum(), (lam**2).sum()
        assert zonal((2,), lam) == pytest.approx((tr**2 + 2 * tr2) / 3, rel=1e-13)
        assert zonal((1, 1), lam) == pytest.approx(4 / 3 * lam[0] * lam[1], rel=1e-13)


def test_zonal_rank_one_is_power():
    for t in range(1, 10):
        assert zonal((t,), [1.3, 0.0]) == pytest.approx(1.3**t, rel=1e-12)


@pytest.mark.parametrize("k", [2, 3])
def test_sum_identity(k):
    rng = np.random.default_rng(k)
    for _ in range(5):
        G = rng.standard_normal((k, k))
        lam = np.linalg.eigvalsh(G @ G.T)
        tr = lam.sum()
        for t in range(9):
            total = sum(zonal(p, lam) for p in partitions(t, k))
            assert abs(total - tr**t) / tr**t <= 1e-10


eig_pairs = st.lists(st.floats(0.01, 5.0), min_size=2, max_size=3)


@settings(max_examples=40, deadline=None)
@given(eig_pairs, st.integers(1, 6))
def test_zonal_permutation_invariance(lam, t):
    for p in partitions(t, len(lam)):
        a = zonal(p, lam)
        b = zonal(p, lam[::-1])
        assert a == pytest.approx(b, rel=1e-13, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(eig_pairs, st.integers(1, 6), st.floats(0.1, 10.0))
def test_zonal_homogeneity(lam, t, c):
    for p in partitions(t, len(lam)):
        a = zonal(p, [c * x for x in lam])
        b = c**t * zonal(p, lam)
        assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


def test_series_exponential_without_pochhammer():
    lam = (0.3, 0.5)
    r = weighted_zonal_series(SeriesSpec(1.0, lam, lambda t, tr: 1.0, t_max=60, pochhammer=False))
    assert float(r.value) == pytest.approx(math.exp(0.8), rel=1e-14)
    assert r.converged


@pytest.mark.parametrize("a,x", [(1.0, 0.7), (2.5, 3.0), (1.0, 12.0)])
def test_series_scalar_confluent(a, x):
    r = weighted_zonal_series(SeriesSpec(a, (x,), lambda t, tr: 1.0, t_max=120))
    assert float(r.value) == pytest.approx(hyp0f1(a, x), rel=1e-13)


def test_series_rank_one_two_variable_matches_scalar():
    # two-variable table at a rank-one argument reduces to the scalar series
    r = weighted_zonal_series(SeriesSpec(1.0, (4.0, 0.0), lambda t, tr: 1.0, t_max=80))
    assert float(r.value) == pytest.approx(hyp0f1(1.0, 4.0), rel=1e-13)


def test_series_zero_argument():
    r = weighted_zonal_series(SeriesSpec(1.0, (0.0, 0.0), lambda t, tr: 3.0, t_max=20))
    assert float(r.value) == pytest.approx(3.0, rel=1e-15)


def test_series_stabilises_past_convergence():
    spec = SeriesSpec(1.0, (2.0, 1.0), lambda t, tr: 1.0, t_max=60)
    r1 = weighted_zonal_series(spec)
    r2 = weighted_zonal_series(SeriesSpec(1.0, (2.0, 1.0), lambda t, tr: 1.0, t_max=80))
    assert r1.converged
    assert abs(math.expm1(r1.value.log_magnitude - r2.value.log_magnitude)) < spec.tol


def test_series_nonconvergence_flag_and_strict():
    spec = SeriesSpec(1.0, (50.0, 20.0), lambda t, tr: 1.0, t_max=10)
    r = weighted_zonal_series(spec)
    assert not r.converged
    with pytest.raises(SeriesNonconvergenceError):
        weighted_zonal_series(spec, strict=True)


def test_series_signed_weights():
    # alternating weights: sum_t (-1)^t x^t / t! = exp(-x) with the exp table
    r = weighted_zonal_series(
        SeriesSpec(1.0, (1.5, 0.0), lambda t, tr: (-1.0) ** t, t_max=80, pochhammer=False)
    )
    assert float(r.value) == pytest.approx(math.exp(-1.5), rel=1e-13)


def test_degree_sums_large_argument_no_overflow():
    log_d, sign_d = log_degree_sums(np.array([400.0, 300.0]), 1.0, 160)
    assert np.all(np.isfinite(log_d)) and np.all(sign_d == 1)


def test_signed_log_value_arithmetic():
    a = SignedLogValue.from_float(3.0)
    b = SignedLogValue.from_float(-5.0)
    assert float(a + b) == pytest.approx(-2.0)
    assert float(a * b) == pytest.approx(-15.0)
    assert float(a - a) == 0.0 and (a - a).sign == 0
    z = SignedLogValue.zero()
    assert z.log_magnitude == -math.inf and z.sign == 0
    lm, s = signed_logsumexp(np.array([1000.0, 1000.0]), np.array([1.0, -1.0]))
    assert s == 0 and lm == -math.inf
