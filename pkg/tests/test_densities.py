import json
import math

import mpmath as mp
import numpy as np
import pytest
from conftest import DATA, MU, SIGMA2, mouse_scale_shapes, rel_log_diff
from scipy.stats import ncx2, ortho_group, wishart

from pwshape.densities import (
    DENSITIES,
    ModelSpec,
    _front_common,
    central_invariant_logdensity,
    density_for,
    gaussian_isotropic_shape_logdensity,
    isotropic_shape_logdensity,
    kotz_general_shape_logdensity,
    kotz_t2_shape_logdensity,
    kotz_t3_shape_logdensity,
    model_quantities,
    radial_exponent,
    shape_logdensity,
    size_shape_logdensity,
)
from pwshape.errors import DomainError
from pwshape.generators import GaussianGenerator, KotzGenerator
from pwshape.geometry import pw_coordinates

CLOSED = {1: ["gaussian", "kotz1", "kotz"], 2: ["kotz2", "kotz"], 3: ["kotz3", "kotz"]}


def kotz_model(T, conv="printed", t_max=120, mu=MU, sigma=SIGMA2):
    return ModelSpec(KotzGenerator(T, 0.5, 10), mu, sigma, t_max=t_max, radial_convention=conv)


def test_frozen_values():
    frozen = json.loads((DATA / "frozen_logdensities.json").read_text())
    shapes = mouse_scale_shapes(3, 99)
    assert len(frozen) == 12
    for key, expected in frozen.items():
        name, T, conv = key.split("/")
        model = kotz_model(int(T[1:]), conv)
        for s, (log_mag, sign) in zip(shapes, expected):
            v = DENSITIES[name](s, model)
            assert v.sign == sign
            assert rel_log_diff(v, log_mag) <= 1e-12, key


@pytest.mark.parametrize("conv", ["printed", "derived"])
@pytest.mark.parametrize("T", [1, 2, 3])
def test_lattice_quadrature_vs_closed_forms(T, conv):
    model = kotz_model(T, conv, t_max=40)
    for s in mouse_scale_shapes(5, 21):
        quad = shape_logdensity(s, model, radial="quadrature")
        assert rel_log_diff(shape_logdensity(s, model, radial="closed"), quad) <= 1e-9
        for name in CLOSED[T]:
            v = DENSITIES[name](s, model)
            assert v.sign == quad.sign == 1
            assert rel_log_diff(v, quad) <= 1e-9, name


@pytest.mark.parametrize("conv", ["printed", "derived"])
def test_isotropic_matches_general_sigma(conv):
    for T in (1, 2, 3):
        iso = kotz_model(T, conv)
        full = iso.replace(sigma=SIGMA2 * np.eye(5))
        for s in mouse_scale_shapes(4, 22):
            a = isotropic_shape_logdensity(s, iso)
            assert rel_log_diff(a, shape_logdensity(s, full)) <= 1e-12
            assert rel_log_diff(a, kotz_general_shape_logdensity(s, full)) <= 1e-12


def test_theta_whitening_folds_into_mu():
    theta = np.array([[2.0, 0.4], [0.4, 1.0]])
    model = kotz_model(2).replace(theta=theta)
    root = np.linalg.cholesky(theta)
    # Theta enters only through mu Theta^(-1/2); any square root gives the same zonal spectrum
    alt = kotz_model(2, mu=MU @ np.linalg.inv(root).T)
    for s in mouse_scale_shapes(3, 23):
        assert rel_log_diff(shape_logdensity(s, model), shape_logdensity(s, alt)) <= 1e-11


def test_central_invariance_needs_derived_exponent():
    zero = np.zeros((5, 2))
    for s in mouse_scale_shapes(5, 24, mu=zero):
        ref = central_invariant_logdensity(s, SIGMA2, "derived")
        for T in (1, 2, 3):
            v = shape_logdensity(s, kotz_model(T, "derived", mu=zero))
            assert rel_log_diff(v, ref) <= 1e-10
        printed = [shape_logdensity(s, kotz_model(T, "printed", mu=zero)).log_magnitude
                   for T in (1, 2, 3)]
        assert abs(printed[0] - printed[1]) > 1e-3
        assert abs(printed[1] - printed[2]) > 1e-3


def test_central_density_with_sigma_matrix():
    rng = np.random.default_rng(25)
    G = rng.standard_normal((5, 5))
    sigma = G @ G.T + 5 * np.eye(5)
    zero = np.zeros((5, 2))
    for s in mouse_scale_shapes(3, 26, mu=zero):
        ref = central_invariant_logdensity(s, sigma, "derived")
        for T in (1, 3):
            v = shape_logdensity(s, kotz_model(T, "derived", mu=zero, sigma=sigma))
            assert rel_log_diff(v, ref) <= 1e-10


def test_rotation_invariance():
    rng = np.random.default_rng(27)
    model = kotz_model(3)
    for i in range(3):
        Y = MU + math.sqrt(SIGMA2) * rng.standard_normal(MU.shape)
        base = kotz_t3_shape_logdensity(pw_coordinates(Y), model)
        for _ in range(3):
            H = ortho_group.rvs(2, random_state=rng)
            v = kotz_t3_shape_logdensity(pw_coordinates(Y @ H), model)
            assert abs(v.log_magnitude - base.log_magnitude) <= 1e-12 * abs(base.log_magnitude)


def _mp_rank_one_t2(shape, model):
    """T=2 density at a rank-one mean, every radial weight in 50-digit arithmetic.

    h(y) = G y e^(-Ry), so h^(k)(y) = G (-R)^k e^(-Ry) (y - k/R) and the
    radial integral is two gamma functions.  At K=2 the zonal series
    reduces to sum_t w_t x^t / (t!)^2.
    """
    mp.mp.dps = 50
    q = model_quantities(shape, model)
    R, G = mp.mpf(model.generator.R), mp.exp(model.generator.log_const)
    A, B, x = mp.mpf(q.A), mp.mpf(q.B), mp.mpf(float(q.zonal_eig.max()))
    total = mp.mpf(0)
    for t in range(model.t_max + 1):
        a = q.e + t
        w = G * R ** (2 * t) * mp.exp(-R * B) * (
            A * mp.gamma(a + 2) / (R * A) ** (a + 2)
            + (B - 2 * t / R) * mp.gamma(a + 1) / (R * A) ** (a + 1)
        )
        total += w * x**t / mp.factorial(t) ** 2
    return float(mp.log(abs(total))) + _front_common(shape, q), int(mp.sign(total))


def test_rank_one_mean_against_extended_precision():
    mu = np.outer([1.0, 2.0, -1.5, 0.5, 3.0], [4.0, 1.0])
    model = kotz_model(2, mu=mu, sigma=2.0)
    for s in mouse_scale_shapes(3, 28, mu=mu):
        q = model_quantities(s, model)
        # the weights change sign inside the summed range
        assert q.B > 4 and np.count_nonzero(q.zonal_eig > 1e-9) == 1
        ref, sign = _mp_rank_one_t2(s, model)
        for v in (shape_logdensity(s, model), kotz_t2_shape_logdensity(s, model),
                  kotz_general_shape_logdensity(s, model)):
            assert v.sign == sign
            assert rel_log_diff(v, ref) <= 1e-12


def test_size_shape_matches_central_wishart():
    rng = np.random.default_rng(29)
    model = ModelSpec(GaussianGenerator(4), np.zeros((2, 2)), 1.7)
    dist = wishart(df=2, scale=1.7 * np.eye(2))
    for _ in range(5):
        Y = rng.standard_normal((2, 2))
        V = Y @ Y.T
        v = size_shape_logdensity(V, model)
        assert v.log_magnitude == pytest.approx(dist.logpdf(V), abs=1e-12)


def test_size_shape_matches_rank_one_noncentral_wishart():
    # noncentral Wishart with rank-one Omega: the hypergeometric factor is scalar 0F1
    rng = np.random.default_rng(30)
    sigma2 = 1.3
    mu = np.outer([1.0, 0.5], [0.6, 0.3]) * 2
    omega = mu @ mu.T / sigma2
    model = ModelSpec(GaussianGenerator(4), mu, sigma2, t_max=80)
    dist = wishart(df=2, scale=sigma2 * np.eye(2))
    for _ in range(5):
        Y = mu + math.sqrt(sigma2) * rng.standard_normal((2, 2))
        V = Y @ Y.T
        x = float(np.trace(omega @ V)) / (4 * sigma2)
        ref = dist.logpdf(V) - np.trace(omega) / 2 + math.log(float(mp.hyp0f1(1, x)))
        assert size_shape_logdensity(V, model).log_magnitude == pytest.approx(ref, abs=1e-12)


@pytest.mark.slow
def test_size_shape_density_histogram():
    """Importance-weighted check that the noncentral density integrates correctly.

    Samples come from the noncentral law; w = q/f against the central
    Wishart q must average to P_q(bin) inside every decile bin of tr V.
    """
    rng = np.random.default_rng(31)
    mu = np.array([[1.0, 0.5], [0.6, 0.3]])
    sigma2, n = 1.0, 30_000
    model = ModelSpec(GaussianGenerator(4), mu, sigma2, t_max=25)
    central = wishart(df=2, scale=sigma2 * np.eye(2))
    Y = mu + math.sqrt(sigma2) * rng.standard_normal((n, 2, 2))
    V = Y @ np.transpose(Y, (0, 2, 1))
    log_f = np.array([size_shape_logdensity(v, model).log_magnitude for v in V])
    w = np.exp(central.logpdf(np.transpose(V, (1, 2, 0))) - log_f)
    tr = np.trace(V, axis1=1, axis2=2) / sigma2
    edges = np.concatenate([[0.0], ncx2.ppf(np.arange(1, 10) / 10, 4, 1e-300), [np.inf]])
    lam = float(np.sum(mu * mu)) / sigma2
    for lo, hi in zip(edges[:-1], edges[1:]):
        inside = (tr >= lo) & (tr < hi)
        p_f = ncx2.cdf(hi, 4, lam) - ncx2.cdf(lo, 4, lam)
        est = w[inside].mean() * p_f / 0.1
        assert abs(est - 1) <= 0.03


def test_truncation_stable_at_data_scale():
    for T in (1, 3):
        for s in mouse_scale_shapes(3, 32):
            a = DENSITIES[CLOSED[T][0]](s, kotz_model(T, t_max=120))
            b = DENSITIES[CLOSED[T][0]](s, kotz_model(T, t_max=160))
            assert abs(a.log_magnitude - b.log_magnitude) <= 1e-10


def test_series_report_is_exposed():
    s = mouse_scale_shapes(1, 33)[0]
    v, res = gaussian_isotropic_shape_logdensity(s, kotz_model(1), return_series=True)
    assert res.converged
    assert v.log_magnitude == gaussian_isotropic_shape_logdensity(s, kotz_model(1)).log_magnitude


def test_radial_exponent_conventions():
    assert radial_exponent(2, 8, 6, 2, "printed") == 12
    assert radial_exponent(2, 8, 6, 2, "derived") == 4
    assert radial_exponent(2, 2, 3, 2, "printed") == 3
    assert radial_exponent(2, 2, 3, 2, "derived") == 1
    with pytest.raises(DomainError):
        radial_exponent(2, 8, 6, 2, "other")


def test_density_for_dispatch():
    assert density_for(kotz_model(1)) is gaussian_isotropic_shape_logdensity
    assert density_for(kotz_model(2)) is kotz_t2_shape_logdensity
    assert density_for(kotz_model(3)) is kotz_t3_shape_logdensity
    general = ModelSpec(KotzGenerator(2, 1.0, 10), MU, SIGMA2)
    assert density_for(general)(mouse_scale_shapes(1, 34)[0], general).sign == 1


def test_model_validation():
    s = mouse_scale_shapes(1, 35)[0]
    with pytest.raises(DomainError):
        shape_logdensity(s, kotz_model(2, mu=np.zeros((4, 2))))
    with pytest.raises(DomainError):
        ModelSpec(KotzGenerator(2, 0.5, 10), MU, -1.0)
    with pytest.raises(DomainError):
        ModelSpec(KotzGenerator(2, 0.5, 10), MU, np.diag([1.0, 1, 1, 1, -1]))
    with pytest.raises(DomainError):
        ModelSpec(KotzGenerator(2, 0.5, 10), MU, SIGMA2, radial_convention="other")
    with pytest.raises(DomainError):
        shape_logdensity(s, ModelSpec(KotzGenerator(2, 0.5, 8), MU, SIGMA2))
    with pytest.raises(DomainError):
        kotz_t3_shape_logdensity(s, kotz_model(2))
    with pytest.raises(DomainError):
        kotz_t2_shape_logdensity(s, ModelSpec(KotzGenerator(2, 1.0, 10), MU, SIGMA2))
    with pytest.raises(DomainError):
        shape_logdensity(s, kotz_model(2), radial="other")
