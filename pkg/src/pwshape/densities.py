"""Size-and-shape and shape log-densities.

Every density here has the form

    front(W) * sum_t  w_t / t!  * sum_{kappa |- t} C_kappa(X) / (K/2)_kappa

with ``X`` the (K x K reduced) zonal argument and ``w_t`` a radial weight.
Only ``front`` and ``w_t`` differ between the general theorem, its isotropic
and central specialisations and the Kotz closed forms, so they all share
:func:`_assemble`.

Radial exponent.  The radial integral is ``int r^(e + t) h^(2t)(r A + B) dr``
and two values of ``e`` are in circulation: ``printed = m - n(K-N)/2`` and
``derived = m + n(K-N)/2``.  The closed forms are written for a generic
``e`` so both conventions run through identical code.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .generators import GaussianGenerator, KotzGenerator
from .geometry import PseudoWishartShape, inv_sqrt_pd, log_det_vstar, shape_counts
from .oracles import radial_quadrature
from .partitions import (
    SignedLogValue,
    log_mv_gamma,
    signed_logsumexp,
    zonal_series_from_log_weights,
)

CONVENTIONS = ("printed", "derived")
LOG_PI = math.log(math.pi)


def radial_exponent(n: int, m: int, N: int, K: int, convention: str) -> float:
    """Base exponent ``e`` of ``r`` in the radial integral (``t`` is added per degree)."""
    if convention == "printed":
        return m - n * (K - N) / 2
    if convention == "derived":
        return m + n * (K - N) / 2
    raise DomainError(f"unknown radial convention {convention!r}")


@dataclass(frozen=True, eq=False)
class ModelSpec:
    """Generator plus location/scale parameters and evaluation options.

    ``sigma`` is either the scalar ``sigma^2`` of the isotropic model or the
    full ``(N-1) x (N-1)`` matrix ``Sigma``.  ``theta=None`` means identity.
    """

    generator: object
    mu: np.ndarray
    sigma: object = 1.0
    theta: np.ndarray | None = None
    t_max: int = 120
    radial_convention: str = "printed"
    tol: float = 1e-12
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=float))
        if self.radial_convention not in CONVENTIONS:
            raise DomainError(f"unknown radial convention {self.radial_convention!r}")
        if self.t_max < 0:
            raise DomainError("t_max must be >= 0")
        if np.isscalar(self.sigma):
            if self.sigma <= 0:
                raise DomainError("sigma^2 must be positive")
        else:
            S = np.asarray(self.sigma, dtype=float)
            if S.shape != (self.mu.shape[0],) * 2:
                raise DomainError(f"Sigma must be {self.mu.shape[0]}x{self.mu.shape[0]}")
            if np.linalg.eigvalsh((S + S.T) / 2)[0] <= 0:
                raise DomainError("Sigma must be positive definite")
            object.__setattr__(self, "sigma", (S + S.T) / 2)

    @property
    def isotropic(self) -> bool:
        return np.isscalar(self.sigma)

    def replace(self, **kw) -> "ModelSpec":
        return dataclasses.replace(self, **kw)


@dataclass(frozen=True)
class Quantities:
    """Model/shape combinations, recomputed on every call."""

    A: float  # tr Sigma^-1 W
    B: float  # tr Omega
    zonal_eig: np.ndarray  # nonzero spectrum of Omega Sigma^-1 W
    log_det_sigma: float
    e: float
    M: int


def _check_dims(shape: PseudoWishartShape, model: ModelSpec) -> None:
    if model.mu.shape != (shape.N - 1, shape.K):
        raise DomainError(
            f"mu is {model.mu.shape}, shape needs {(shape.N - 1, shape.K)}"
        )
    gen_M = getattr(model.generator, "M", None)
    if gen_M is not None and gen_M != shape.M:
        raise DomainError(f"generator dimension {gen_M} != (N-1)K = {shape.M}")


def _whitened_mu(model: ModelSpec) -> np.ndarray:
    if model.theta is None:
        return model.mu
    return model.mu @ inv_sqrt_pd(model.theta)


def _quantities(S: np.ndarray, shape_n, shape_m, N, K, model: ModelSpec) -> Quantities:
    """``S`` is ``W`` for shape densities and ``V`` for size-and-shape."""
    mt = _whitened_mu(model)
    if model.isotropic:
        s2 = float(model.sigma)
        A = float(np.trace(S)) / s2
        B = float(np.sum(mt * mt)) / s2
        Z = mt.T @ S @ mt / (s2 * s2)
        log_det_sigma = (N - 1) * math.log(s2)
    else:
        Sinv = np.linalg.inv(model.sigma)
        A = float(np.sum(Sinv * S))
        B = float(np.trace(mt.T @ Sinv @ mt))
        Z = mt.T @ Sinv @ S @ Sinv @ mt
        log_det_sigma = float(np.linalg.slogdet(model.sigma)[1])
    eig = np.clip(np.linalg.eigvalsh((Z + Z.T) / 2), 0.0, None)
    e = radial_exponent(shape_n, shape_m, N, K, model.radial_convention)
    return Quantities(A, max(B, 0.0), eig, log_det_sigma, e, (N - 1) * K)


def model_quantities(shape: PseudoWishartShape, model: ModelSpec) -> Quantities:
    _check_dims(shape, model)
    return _quantities(shape.W, shape.n, shape.m, shape.N, shape.K, model)


def _front_common(shape: PseudoWishartShape, q: Quantities) -> float:
    n, K, N = shape.n, shape.K, shape.N
    return (
        n * K / 2 * LOG_PI
        + (K - N) / 2 * shape.log_det_wstar
        + shape.log_jacobian
        - log_mv_gamma(n, K / 2)
        - K / 2 * q.log_det_sigma
    )


def _assemble(front, eig, log_w, sign_w, K, model: ModelSpec, return_series):
    res = zonal_series_from_log_weights(eig, K / 2, log_w, sign_w, tol=model.tol, strict=model.strict)
    val = res.value
    out = SignedLogValue.from_parts(val.log_magnitude + front, val.sign)
    return (out, res) if return_series else out


# ---------------------------------------------------------------------------
# Radial weights
# ---------------------------------------------------------------------------


def _is_kotz(gen) -> bool:
    return isinstance(gen, (KotzGenerator, GaussianGenerator))


def _as_kotz(gen) -> KotzGenerator:
    return gen.as_kotz() if isinstance(gen, GaussianGenerator) else gen


def _log_falling(T: float, j: int):
    """``(log|prod_{i<j}(T-1-i)|, sign)``."""
    lp, sp = 0.0, 1.0
    for i in range(j):
        f = T - 1 - i
        if f == 0:
            return -math.inf, 0.0
        lp += math.log(abs(f))
        sp *= math.copysign(1.0, f)
    return lp, sp


def kotz_radial_log_weights(gen: KotzGenerator, e: float, A: float, B: float, t_max: int):
    """Closed-form ``int r^(e+t) h^(2t)(rA + B) dr`` for ``t = 0..t_max`` (integer ``T``).

    ``h^(2t)(y) = G R^(2t) e^(-Ry) sum_j c_j y^(T-1-j)``; each power of
    ``y = rA + B`` is expanded binomially and integrated against
    ``r^(e+t) e^(-RAr)`` as a gamma function.
    """
    if not gen.integer_T:
        raise DomainError("closed-form radial weights need integer T >= 1")
    T, R = int(gen.T), gen.R
    t = np.arange(t_max + 1)
    ap = e + t  # exponent of r
    base = gen.log_const + 2 * t * math.log(R) - R * B - (ap + 1) * math.log(R * A)
    poly = _radial_polynomial(T, R, B, t, ap)
    if poly is not None:
        with np.errstate(divide="ignore"):
            return gammaln(ap + 1) + np.log(np.abs(poly)) + base, np.sign(poly)
    logs, signs = [], []
    for j in range(T):
        lf, sf = _log_falling(T, j)
        if sf == 0:
            continue
        valid = 2 * t >= j
        with np.errstate(invalid="ignore"):
            log_c = gammaln(2 * t + 1) - math.lgamma(j + 1) - gammaln(np.maximum(2 * t - j, 0) + 1)
        log_c = np.where(valid, log_c + lf - j * math.log(R), -np.inf)
        sign_c = np.where(valid, sf * (-1.0) ** j, 0.0)
        p = T - 1 - j
        for l in range(p + 1):
            if p - l > 0 and B == 0:
                continue
            log_b = 0.0 if p == l else (p - l) * math.log(B)
            logs.append(
                log_c + math.lgamma(p + 1) - math.lgamma(l + 1) - math.lgamma(p - l + 1)
                + log_b - l * math.log(R) + gammaln(ap + l + 1)
            )
            signs.append(sign_c)
    lsum, ssum = signed_logsumexp(np.array(logs), np.array(signs), axis=0)
    return lsum + base, ssum


def _radial_polynomial(T: int, R: float, B: float, t: np.ndarray, ap: np.ndarray):
    """``I_t / (G R^2t e^-RB Gamma(a'+1) (RA)^-(a'+1))`` as a float polynomial in ``t``.

    Summing this directly keeps the cancellation near its roots at the
    level of float rounding of its O(t^(T-1)) terms; the log-space sum
    loses several more digits there.  Returns ``None`` on overflow.
    """
    total = np.zeros(len(t))
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(T):
            p = T - 1 - j
            # C(2t, j) prod_{i<j} (T-1-i) (-R)^-j, zero where 2t < j
            c = np.ones(len(t))
            for i in range(j):
                c *= (2 * t - i) / (i + 1) * (T - 1 - i)
            c *= (-1.0 / R) ** j
            inner = np.zeros(len(t))
            rising = np.ones(len(t))
            for l in range(p + 1):
                inner += math.comb(p, l) * B ** (p - l) * R ** (-l) * rising
                rising = rising * (ap + 1 + l)
            total += c * inner
    if not np.all(np.isfinite(total)):
        return None
    return total


def quadrature_radial_log_weights(gen, e: float, A: float, B: float, t_max: int):
    logs = np.empty(t_max + 1)
    signs = np.empty(t_max + 1)
    for t in range(t_max + 1):
        logs[t], signs[t] = radial_quadrature(e + t, gen, A, B, 2 * t)
    return logs, signs


# ---------------------------------------------------------------------------
# General densities
# ---------------------------------------------------------------------------


def size_shape_logdensity(V, model: ModelSpec, *, vstar: str = "cholesky", return_series=False):
    """Log size-and-shape density of ``V`` (w.r.t. the Hausdorff measure fixed by ``vstar``)."""
    V = np.asarray(V, dtype=float)
    N, K = V.shape[0] + 1, model.mu.shape[1]
    if model.mu.shape[0] != N - 1:
        raise DomainError("mu and V dimensions disagree")
    n, m = shape_counts(N, K)
    q = _quantities(V, n, m, N, K, model)
    front = (
        n * K / 2 * LOG_PI
        + (K - N) / 2 * log_det_vstar(V, n, vstar)
        - log_mv_gamma(n, K / 2)
        - K / 2 * q.log_det_sigma
    )
    y = q.A + q.B
    gen = model.generator
    log_w = np.empty(model.t_max + 1)
    sign_w = np.empty(model.t_max + 1)
    for t in range(model.t_max + 1):
        log_w[t], sign_w[t] = gen.log_deriv(2 * t, y)
    return _assemble(front, q.zonal_eig, log_w, sign_w, K, model, return_series)


def shape_logdensity(shape: PseudoWishartShape, model: ModelSpec, *, radial: str = "auto",
                     return_series=False):
    """Log shape density for a general generator, ``Sigma`` and ``Theta``.

    ``radial`` selects how the radial integral is done: ``closed`` (gamma
    functions, Kotz with integer ``T``), ``quadrature`` (any generator), or
    ``auto`` (closed when available).
    """
    q = model_quantities(shape, model)
    gen = model.generator
    if radial == "auto":
        radial = "closed" if _is_kotz(gen) and _as_kotz(gen).integer_T else "quadrature"
    if q.e <= -1:
        raise DomainError(f"radial integral diverges (exponent {q.e})")
    if radial == "closed":
        if not _is_kotz(gen):
            raise DomainError("closed radial weights need a Kotz generator")
        log_w, sign_w = kotz_radial_log_weights(_as_kotz(gen), q.e, q.A, q.B, model.t_max)
    elif radial == "quadrature":
        log_w, sign_w = quadrature_radial_log_weights(gen, q.e, q.A, q.B, model.t_max)
    else:
        raise DomainError(f"unknown radial mode {radial!r}")
    return _assemble(_front_common(shape, q), q.zonal_eig, log_w, sign_w, shape.K, model,
                     return_series)


def isotropic_shape_logdensity(shape: PseudoWishartShape, model: ModelSpec, *, radial="auto",
                               return_series=False):
    """Shape density with ``Sigma = sigma^2 I`` written in scalar form.

    ``|Sigma|^(K/2) = sigma^M``, ``A = tr W / sigma^2`` and the zonal
    argument is the spectrum of ``mu' W mu / sigma^4`` (with ``Theta``
    whitening folded into ``mu``).
    """
    if not model.isotropic:
        raise DomainError("isotropic density needs scalar sigma^2")
    _check_dims(shape, model)
    s2 = float(model.sigma)
    mt = _whitened_mu(model)
    A = shape.trace_w / s2
    B = float(np.sum(mt * mt)) / s2
    Z = mt.T @ shape.W @ mt
    eig = np.clip(np.linalg.eigvalsh((Z + Z.T) / 2), 0.0, None) / s2**2
    e = radial_exponent(shape.n, shape.m, shape.N, shape.K, model.radial_convention)
    n, K, N = shape.n, shape.K, shape.N
    front = (
        n * K / 2 * LOG_PI
        + (K - N) / 2 * shape.log_det_wstar
        + shape.log_jacobian
        - log_mv_gamma(n, K / 2)
        - shape.M / 2 * math.log(s2)
    )
    gen = model.generator
    if radial == "auto":
        radial = "closed" if _is_kotz(gen) and _as_kotz(gen).integer_T else "quadrature"
    if radial == "closed":
        log_w, sign_w = kotz_radial_log_weights(_as_kotz(gen), e, A, B, model.t_max)
    else:
        log_w, sign_w = quadrature_radial_log_weights(gen, e, A, B, model.t_max)
    return _assemble(front, eig, log_w, sign_w, K, model, return_series)


def central_invariant_logdensity(shape: PseudoWishartShape, sigma, convention: str = "printed"
                                 ) -> float:
    """Generator-free central (``mu = 0``) log shape density.

    ``pi^(nK/2 - e - 1) Gamma(e + 1) |W*|^((K-N)/2) J(u) (tr Sigma^-1 W)^(-e-1)
    / (Gamma_n(K/2) |Sigma|^(K/2))``.  Only under the derived convention does
    it coincide with the central density of every generator.
    """
    n, m, N, K = shape.n, shape.m, shape.N, shape.K
    e = radial_exponent(n, m, N, K, convention)
    if np.isscalar(sigma):
        A = shape.trace_w / sigma
        log_det_sigma = (N - 1) * math.log(sigma)
    else:
        S = np.asarray(sigma, dtype=float)
        A = float(np.sum(np.linalg.inv(S) * shape.W))
        log_det_sigma = float(np.linalg.slogdet(S)[1])
    return (
        (n * K / 2 - e - 1) * LOG_PI
        + math.lgamma(e + 1)
        - log_mv_gamma(n, K / 2)
        - K / 2 * log_det_sigma
        + (K - N) / 2 * shape.log_det_wstar
        + shape.log_jacobian
        - (e + 1) * math.log(A)
    )


# ---------------------------------------------------------------------------
# Kotz closed forms
# ---------------------------------------------------------------------------


def _require_T(model: ModelSpec, T: int):
    gen = model.generator
    if not _is_kotz(gen) or _as_kotz(gen).T != T:
        raise DomainError(f"this closed form needs a Kotz generator with T = {T}")
    return _as_kotz(gen)


def kotz_t1_shape_logdensity(shape: PseudoWishartShape, model: ModelSpec, *, return_series=False):
    """``T = 1`` closed form for general ``Sigma`` (weights ``Gamma(e+t+1) A^-(e+t+1)``)."""
    gen = _require_T(model, 1)
    R = gen.R
    q = model_quantities(shape, model)
    n, K, N, M = shape.n, shape.K, shape.N, shape.M
    front = (
        (n * K - M) / 2 * LOG_PI
        + (K - N) / 2 * shape.log_det_wstar
        + shape.log_jacobian
        - R * q.B
        - (q.e + 1 - M / 2) * math.log(R)
        - log_mv_gamma(n, K / 2)
        - K / 2 * q.log_det_sigma
    )
    a = q.e + np.arange(model.t_max + 1) + 1
    log_w = gammaln(a) - a * math.log(q.A)
    return _assemble(front, R * q.zonal_eig, log_w, np.ones_like(log_w), K, model, return_series)


def _isotropic_printed(shape, model, T):
    gen = _require_T(model, T)
    if gen.R != 0.5:
        raise DomainError("the isotropic closed forms are written for R = 1/2")
    if not model.isotropic:
        raise DomainError("the isotropic closed forms need scalar sigma^2")
    if model.theta is not None and not np.allclose(model.theta, np.eye(shape.K)):
        raise DomainError("the isotropic closed forms assume Theta = I")
    _check_dims(shape, model)
    s2 = float(model.sigma)
    mu = model.mu
    e = radial_exponent(shape.n, shape.m, shape.N, shape.K, model.radial_convention)
    beta = float(np.sum(mu * mu)) / (2 * s2)
    Z = mu.T @ shape.W @ mu / (2 * s2)
    eig = np.clip(np.linalg.eigvalsh((Z + Z.T) / 2), 0.0, None)
    n, K, N, M = shape.n, shape.K, shape.N, shape.M
    front = (
        (n * K - M) / 2 * LOG_PI
        + (K - N) / 2 * shape.log_det_wstar
        + shape.log_jacobian
        - beta
        - log_mv_gamma(n, K / 2)
        - (M - 2 - 2 * e) / 2 * math.log(s2)
    )
    t = np.arange(model.t_max + 1)
    a = e + t + 1
    return front, e, beta, eig, t, a


def gaussian_isotropic_shape_logdensity(shape, model: ModelSpec, *, return_series=False):
    """Isotropic Gaussian (``T = 1``, ``R = 1/2``) closed form."""
    front, e, _, eig, t, a = _isotropic_printed(shape, model, 1)
    front -= (shape.M / 2 - e - 1) * math.log(2)
    log_w = gammaln(a) - a * math.log(shape.trace_w)
    return _assemble(front, eig, log_w, np.ones_like(log_w), shape.K, model, return_series)


def kotz_t2_shape_logdensity(shape, model: ModelSpec, *, return_series=False):
    """Isotropic Kotz ``T = 2``, ``R = 1/2``: weights ``(B - 2t) Gamma(a) + Gamma(a + 1)``."""
    front, e, beta, eig, t, a = _isotropic_printed(shape, model, 2)
    front -= (shape.M / 2 - e - 2) * math.log(2) + math.log(shape.M)
    poly = beta - 2 * t + a
    with np.errstate(divide="ignore"):
        log_w = gammaln(a) + np.log(np.abs(poly)) - a * math.log(shape.trace_w)
    return _assemble(front, eig, log_w, np.sign(poly), shape.K, model, return_series)


def kotz_t3_shape_logdensity(shape, model: ModelSpec, *, return_series=False):
    """Isotropic Kotz ``T = 3``, ``R = 1/2``.

    Weights ``[(B-2t)^2 - 2t] Gamma(a) + 2 (B-2t) Gamma(a+1) + Gamma(a+2)``,
    factored as ``Gamma(a) * poly`` so the sign sits in one place.
    """
    front, e, beta, eig, t, a = _isotropic_printed(shape, model, 3)
    M = shape.M
    front -= (M / 2 - e - 3) * math.log(2) + math.log(M * (M + 2))
    d = beta - 2 * t
    poly = d * d - 2 * t + 2 * d * a + a * (a + 1)
    with np.errstate(divide="ignore"):
        log_w = gammaln(a) + np.log(np.abs(poly)) - a * math.log(shape.trace_w)
    return _assemble(front, eig, log_w, np.sign(poly), shape.K, model, return_series)


def _printed_double_series(gen: KotzGenerator, e: float, A: float, B: float, t_max: int):
    """``I_t = G e^(-RB) A^(-a-1) [ ... ]`` summed term by term as printed, ``a = e + t``.

    The ``u`` sums stop where ``prod (T-1-v-s)`` vanishes, which for integer
    ``T`` is at ``u = T - 1 - v``; the outer ``v`` sum stops at ``T - 1`` for
    the same reason.
    """
    T, R = int(gen.T), gen.R
    t = np.arange(t_max + 1)
    a = e + t
    logs, signs = [], []
    for v in range(0, T):
        lf, sf = _log_falling(T, v)
        if sf == 0:
            continue
        valid = 2 * t >= v
        # log C(2t, v) and log (1+a)_u as short sums of logs; differences of
        # large gammaln values would cost ~1e-13 per term before cancellation
        with np.errstate(divide="ignore", invalid="ignore"):
            log_binom = sum(np.log(np.maximum(2 * t - i, 0) / (i + 1)) for i in range(v)) + 0.0 * t
        for u in range(0, T - v):
            lu, su = _log_falling(T - v, u)
            bexp = T - 1 - u - v
            if bexp > 0 and B == 0:
                continue
            lb = 0.0 if bexp == 0 else bexp * math.log(B)
            # Gamma(1+a) R^(2t-1-a) is pulled out so the summed logs stay O(10)
            term = (
                log_binom + lf + lu - math.lgamma(u + 1)
                - (u + v) * math.log(R) + lb + sum(np.log(1 + a + i) for i in range(u))
            )
            logs.append(np.where(valid, term, -np.inf))
            signs.append(np.where(valid, sf * su * (-1.0) ** v, 0.0))
    lsum, ssum = signed_logsumexp(np.array(logs), np.array(signs), axis=0)
    lsum = lsum + gammaln(1 + a) + (2 * t - 1 - a) * math.log(R)
    return lsum + gen.log_const - R * B - (a + 1) * math.log(A), ssum


def kotz_general_shape_logdensity(shape, model: ModelSpec, *, return_series=False):
    """General-``Sigma`` Kotz density with the double-series radial weight.

    Falls back to radial quadrature for non-integer ``T``, where the ``u``
    series no longer terminates.
    """
    gen = model.generator
    if not _is_kotz(gen):
        raise DomainError("needs a Kotz generator")
    gen = _as_kotz(gen)
    q = model_quantities(shape, model)
    front = _front_common(shape, q)
    if gen.integer_T:
        log_w, sign_w = _printed_double_series(gen, q.e, q.A, q.B, model.t_max)
    else:
        log_w, sign_w = quadrature_radial_log_weights(gen, q.e, q.A, q.B, model.t_max)
    return _assemble(front, q.zonal_eig, log_w, sign_w, shape.K, model, return_series)


# ---------------------------------------------------------------------------
# Dispatch by name (CLI and inference use these keys)
# ---------------------------------------------------------------------------

DENSITIES = {
    "theorem": shape_logdensity,
    "isotropic": isotropic_shape_logdensity,
    "gaussian": gaussian_isotropic_shape_logdensity,
    "kotz1": kotz_t1_shape_logdensity,
    "kotz2": kotz_t2_shape_logdensity,
    "kotz3": kotz_t3_shape_logdensity,
    "kotz": kotz_general_shape_logdensity,
}


def density_for(model: ModelSpec):
    """Fastest applicable evaluator for a Kotz model."""
    gen = model.generator
    if not _is_kotz(gen):
        return shape_logdensity
    k = _as_kotz(gen)
    simple = model.isotropic and k.R == 0.5 and (
        model.theta is None or np.allclose(model.theta, np.eye(model.mu.shape[1]))
    )
    if simple and k.T == 1:
        return gaussian_isotropic_shape_logdensity
    if simple and k.T == 2:
        return kotz_t2_shape_logdensity
    if simple and k.T == 3:
        return kotz_t3_shape_logdensity
    if k.T == 1:
        return kotz_t1_shape_logdensity
    return shape_logdensity


__all__ = [
    "CONVENTIONS",
    "ModelSpec",
    "Quantities",
    "radial_exponent",
    "model_quantities",
    "kotz_radial_log_weights",
    "quadrature_radial_log_weights",
    "size_shape_logdensity",
    "shape_logdensity",
    "isotropic_shape_logdensity",
    "central_invariant_logdensity",
    "kotz_t1_shape_logdensity",
    "gaussian_isotropic_shape_logdensity",
    "kotz_t2_shape_logdensity",
    "kotz_t3_shape_logdensity",
    "kotz_general_shape_logdensity",
    "DENSITIES",
    "density_for",
]
