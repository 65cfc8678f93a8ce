"""Likelihood, maximum likelihood fitting, BIC* and the two-sample LRT."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.special import gammaincc

from .densities import ModelSpec, density_for
from .errors import DensityEvaluationError, DomainError, PwShapeError

MAX_ITER = 5000
XTOL = 1e-4
FTOL = 1e-4


@dataclass(frozen=True)
class FitResult:
    mu_hat: np.ndarray
    logL: float
    bic_star: float
    iterations: int
    wall_time: float
    trace: list
    truncation: int
    n_evals: int = 0
    converged: bool = True
    restarted: bool = False
    logL_initial: float = math.nan


@dataclass(frozen=True)
class LrtResult:
    statistic: float
    df: int
    p_value: float
    logL_h0: float
    logL_h1: float
    clamped: bool = False
    fits: dict = field(default_factory=dict, repr=False)


def log_likelihood(sample, model: ModelSpec, density=None) -> float:
    """Sum of per-specimen log-densities, in sample order.

    A specimen whose truncated series is not positive contributes ``-inf``.
    """
    density = density or density_for(model)
    total = 0.0
    for shape in sample:
        try:
            v = density(shape, model)
        except PwShapeError as exc:
            raise DensityEvaluationError(shape.specimen_id, exc) from exc
        if v.sign <= 0:
            return -math.inf
        total += v.log_magnitude
    return total


def modified_bic(logL: float, n: int, n_p: int) -> float:
    """``BIC* = -2 logL + n_p (log(n + 2) - log 24)``."""
    if n < 1:
        raise DomainError("sample size must be >= 1")
    return -2.0 * logL + n_p * (math.log(n + 2) - math.log(24))


_GRADES = ((2.0, "weak"), (6.0, "positive"), (10.0, "strong"))


def evidence_grade(delta_bic: float) -> str:
    """Grade of a BIC* difference; band edges belong to the lower band."""
    if delta_bic < 0 or math.isnan(delta_bic):
        raise DomainError(f"BIC* difference must be >= 0, got {delta_bic}")
    for edge, name in _GRADES:
        if delta_bic <= edge:
            return name
    return "very strong"


def chi2_sf(x: float, k: int) -> float:
    """Upper tail of chi-square with ``k`` degrees of freedom."""
    if x < 0:
        raise DomainError("chi-square statistic must be >= 0")
    if k < 1:
        raise DomainError("degrees of freedom must be >= 1")
    return float(gammaincc(k / 2, x / 2))


# ---------------------------------------------------------------------------
# Nelder-Mead
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    fun: float
    trace: list
    iterations: int
    n_evals: int
    converged: bool


def nelder_mead(f, x0, *, max_iter: int = MAX_ITER, xtol: float = XTOL, ftol: float = FTOL,
                initial_simplex=None) -> SimplexResult:
    """Minimise ``f`` with the classic simplex (coefficients 1, 2, 1/2, 1/2).

    Stops once the simplex is within ``xtol`` of its best vertex in every
    coordinate and the function spread is within ``ftol``, or after
    ``max_iter`` iterations.  ``trace`` holds ``(iteration, best f)``.
    """
    x0 = np.asarray(x0, dtype=float).ravel()
    f0 = f(x0)
    if not np.isfinite(f0):
        raise DomainError("objective is not finite at the initial point")
    trace = [(0, float(f0))]

    def record(intermediate_result):
        trace.append((len(trace), float(intermediate_result.fun)))

    opts = {"maxiter": max_iter, "maxfev": 10**9, "xatol": xtol, "fatol": ftol}
    if initial_simplex is not None:
        opts["initial_simplex"] = initial_simplex
    res = minimize(f, x0, method="Nelder-Mead", callback=record, options=opts)
    x, fun = res.x, float(res.fun)
    # the returned vertex can only tie the start on a flat objective
    if fun >= f0:
        x, fun = x0, float(f0)
    return SimplexResult(x, fun, trace, int(res.nit), int(res.nfev) + 1, res.status == 0)


# ---------------------------------------------------------------------------
# Fitting
# ---------------------------------------------------------------------------


def initial_mean(sample) -> np.ndarray:
    """Mean of the specimens' preshapes."""
    if not sample:
        raise DomainError("empty sample")
    if any(s.Y is None for s in sample):
        raise DomainError("specimens carry no preshape; build them with pw_coordinates")
    return np.mean([s.Y for s in sample], axis=0)


def _fit(objective, x0, shape, *, seed, max_iter):
    t0 = time.perf_counter()
    first = nelder_mead(objective, x0.ravel(), max_iter=max_iter)
    result, restarted = first, False
    trace = list(first.trace)
    n_evals, iterations = first.n_evals, first.iterations
    if not first.converged:
        # one restart from a perturbed copy of the last best point
        rng = np.random.default_rng(seed)
        scale = 1e-2 * max(np.linalg.norm(x0), 1.0)
        start = first.x + scale * rng.standard_normal(first.x.shape)
        second = nelder_mead(objective, start, max_iter=max_iter)
        restarted = True
        offset, best = trace[-1]
        # the restart begins off the best point; the trace keeps the running best
        for i, v in second.trace:
            best = min(best, v)
            trace.append((offset + i + 1, best))
        n_evals += second.n_evals
        iterations += second.iterations
        if second.fun <= first.fun:
            result = second
        result = SimplexResult(result.x, result.fun, trace, iterations, n_evals, second.converged)
    wall = time.perf_counter() - t0
    return result, trace, iterations, n_evals, restarted, wall


def fit_mle(sample, model: ModelSpec, density=None, *, t_max: int | None = None, x0=None,
            seed: int = 0, max_iter: int = MAX_ITER) -> FitResult:
    """Maximum likelihood estimate of ``mu`` with ``sigma``, ``Theta`` and the generator fixed.

    Starts from the mean preshape unless ``x0`` is given.  The trace holds
    ``(iteration, logL)`` of the best vertex.
    """
    if t_max is not None:
        model = model.replace(t_max=t_max)
    density = density or density_for(model)
    x0 = initial_mean(sample) if x0 is None else np.asarray(x0, dtype=float)
    shape = x0.shape

    def objective(x):
        ll = log_likelihood(sample, model.replace(mu=x.reshape(shape)), density)
        return -ll if np.isfinite(ll) else math.inf

    res, trace, iterations, n_evals, restarted, wall = _fit(
        objective, x0, shape, seed=seed, max_iter=max_iter
    )
    logL = -res.fun
    return FitResult(
        mu_hat=res.x.reshape(shape),
        logL=logL,
        bic_star=modified_bic(logL, len(sample), x0.size),
        iterations=iterations,
        wall_time=wall,
        trace=[(i, -v) for i, v in trace],
        truncation=model.t_max,
        n_evals=n_evals,
        converged=res.converged,
        restarted=restarted,
        logL_initial=-trace[0][1],
    )


def lrt_mean_shape(group1, group2, model: ModelSpec, density=None, *, t_max: int | None = None,
                   seed: int = 0, max_iter: int = MAX_ITER) -> LrtResult:
    """Wilks test of equal mean shape: ``-2 log Lambda = 2 (logL_H1 - logL_H0)``.

    H1 fits each group separately; H0 fits one ``mu`` to both, starting from
    the size-weighted average of the two mean preshapes.  A small negative
    statistic (optimiser noise) is clamped to 0 and flagged.
    """
    if t_max is not None:
        model = model.replace(t_max=t_max)
    density = density or density_for(model)
    fit1 = fit_mle(group1, model, density, seed=seed, max_iter=max_iter)
    fit2 = fit_mle(group2, model, density, seed=seed, max_iter=max_iter)
    n1, n2 = len(group1), len(group2)
    x0 = (n1 * initial_mean(group1) + n2 * initial_mean(group2)) / (n1 + n2)
    shape = x0.shape

    def objective(x):
        m = model.replace(mu=x.reshape(shape))
        ll = log_likelihood(group1, m, density) + log_likelihood(group2, m, density)
        return -ll if np.isfinite(ll) else math.inf

    res, *_ = _fit(objective, x0, shape, seed=seed, max_iter=max_iter)
    logL_h0 = -res.fun
    logL_h1 = fit1.logL + fit2.logL
    stat = 2.0 * (logL_h1 - logL_h0)
    clamped = stat < 0
    stat = max(stat, 0.0)
    df = x0.size
    return LrtResult(stat, df, chi2_sf(stat, df), logL_h0, logL_h1, clamped,
                     {"group1": fit1, "group2": fit2, "pooled_mu": res.x.reshape(shape)})
