"""Density generators ``h`` and their derivatives.

The Kotz type-I generator in ``M = (N-1)K`` dimensions is

    h(y) = R^(T-1+M/2) Gamma(M/2) / (pi^(M/2) Gamma(T-1+M/2)) * y^(T-1) exp(-R y)

and the Gaussian is the special case ``T = 1, R = 1/2``.  All generators
expose ``log_deriv(k, y) -> (log|h^(k)(y)|, sign)`` so densities can be
evaluated where ``exp(-R y)`` underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError


def _is_int(x: float) -> bool:
    return float(x).is_integer()


@dataclass(frozen=True)
class KotzGenerator:
    """Kotz type-I generator with shape ``T``, rate ``R`` and dimension ``M``."""

    T: float
    R: float
    M: int

    def __post_init__(self):
        if self.R <= 0:
            raise DomainError(f"Kotz rate R must be positive, got {self.R}")
        if self.M < 1:
            raise DomainError(f"dimension M must be positive, got {self.M}")
        if self.T - 1 + self.M / 2 <= 0:
            raise DomainError("T - 1 + M/2 must be positive for a finite normaliser")

    @property
    def log_const(self) -> float:
        T, R, M = self.T, self.R, self.M
        return (
            (T - 1 + M / 2) * math.log(R)
            + math.lgamma(M / 2)
            - (M / 2) * math.log(math.pi)
            - math.lgamma(T - 1 + M / 2)
        )

    @property
    def integer_T(self) -> bool:
        return _is_int(self.T) and self.T >= 1

    def log_h(self, y: float) -> float:
        return log_kotz_h(self, y)

    def log_deriv(self, k: int, y: float):
        if k == 0 and y == 0:
            v = log_kotz_h(self, y)
            return v, (0.0 if v == -math.inf else 1.0)
        return log_kotz_h_deriv(self, k, y)


@dataclass(frozen=True)
class GaussianGenerator:
    """Gaussian generator ``(2 pi)^(-M/2) exp(-y/2)``, using the closed-form derivative."""

    M: int
    R: float = 0.5
    T: float = 1.0

    def __post_init__(self):
        if self.R != 0.5 or self.T != 1.0:
            raise DomainError("GaussianGenerator is fixed at T = 1, R = 1/2")

    @property
    def integer_T(self) -> bool:
        return True

    @property
    def log_const(self) -> float:
        return (self.M / 2) * (math.log(self.R) - math.log(math.pi))

    def log_h(self, y: float) -> float:
        return self.log_const - self.R * y

    def log_deriv(self, k: int, y: float):
        return self.log_const + k * math.log(self.R) - self.R * y, float((-1) ** k)

    def as_kotz(self) -> KotzGenerator:
        return KotzGenerator(1.0, 0.5, self.M)


@dataclass(frozen=True)
class CallableGenerator:
    """Arbitrary generator given by a derivative callable ``deriv(k, y) -> float``."""

    M: int
    deriv: Callable[[int, float], float]

    integer_T = False

    def log_h(self, y: float) -> float:
        v = self.deriv(0, y)
        return math.log(v) if v > 0 else -math.inf

    def log_deriv(self, k: int, y: float):
        v = self.deriv(k, y)
        if v == 0:
            return -math.inf, 0.0
        return math.log(abs(v)), math.copysign(1.0, v)


def log_kotz_h(gen: KotzGenerator, y: float) -> float:
    """``log h(y)`` for the Kotz generator (``-inf`` where ``h`` vanishes)."""
    if y < 0:
        raise DomainError(f"generator argument must be >= 0, got {y}")
    if y == 0:
        if gen.T < 1:
            raise DomainError("h(0) is infinite for T < 1")
        if gen.T > 1:
            return -math.inf
        return gen.log_const
    return gen.log_const + (gen.T - 1) * math.log(y) - gen.R * y


def kotz_h(gen: KotzGenerator, y: float) -> float:
    """Kotz generator value ``h(y)``."""
    return math.exp(log_kotz_h(gen, y))


def _brace_terms(gen: KotzGenerator, k: int, y: float, full_sum: bool):
    """log|.| and signs of ``1`` and ``C(k,m) prod_{i<m}(T-1-i) (-R y)^(-m)``."""
    T, R = gen.T, gen.R
    upper = k if (full_sum or not gen.integer_T) else min(k, int(T) - 1)
    logs = [0.0]
    signs = [1.0]
    log_prod, prod_sign = 0.0, 1.0
    log_ry = math.log(R * y)
    for m in range(1, upper + 1):
        f = T - 1 - (m - 1)
        if f == 0:
            log_prod, prod_sign = -math.inf, 0.0
        elif prod_sign != 0:
            log_prod += math.log(abs(f))
            prod_sign *= math.copysign(1.0, f)
        log_binom = math.lgamma(k + 1) - math.lgamma(m + 1) - math.lgamma(k - m + 1)
        logs.append(log_binom + log_prod - m * log_ry)
        signs.append(prod_sign * (-1.0) ** m)
    return logs, signs


def log_kotz_h_deriv(gen: KotzGenerator, k: int, y: float, *, full_sum: bool = False):
    """``(log|h^(k)(y)|, sign)`` for the Kotz generator, ``y > 0``."""
    if k < 0:
        raise DomainError("derivative order must be >= 0")
    if y <= 0:
        raise DomainError(f"derivative needs y > 0, got {y}")
    logs, signs = _brace_terms(gen, k, y, full_sum)
    # scalar signed log-sum-exp; this sits inside quadrature loops
    top = max(lv for lv, sv in zip(logs, signs) if sv != 0)
    acc = math.fsum(sv * math.exp(lv - top) for lv, sv in zip(logs, signs) if sv != 0)
    if acc == 0:
        return -math.inf, 0.0
    log_val = (
        gen.log_const + k * math.log(gen.R) + (gen.T - 1) * math.log(y) - gen.R * y
        + top + math.log(abs(acc))
    )
    return log_val, math.copysign(1.0, acc) * (-1.0) ** k


def kotz_h_deriv(gen: KotzGenerator, k: int, y: float, *, full_sum: bool = False) -> float:
    """k-th derivative of the Kotz generator.

    For integer ``T`` the inner binomial sum stops at ``m = T - 1`` because
    every later product contains the factor ``T - 1 - (T - 1) = 0``;
    ``full_sum=True`` keeps all ``k`` terms anyway.
    """
    lv, s = log_kotz_h_deriv(gen, k, y, full_sum=full_sum)
    return s * math.exp(lv) if s else 0.0


def gaussian_h_deriv(M: int, k: int, y: float) -> float:
    """``h^(k)(y) = (R/pi)^(M/2) (-R)^k exp(-R y)`` with ``R = 1/2``."""
    R = 0.5
    return (R / math.pi) ** (M / 2) * (-R) ** k * math.exp(-R * y)


def generator_mass_check(gen, *, rtol: float = 1e-12) -> float:
    """Ratio of ``int_0^inf s^(M/2-1) h(s) ds`` to ``Gamma(M/2)/pi^(M/2)``.

    Equals 1 for every properly normalised generator.
    """
    M = gen.M
    log_rhs = math.lgamma(M / 2) - (M / 2) * math.log(math.pi)

    def log_integrand(s):
        if s <= 0:
            return -math.inf
        return (M / 2 - 1) * math.log(s) + gen.log_h(s) - log_rhs

    # locate the bulk on a log grid, then integrate around it
    grid = np.geomspace(1e-8, 1e8, 3201)
    vals = np.array([log_integrand(s) for s in grid])
    peak = float(np.max(vals))
    live = np.flatnonzero(vals > peak - 80)
    lo = grid[max(live[0] - 1, 0)]
    hi = grid[min(live[-1] + 1, len(grid) - 1)]
    pts = np.concatenate([[0.0], np.geomspace(lo, hi, 40)])

    def f(s):
        v = log_integrand(s)
        return math.exp(v - peak) if v > -math.inf else 0.0

    total, err = 0.0, 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        val, e = integrate.quad(f, a, b, epsabs=0.0, epsrel=rtol, limit=200)
        total += val
        err += e
    val, e = integrate.quad(f, hi, np.inf, epsabs=0.0, epsrel=rtol, limit=200)
    total += val
    err += e
    if not np.isfinite(total) or err > 1e-9 * abs(total):
        raise QuadratureError(f"mass quadrature did not converge (est. error {err:.3g})")
    return total * math.exp(peak)


def kotz_log_h_array(gen: KotzGenerator, y: np.ndarray) -> np.ndarray:
    """Vectorised ``log h`` for ``y > 0``."""
    y = np.asarray(y, dtype=float)
    return gen.log_const + (gen.T - 1) * np.log(y) - gen.R * y


__all__ = [
    "KotzGenerator",
    "GaussianGenerator",
    "CallableGenerator",
    "kotz_h",
    "log_kotz_h",
    "kotz_h_deriv",
    "log_kotz_h_deriv",
    "gaussian_h_deriv",
    "generator_mass_check",
]
