"""Independent numerical oracles.

These are brute-force routes (quadrature, Monte Carlo, finite differences)
that the closed forms are checked against.  They ship with the library so
``pwshape --self-check`` can rerun them.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate

from .errors import DegenerateSupportError, DomainError, NoPlateauError, QuadratureError
from .partitions import SignedLogValue


@dataclass(frozen=True)
class OracleReport:
    name: str
    computed: float
    reference: float
    rel_error: float
    samples: int
    tolerance: float
    verdict: str
    detail: str = ""

    @classmethod
    def compare(cls, name, computed, reference, tolerance, samples=0, detail="", rel_error=None):
        if rel_error is None:
            denom = abs(reference) if reference != 0 else 1.0
            rel_error = abs(computed - reference) / denom
        verdict = "pass" if rel_error <= tolerance else "fail"
        return cls(name, float(computed), float(reference), float(rel_error), int(samples),
                   float(tolerance), verdict, detail)

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# Radial integral
# ---------------------------------------------------------------------------


def _log_integrand(e: float, gen, A: float, B: float, k: int):
    def f(r: float):
        if r <= 0:
            return -math.inf, 0.0
        lv, s = gen.log_deriv(k, r * A + B)
        return e * math.log(r) + lv, s

    return f


def radial_quadrature(e: float, gen, A: float, B: float, k: int, *, rtol: float = 1e-11):
    """``int_0^inf r^e h^(k)(r A + B) dr`` as ``(log|I|, sign)``.

    The integrand is located on a log grid, rescaled by its peak, split at
    sign changes and integrated piecewise with adaptive Gauss-Kronrod.
    """
    if e <= -1:
        raise DomainError(f"radial integral diverges at 0 for exponent {e}")
    if A <= 0 or B < 0:
        raise DomainError("need A > 0 and B >= 0")
    f = _log_integrand(e, gen, A, B, k)
    grid = np.geomspace(1e-12, 1e12, 481) / A
    vals = [f(r) for r in grid]
    logs = np.array([v[0] for v in vals])
    signs = np.array([v[1] for v in vals])
    peak = float(np.max(logs))
    if not np.isfinite(peak):
        raise QuadratureError("integrand vanishes on the search grid")
    live = np.flatnonzero(logs > peak - 60)
    lo_i, hi_i = max(live[0] - 1, 0), min(live[-1] + 1, len(grid) - 1)
    pts = [0.0]
    # a break every few grid cells across the bulk, plus the sign changes
    for i in range(lo_i, hi_i):
        if (i - lo_i) % 4 == 0:
            pts.append(grid[i])
        if signs[i] * signs[i + 1] < 0:
            a, b = grid[i], grid[i + 1]
            while b - a > 1e-13 * b:
                c = 0.5 * (a + b)
                if f(c)[1] * signs[i] > 0:
                    a = c
                else:
                    b = c
            pts.append(0.5 * (a + b))
    pts.append(grid[hi_i])

    def g(r):
        lv, s = f(r)
        return s * math.exp(lv - peak) if s else 0.0

    # scale of int |f| from the grid (trapezoid in log r); the absolute
    # tolerance is set against it so cancelling pieces are resolved too
    mags = np.exp(np.where(np.isfinite(logs), logs - peak, -np.inf)) * grid
    abs_scale = float(integrate.trapezoid(mags, np.log(grid)))
    epsabs = rtol * abs_scale / len(pts)
    total, err = 0.0, 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        v, e_ = integrate.quad(g, a, b, epsabs=epsabs, epsrel=rtol, limit=100)
        total += v
        err += e_
    v, e_ = integrate.quad(g, pts[-1], np.inf, epsabs=epsabs, epsrel=rtol, limit=100)
    total += v
    err += e_
    if not np.isfinite(total) or err > 100 * rtol * max(abs_scale, abs(total)):
        raise QuadratureError(f"radial quadrature error estimate {err:.3g} too large")
    if total == 0:
        return -math.inf, 0.0
    return math.log(abs(total)) + peak, math.copysign(1.0, total)


def gamma_radial_reference(e: float, R: float, A: float, B: float, log_const: float, k: int):
    """Closed form of the radial integral for ``T = 1``: ``const R^k e^(-RB) Gamma(e+1)/(AR)^(e+1)``."""
    return log_const + k * math.log(R) - R * B + math.lgamma(e + 1) - (e + 1) * math.log(A * R)


# ---------------------------------------------------------------------------
# Monte Carlo normalisation over the shape chart
# ---------------------------------------------------------------------------


def mc_normalization(
    log_density,
    chart_dim: int,
    n_samples: int,
    seed: int,
    *,
    support=None,
    tol: float = 0.02,
    name: str = "mc_normalization",
    batch: int = 200_000,
) -> OracleReport:
    """Estimate ``int f(u) du`` over ``[0, pi]^(m-1) x [0, 2 pi]`` by uniform sampling.

    ``log_density`` maps an ``(s, m)`` array of angles to log-densities (with
    ``-inf`` off the support); ``support`` optionally pre-filters points.  The
    report's ``detail`` carries the standard error and acceptance rate.
    """
    if chart_dim < 1 or chart_dim > 4:
        raise DomainError("chart dimension must be between 1 and 4")
    rng = np.random.default_rng(seed)
    hi = np.full(chart_dim, math.pi)
    hi[-1] = 2 * math.pi
    volume = float(np.prod(hi))
    s1 = 0.0
    s2 = 0.0
    accepted = 0
    done = 0
    while done < n_samples:
        size = min(batch, n_samples - done)
        u = rng.uniform(0.0, 1.0, size=(size, chart_dim)) * hi
        vals = np.zeros(size)
        mask = np.ones(size, dtype=bool) if support is None else support(u)
        if np.any(mask):
            lv = np.asarray(log_density(u[mask]), dtype=float)
            ok = np.isfinite(lv)
            vals_m = np.zeros(int(mask.sum()))
            vals_m[ok] = np.exp(lv[ok])
            vals[mask] = vals_m
            accepted += int(np.count_nonzero(ok))
        s1 += float(np.sum(vals))
        s2 += float(np.sum(vals**2))
        done += size
    rate = accepted / n_samples
    if rate < 1e-4:
        raise DegenerateSupportError(f"acceptance rate {rate:.2e} below 1e-4")
    mean = s1 / n_samples
    var = max(s2 / n_samples - mean**2, 0.0)
    est = volume * mean
    se = volume * math.sqrt(var / n_samples)
    return OracleReport.compare(
        name, est, 1.0, tol, samples=n_samples,
        detail=f"standard_error={se:.6g}; acceptance={rate:.4f}",
    )


def mc_standard_error(report: OracleReport) -> float:
    for part in report.detail.split(";"):
        key, _, val = part.strip().partition("=")
        if key == "standard_error":
            return float(val)
    raise KeyError("standard_error")


# ---------------------------------------------------------------------------
# Finite differences
# ---------------------------------------------------------------------------


def _central_difference(f, y: float, k: int, h: float) -> float:
    # k-th central difference with nodes y + (j - k/2) h
    total = 0.0
    for j in range(k + 1):
        total += (-1) ** (k - j) * math.comb(k, j) * f(y + (j - k / 2) * h)
    return total / h**k


def finite_difference(f, y: float, k: int, *, h0: float | None = None, levels: int = 8,
                      rtol: float = 1e-9):
    """Richardson-extrapolated central differences of order ``k``.

    Returns ``(estimate, error_estimate)``.  Raises :class:`NoPlateauError`
    when successive extrapolants never settle.
    """
    if k < 0 or k > 4:
        raise DomainError("finite differences supported for 0 <= k <= 4")
    if k == 0:
        return f(y), 0.0
    if h0 is None:
        h0 = 0.5 * max(abs(y), 1e-3) if k > 0 else 0.0
        h0 = min(h0, 0.9 * 2 * y / k) if y > 0 else h0
    table = []
    best, best_err = None, math.inf
    for i in range(levels):
        h = h0 / 2**i
        row = [_central_difference(f, y, k, h)]
        # central stencils have even error expansions in h
        for j in range(1, i + 1):
            prev = table[i - 1][j - 1]
            row.append(row[j - 1] + (row[j - 1] - prev) / (4**j - 1))
        table.append(row)
        if i > 0:
            err = abs(row[-1] - table[i - 1][-1])
            if err < best_err:
                best, best_err = row[-1], err
    if best is None or best_err > max(rtol, 1e-4) * max(abs(best), 1e-300):
        raise NoPlateauError(f"no Richardson plateau (last spread {best_err:.3g})")
    return best, best_err


# ---------------------------------------------------------------------------
# Truncation study
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationRow:
    t_max: int
    value: float
    increment: float


def truncation_study(log_density_at, t_grid, *, threshold: float = 1e-6):
    """Evaluate ``log_density_at(t_max)`` along ``t_grid``.

    Returns ``(rows, stable_from)`` where ``stable_from`` is the first grid
    value after which every successive increment is below ``threshold``
    (``None`` if never).
    """
    t_grid = list(t_grid)
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise DomainError("t_grid must be strictly ascending")
    rows = []
    prev = None
    for t in t_grid:
        v = log_density_at(t)
        v = v.log_magnitude if isinstance(v, SignedLogValue) else float(v)
        inc = math.nan if prev is None else abs(v - prev)
        rows.append(TruncationRow(t, v, inc))
        prev = v
    stable_from = None
    for i in range(len(rows)):
        tail = [r.increment for r in rows[i + 1:]]
        if tail and all(x < threshold for x in tail):
            stable_from = rows[i].t_max
            break
    return rows, stable_from

