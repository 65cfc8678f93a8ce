"""Partitions, zonal polynomials and weighted zonal series.

Zonal polynomials are Jack polynomials at parameter ``alpha = 2`` rescaled to
the "C" normalisation, in which the sum over all partitions of a degree ``t``
equals ``(tr X)**t``.  They are evaluated with the variable-by-variable
recurrence

    C_kappa(x_1..x_k) = sum_mu g(kappa, mu) C_mu(x_1..x_{k-1}) x_k**(|kappa|-|mu|)

over partitions ``mu`` interlacing ``kappa`` (``kappa/mu`` a horizontal
strip).  The coefficients ``g`` depend only on the partitions, so they are
tabulated once per (number of variables, maximal degree) and reused for every
matrix argument.

Everything that can over/underflow is carried in log space with an explicit
sign (:class:`SignedLogValue` for scalars, ``(log|x|, sign)`` array pairs
inside the vectorised kernels).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, PoleError, SeriesNonconvergenceError

ALPHA = 2.0
DEFAULT_T_MAX = 160
DEFAULT_TOL = 1e-12

Partition = tuple


# ---------------------------------------------------------------------------
# Signed log-space scalar
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(log_magnitude)``.

    ``sign == 0`` iff ``log_magnitude == -inf``.
    """

    log_magnitude: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if (self.sign == 0) != (self.log_magnitude == -math.inf):
            raise ValueError("sign is 0 exactly when log_magnitude is -inf")

    @classmethod
    def zero(cls) -> "SignedLogValue":
        return cls(-math.inf, 0)

    @classmethod
    def from_float(cls, x: float) -> "SignedLogValue":
        if x == 0:
            return cls.zero()
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def from_parts(cls, log_magnitude: float, sign: float) -> "SignedLogValue":
        """Build from possibly-inconsistent parts (e.g. numpy scalars)."""
        sign = int(np.sign(sign))
        log_magnitude = float(log_magnitude)
        if sign == 0 or log_magnitude == -math.inf:
            return cls.zero()
        return cls(log_magnitude, sign)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __neg__(self) -> "SignedLogValue":
        return SignedLogValue(self.log_magnitude, -self.sign)

    def __add__(self, other: "SignedLogValue") -> "SignedLogValue":
        if not isinstance(other, SignedLogValue):
            other = SignedLogValue.from_float(float(other))
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        hi, lo = (self, other) if self.log_magnitude >= other.log_magnitude else (other, self)
        ratio = math.exp(lo.log_magnitude - hi.log_magnitude)
        if hi.sign == lo.sign:
            return SignedLogValue(hi.log_magnitude + math.log1p(ratio), hi.sign)
        if ratio == 1.0:
            return SignedLogValue.zero()
        return SignedLogValue(hi.log_magnitude + math.log1p(-ratio), hi.sign)

    __radd__ = __add__

    def __sub__(self, other: "SignedLogValue") -> "SignedLogValue":
        return self + (-other)

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if not isinstance(other, SignedLogValue):
            other = SignedLogValue.from_float(float(other))
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue.zero()
        return SignedLogValue(self.log_magnitude + other.log_magnitude, self.sign * other.sign)

    __rmul__ = __mul__


def signed_logsumexp(log_mag, sign, axis=None):
    """Sum of ``sign * exp(log_mag)`` along ``axis`` as ``(log|sum|, sign)``.

    Written out rather than via ``scipy.special.logsumexp(b=...)``, which
    returns nan when its largest terms cancel even if smaller ones remain.
    """
    log_mag = np.asarray(log_mag, dtype=float)
    sign = np.asarray(sign, dtype=float)
    b = np.where(np.isneginf(log_mag), 0.0, sign)
    safe = np.where(b == 0, -np.inf, log_mag)
    top = np.max(safe, axis=axis, keepdims=True)
    top = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        total = np.sum(b * np.exp(safe - top), axis=axis, keepdims=True)
        out = np.log(np.abs(total)) + top
    s = np.sign(total)
    if axis is None:
        return float(out.reshape(())), float(s.reshape(()))
    return np.squeeze(out, axis=axis), np.squeeze(s, axis=axis)


# ---------------------------------------------------------------------------
# Partitions, Pochhammer symbols, multivariate gamma
# ---------------------------------------------------------------------------


def _partitions_bounded(t: int, max_len: int, max_part: int) -> Iterator[tuple]:
    if t == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(t, max_part), 0, -1):
        if first * max_len < t:
            break
        for rest in _partitions_bounded(t - first, max_len - 1, first):
            yield (first,) + rest


def partitions(t: int, max_len: int) -> list:
    """All partitions of ``t`` with at most ``max_len`` parts.

    Partitions are weakly decreasing tuples of positive integers, listed in
    reverse-lexicographic order, e.g. ``partitions(4, 4)`` starts with
    ``(4,)`` and ends with ``(1, 1, 1, 1)``.
    """
    if t < 0:
        raise DomainError(f"partition weight must be >= 0, got {t}")
    if max_len < 1:
        raise DomainError(f"max_len must be positive, got {max_len}")
    return list(_partitions_bounded(t, max_len, t))


def conjugate(kappa: Sequence[int]) -> tuple:
    if not kappa:
        return ()
    return tuple(sum(1 for k in kappa if k > j) for j in range(kappa[0]))


def gen_pochhammer(a: float, kappa: Sequence[int]) -> float:
    """Generalised Pochhammer symbol ``(a)_kappa = prod_j (a - (j-1)/2)_{kappa_j}``."""
    out = 1.0
    for j, kj in enumerate(kappa):
        base = a - j / 2.0
        for i in range(kj):
            out *= base + i
    return out


def log_gen_pochhammer(a: float, kappa: Sequence[int]) -> SignedLogValue:
    """``(a)_kappa`` as a :class:`SignedLogValue`."""
    log_mag, sign = 0.0, 1
    for j, kj in enumerate(kappa):
        base = a - j / 2.0
        for i in range(kj):
            f = base + i
            if f == 0:
                return SignedLogValue.zero()
            log_mag += math.log(abs(f))
            if f < 0:
                sign = -sign
    return SignedLogValue(log_mag, sign)


def _check_mv_gamma_poles(s: int, a: float) -> None:
    if s < 1:
        raise DomainError(f"multivariate gamma dimension must be >= 1, got {s}")
    for j in range(s):
        arg = a - j / 2.0
        if arg <= 0 and arg == math.floor(arg):
            raise PoleError(f"Gamma({arg}) diverges in Gamma_{s}({a})")


def log_mv_gamma(s: int, a: float) -> float:
    """``log |Gamma_s(a)|``."""
    _check_mv_gamma_poles(s, a)
    return s * (s - 1) / 4.0 * math.log(math.pi) + sum(
        math.lgamma(a - j / 2.0) for j in range(s)
    )


def mv_gamma(s: int, a: float) -> float:
    """Multivariate gamma ``Gamma_s(a) = pi^{s(s-1)/4} prod_j Gamma(a - (j-1)/2)``."""
    _check_mv_gamma_poles(s, a)
    out = math.pi ** (s * (s - 1) / 4.0)
    for j in range(s):
        out *= math.gamma(a - j / 2.0)
    return out


# ---------------------------------------------------------------------------
# Jack coefficient tables
# ---------------------------------------------------------------------------


def _hook_logs(nu: tuple):
    """Per-row log upper/lower hooks of ``nu`` (alpha = 2).

    Returns ``(upper_totals, lower_totals, diff_cums)`` where ``diff_cums[r]``
    is the cumulative sum over columns of ``log lower - log upper`` in row r.
    """
    conj = conjugate(nu)
    upper_totals, lower_totals, diff_cums = [], [], []
    for r, nr in enumerate(nu, start=1):
        cum = [0.0]
        up_tot = lo_tot = 0.0
        for j in range(1, nr + 1):
            up = math.log(conj[j - 1] - r + ALPHA * (nr - j + 1))
            lo = math.log(conj[j - 1] - r + 1 + ALPHA * (nr - j))
            up_tot += up
            lo_tot += lo
            cum.append(cum[-1] + lo - up)
        upper_totals.append(up_tot)
        lower_totals.append(lo_tot)
        diff_cums.append(cum)
    return upper_totals, lower_totals, diff_cums


def _log_strip_product(nu_hooks, nu: tuple, strips) -> float:
    """log prod over cells of nu of the hook selected by the strip columns.

    Columns inside the strip ``kappa/mu`` take the lower hook, all others the
    upper hook.
    """
    upper_totals, _, diff_cums = nu_hooks
    total = 0.0
    for r, nr in enumerate(nu):
        total += upper_totals[r]
        cum = diff_cums[r]
        for lo, hi in strips:
            a, b = min(lo, nr), min(hi, nr)
            if b > a:
                total += cum[b] - cum[a]
    return total


def _interlacing(kappa: tuple, k: int) -> Iterator[tuple]:
    """Partitions mu with <= k-1 parts such that kappa/mu is a horizontal strip."""
    kap = list(kappa) + [0] * (k - len(kappa))
    ranges = [range(kap[i + 1], kap[i] + 1) for i in range(k - 1)]

    def rec(i, acc):
        if i == k - 1:
            yield tuple(p for p in acc if p > 0)
            return
        for v in ranges[i]:
            yield from rec(i + 1, acc + [v])

    yield from rec(0, [])


@dataclass(frozen=True)
class _Level:
    """Recurrence data for partitions with at most ``k`` parts."""

    k: int
    parts: tuple  # partitions, sorted by degree then reverse-lex
    degree: np.ndarray  # |kappa| per partition
    kappa_idx: np.ndarray  # pair -> index into parts
    mu_idx: np.ndarray  # pair -> index into previous level's parts
    log_coef: np.ndarray  # pair -> log g(kappa, mu)
    power: np.ndarray  # pair -> |kappa| - |mu|


@dataclass(frozen=True)
class _JackTable:
    nvars: int
    t_max: int
    levels: tuple
    index: dict  # partition -> position in the top level


_TABLE_CACHE: dict = {}
_TABLE_LOCK = threading.Lock()


def _log_j(hooks) -> float:
    return sum(hooks[0]) + sum(hooks[1])


def _build_table(nvars: int, t_max: int) -> _JackTable:
    hook_cache: dict = {}

    def hooks(nu):
        h = hook_cache.get(nu)
        if h is None:
            h = hook_cache[nu] = _hook_logs(nu)
        return h

    levels = []
    prev_index = None
    for k in range(1, nvars + 1):
        parts = [p for t in range(t_max + 1) for p in partitions(t, k)]
        index = {p: i for i, p in enumerate(parts)}
        degree = np.array([sum(p) for p in parts], dtype=np.int64)
        k_idx, m_idx, coefs, powers = [], [], [], []
        if k > 1:
            for ki, kappa in enumerate(parts):
                tk = sum(kappa)
                hk = hooks(kappa)
                log_norm_k = tk * math.log(ALPHA) + math.lgamma(tk + 1) - _log_j(hk)
                kap = list(kappa) + [0] * (k - len(kappa))
                for mu in _interlacing(kappa, k):
                    tm = sum(mu)
                    hm = hooks(mu)
                    mu_full = list(mu) + [0] * (k - len(mu))
                    strips = [(mu_full[i], kap[i]) for i in range(k) if kap[i] > mu_full[i]]
                    log_beta = _log_strip_product(hk, kappa, strips) - _log_strip_product(
                        hm, mu, strips
                    )
                    log_inv_norm_m = _log_j(hm) - tm * math.log(ALPHA) - math.lgamma(tm + 1)
                    k_idx.append(ki)
                    m_idx.append(prev_index[mu])
                    coefs.append(log_norm_k + log_beta + log_inv_norm_m)
                    powers.append(tk - tm)
        lvl = _Level(
            k=k,
            parts=tuple(parts),
            degree=degree,
            kappa_idx=np.array(k_idx, dtype=np.int64),
            mu_idx=np.array(m_idx, dtype=np.int64),
            log_coef=np.array(coefs, dtype=float),
            power=np.array(powers, dtype=np.int64),
        )
        for arr in (lvl.degree, lvl.kappa_idx, lvl.mu_idx, lvl.log_coef, lvl.power):
            arr.setflags(write=False)
        levels.append(lvl)
        prev_index = index
    return _JackTable(nvars, t_max, tuple(levels), prev_index)


def _jack_table(nvars: int, t_max: int) -> _JackTable:
    """Cached coefficient table; a larger cached ``t_max`` is reused."""
    with _TABLE_LOCK:
        for (nv, tm), table in _TABLE_CACHE.items():
            if nv == nvars and tm >= t_max:
                return table
        table = _build_table(nvars, t_max)
        _TABLE_CACHE[(nvars, t_max)] = table
        return table


def _zonal_all(y: np.ndarray, t_max: int):
    """C_kappa(y) for every partition up to ``t_max`` with <= len(y) parts."""
    table = _jack_table(len(y), t_max)
    top = None
    vals = None
    for lvl, yk in zip(table.levels, y):
        if lvl.k == 1:
            vals = yk ** lvl.degree.astype(float)
        else:
            w = np.exp(lvl.log_coef) * vals[lvl.mu_idx] * yk ** lvl.power.astype(float)
            vals = np.bincount(lvl.kappa_idx, weights=w, minlength=len(lvl.parts))
        top = lvl
    if t_max < table.t_max:
        keep = top.degree <= t_max
        return tuple(p for p, k in zip(top.parts, keep) if k), top.degree[keep], vals[keep]
    return top.parts, top.degree, vals


def _prepare_eigenvalues(eigenvalues) -> np.ndarray:
    x = np.asarray(eigenvalues, dtype=float).ravel()
    if not np.all(np.isfinite(x)):
        raise DomainError("eigenvalues must be finite")
    return x[x != 0.0]


def zonal(kappa: Sequence[int], eigenvalues) -> float:
    """Zonal polynomial ``C_kappa(X)`` of a symmetric matrix given by its eigenvalues.

    Normalised so that ``sum_{kappa |- t} C_kappa(X) == trace(X)**t``.
    Returns 0 when ``kappa`` has more parts than ``X`` has nonzero
    eigenvalues.  The value is invariant under reordering the eigenvalues.
    """
    kappa = tuple(int(k) for k in kappa)
    if any(k <= 0 for k in kappa) or list(kappa) != sorted(kappa, reverse=True):
        raise DomainError(f"not a partition: {kappa}")
    t = sum(kappa)
    x = np.sort(_prepare_eigenvalues(eigenvalues))[::-1]
    if len(kappa) > len(x):
        return 0.0
    if t == 0:
        return 1.0
    scale = np.max(np.abs(x))
    parts, _, vals = _zonal_all(x / scale, t)
    table = _jack_table(len(x), t)
    return float(vals[table.index[kappa]] * scale**t)


# ---------------------------------------------------------------------------
# Per-degree sums  S_t = sum_{kappa |- t} C_kappa(X) / (a)_kappa
# ---------------------------------------------------------------------------


def _log_pochhammer_array(a: float, parts) -> tuple:
    logs = np.empty(len(parts))
    signs = np.empty(len(parts))
    for i, p in enumerate(parts):
        v = log_gen_pochhammer(a, p)
        logs[i], signs[i] = v.log_magnitude, v.sign
    return logs, signs


_D_CACHE: dict = {}
_D_LOCK = threading.Lock()


@dataclass(frozen=True)
class _MonomialTable:
    """log|D[t, j]| and signs: S_t(x1, x2) = sum_j D[t, j] x1^j x2^(t-j)."""

    t_max: int
    deg: np.ndarray
    j: np.ndarray
    log_d: np.ndarray
    sign_d: np.ndarray
    starts: np.ndarray


def _monomial_table(a: float, t_max: int) -> _MonomialTable:
    key = (float(a), int(t_max))
    with _D_LOCK:
        cached = _D_CACHE.get(key)
        if cached is not None:
            return cached
    table = _jack_table(2, t_max)
    lvl1, lvl2 = table.levels
    parts = lvl2.parts
    if len(parts) != len(lvl2.degree) or table.t_max != t_max:
        keep = lvl2.degree <= t_max
    else:
        keep = np.ones(len(parts), dtype=bool)
    lp, sp = _log_pochhammer_array(a, parts)
    pair_keep = keep[lvl2.kappa_idx]
    kap = lvl2.kappa_idx[pair_keep]
    mu_deg = lvl1.degree[lvl2.mu_idx[pair_keep]]
    deg = lvl2.degree[kap]
    log_terms = lvl2.log_coef[pair_keep] - lp[kap]
    sign_terms = sp[kap]
    # group by (deg, j)
    key_arr = deg * (t_max + 1) + mu_deg
    order = np.argsort(key_arr, kind="stable")
    key_sorted = key_arr[order]
    uniq, first = np.unique(key_sorted, return_index=True)
    log_d, sign_d = _reduce_by_degree(log_terms[order], sign_terms[order], first, len(uniq) - 1)
    d_deg = uniq // (t_max + 1)
    d_j = uniq % (t_max + 1)
    starts = np.searchsorted(d_deg, np.arange(t_max + 1))
    out = _MonomialTable(t_max, d_deg, d_j, log_d, sign_d, starts)
    with _D_LOCK:
        _D_CACHE[key] = out
    return out


def _log_degree_sums_two(x1: float, x2: float, a: float, t_max: int):
    tab = _monomial_table(a, t_max)
    with np.errstate(divide="ignore"):
        l1, l2 = math.log(x1) if x1 > 0 else -math.inf, math.log(x2) if x2 > 0 else -math.inf
    p1 = tab.j.astype(float)
    p2 = (tab.deg - tab.j).astype(float)
    with np.errstate(invalid="ignore"):
        e1 = np.where(p1 == 0, 0.0, p1 * l1)
        e2 = np.where(p2 == 0, 0.0, p2 * l2)
    terms = tab.log_d + e1 + e2
    return _reduce_by_degree(terms, tab.sign_d, tab.starts, t_max)


def _reduce_by_degree(terms, signs, starts, t_max):
    """Signed log-sum-exp of contiguous per-degree segments."""
    out_log = np.full(t_max + 1, -np.inf)
    out_sign = np.zeros(t_max + 1)
    n = len(terms)
    present = np.flatnonzero(np.diff(np.append(starts, n)) > 0)
    if len(present) == 0:
        return out_log, out_sign
    seg = starts[present]
    live = np.where((signs == 0) | np.isneginf(terms), -np.inf, terms)
    peak = np.maximum.reduceat(live, seg)
    finite_peak = np.where(np.isneginf(peak), 0.0, peak)
    counts = np.diff(np.append(seg, n))
    shifted = np.exp(live - np.repeat(finite_peak, counts)) * signs
    total = np.add.reduceat(shifted, seg)
    with np.errstate(divide="ignore"):
        out_log[present] = np.where(total == 0, -np.inf, np.log(np.abs(total)) + finite_peak)
    out_sign[present] = np.sign(total)
    return out_log, out_sign


def log_degree_sums(eigenvalues, a: float, t_max: int, *, pochhammer: bool = True):
    """``(log|S_t|, sign S_t)`` for ``t = 0..t_max``.

    ``S_t = sum_{kappa |- t} C_kappa(X) / (a)_kappa``; with
    ``pochhammer=False`` the denominator is dropped (then ``S_t = (tr X)^t``
    analytically, computed here through the same zonal machinery).
    """
    x = np.sort(_prepare_eigenvalues(eigenvalues))[::-1]
    if t_max < 0:
        raise DomainError("t_max must be >= 0")
    if len(x) == 0:
        out_log = np.full(t_max + 1, -np.inf)
        out_sign = np.zeros(t_max + 1)
        out_log[0], out_sign[0] = 0.0, 1.0
        return out_log, out_sign
    if pochhammer and len(x) <= 2 and np.all(x > 0):
        x1 = x[0]
        x2 = x[1] if len(x) == 2 else 0.0
        return _log_degree_sums_two(x1, x2, a, t_max)
    scale = float(np.max(np.abs(x)))
    parts, degree, vals = _zonal_all(x / scale, t_max)
    with np.errstate(divide="ignore"):
        lv = np.log(np.abs(vals))
    sv = np.sign(vals)
    if pochhammer:
        lp, sp = _log_pochhammer_array(a, parts)
        lv = lv - lp
        sv = sv * sp
    starts = np.searchsorted(degree, np.arange(t_max + 1))
    out_log, out_sign = _reduce_by_degree(lv, sv, starts, t_max)
    out_log = out_log + np.arange(t_max + 1) * math.log(scale)
    return out_log, out_sign


# ---------------------------------------------------------------------------
# Weighted zonal series
# ---------------------------------------------------------------------------

Weight = Callable[[int, float], "float | SignedLogValue"]


@dataclass(frozen=True)
class SeriesSpec:
    """Inputs of ``sum_t f(t, tr X)/t! sum_kappa C_kappa(X)/(a)_kappa``."""

    a: float
    eigenvalues: tuple
    weight: Weight
    t_max: int = DEFAULT_T_MAX
    tol: float = DEFAULT_TOL
    pochhammer: bool = True

    def __post_init__(self):
        if self.t_max < 0:
            raise DomainError("t_max must be >= 0")


@dataclass(frozen=True)
class SeriesResult:
    value: SignedLogValue
    converged: bool
    stop_degree: int | None  # first degree from which every increment is < tol
    last_increment: float
    log_terms: np.ndarray
    term_signs: np.ndarray


def sum_log_series(log_terms, signs, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Accumulate signed log-space terms in ascending order with convergence bookkeeping.

    The total comes from one signed log-sum-exp; relative increments are taken
    against running partial sums scaled by the largest term, which is exact
    where it matters (the tail) and only coarse for the leading terms.
    """
    log_terms = np.asarray(log_terms, dtype=float)
    signs = np.where(np.isneginf(log_terms), 0.0, np.asarray(signs, dtype=float))
    n = len(log_terms)
    total_log, total_sign = signed_logsumexp(log_terms, signs)
    value = SignedLogValue.from_parts(total_log, total_sign)
    if n == 1 or not np.any(signs):
        return SeriesResult(value, True, 0, 0.0, log_terms, signs)
    if np.all(signs >= 0):
        partial_log = np.logaddexp.accumulate(log_terms)
    else:
        shift = float(np.max(log_terms[signs != 0]))
        with np.errstate(divide="ignore"):
            partial_log = np.log(np.abs(np.cumsum(signs * np.exp(log_terms - shift)))) + shift
    with np.errstate(invalid="ignore", over="ignore"):
        inc = np.where(signs == 0, 0.0, np.exp(log_terms - partial_log))
    inc = np.where(np.isnan(inc), np.inf, inc)
    below = inc < tol
    converged = bool(below[-1])
    stop = None
    if converged:
        stop = n - 1
        while stop > 1 and below[stop - 1]:
            stop -= 1
    return SeriesResult(value, converged, stop, float(inc[-1]), log_terms, signs)


def zonal_series_from_log_weights(
    eigenvalues, a: float, log_w, sign_w, *, tol: float = DEFAULT_TOL, strict: bool = False
) -> SeriesResult:
    """Array form of :func:`weighted_zonal_series`; the weights are given per degree."""
    log_w = np.asarray(log_w, dtype=float)
    t_max = len(log_w) - 1
    log_s, sign_s = log_degree_sums(eigenvalues, a, t_max)
    tt = np.arange(t_max + 1)
    res = sum_log_series(log_w + log_s - gammaln(tt + 1), np.asarray(sign_w) * sign_s, tol)
    if strict and not res.converged:
        raise SeriesNonconvergenceError(
            f"relative increment {res.last_increment:.3g} > tol {tol:g} at t_max={t_max}"
        )
    return res


def weighted_zonal_series(spec: SeriesSpec, *, strict: bool = False) -> SeriesResult:
    """Truncated series ``sum_{t<=t_max} f(t, tr X)/t! sum_{kappa |- t} C_kappa(X)/(a)_kappa``.

    The weight callback may return a float or a :class:`SignedLogValue`.

    Parameters
    ----------
    spec : SeriesSpec
    strict : bool
        Raise :class:`SeriesNonconvergenceError` instead of returning a
        result whose last relative increment exceeds ``spec.tol``.
    """
    x = np.asarray(spec.eigenvalues, dtype=float)
    trace = float(np.sum(x))
    log_s, sign_s = log_degree_sums(x, spec.a, spec.t_max, pochhammer=spec.pochhammer)
    lw = np.empty(spec.t_max + 1)
    sw = np.empty(spec.t_max + 1)
    for t in range(spec.t_max + 1):
        w = spec.weight(t, trace)
        if not isinstance(w, SignedLogValue):
            w = SignedLogValue.from_float(float(w))
        lw[t], sw[t] = w.log_magnitude, w.sign
    tt = np.arange(spec.t_max + 1)
    res = sum_log_series(lw + log_s - gammaln(tt + 1), sw * sign_s, spec.tol)
    if strict and not res.converged:
        raise SeriesNonconvergenceError(
            f"relative increment {res.last_increment:.3g} > tol {spec.tol:g} at t_max={spec.t_max}"
        )
    return res
