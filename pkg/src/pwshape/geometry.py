"""Landmarks to pseudo-Wishart shape coordinates.

Pipeline: ``Y = L X Theta^(-1/2)`` (Helmert reduction and whitening),
``V = Y Y'``, size ``r``, shape ``W = V / r``, polar angles ``u`` of the
vector of independent elements of ``V``, ``log J(u)`` and ``log|W*|``.

Two size conventions are supported.  ``scale="frobenius"`` takes
``r = sqrt(tr V^2)``; ``scale="chart"`` takes ``r`` as the Euclidean norm of
``vecw V``, the radius of the polar chart itself.  The angles are the same
under both; only ``W`` (hence ``tr W``, ``|W*|``) differs, by a factor that
depends on the specimen alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    NotPositiveDefiniteError,
    RankDeficientError,
    SingularBlockError,
)

RANK_TOL = 1e-10
SCALES = ("frobenius", "chart")
VSTAR_MODES = ("cholesky", "spectral")


@dataclass
class LandmarkConfig:
    """One specimen: ``N`` landmarks in ``K`` dimensions."""

    X: np.ndarray
    specimen_id: str = ""
    group: str = ""

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        if self.X.ndim != 2:
            raise DomainError("landmark matrix must be 2-D")
        N, K = self.X.shape
        if N < 3 or K < 2 or N <= K:
            raise DomainError(f"need N >= 3, K >= 2 and N > K, got N={N}, K={K}")
        if not np.all(np.isfinite(self.X)):
            raise DomainError(f"non-finite coordinate in specimen {self.specimen_id!r}")

    @property
    def N(self) -> int:
        return self.X.shape[0]

    @property
    def K(self) -> int:
        return self.X.shape[1]


def shape_counts(N: int, K: int) -> tuple:
    """``(n, m)`` with ``n = min(N-1, K)`` and ``m + 1`` independent elements of ``V``."""
    n = min(N - 1, K)
    m = (N - 1) * K - n * K + n * (n + 1) // 2 - 1
    return n, m


def helmert_submatrix(N: int) -> np.ndarray:
    """Rows ``(1, ..., 1, -i, 0, ..., 0) / sqrt(i (i + 1))`` for ``i = 1..N-1``."""
    if N < 2:
        raise DomainError("Helmert submatrix needs N >= 2")
    L = np.zeros((N - 1, N))
    for i in range(1, N):
        L[i - 1, :i] = 1.0
        L[i - 1, i] = -i
        L[i - 1] /= math.sqrt(i * (i + 1))
    return L


def _check_symmetric(A: np.ndarray, name: str) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"{name} must be square")
    if not np.allclose(A, A.T, rtol=1e-12, atol=1e-14 * np.max(np.abs(A), initial=1.0)):
        raise DomainError(f"{name} must be symmetric")
    return (A + A.T) / 2


def sqrt_pd(theta) -> np.ndarray:
    """Symmetric positive definite square root."""
    theta = _check_symmetric(theta, "Theta")
    lam, Q = np.linalg.eigh(theta)
    if lam[0] <= 0:
        raise NotPositiveDefiniteError(f"smallest eigenvalue {lam[0]:.3g} <= 0")
    return (Q * np.sqrt(lam)) @ Q.T


def inv_sqrt_pd(theta) -> np.ndarray:
    theta = _check_symmetric(theta, "Theta")
    lam, Q = np.linalg.eigh(theta)
    if lam[0] <= 0:
        raise NotPositiveDefiniteError(f"smallest eigenvalue {lam[0]:.3g} <= 0")
    return (Q / np.sqrt(lam)) @ Q.T


def preshape(cfg, theta=None) -> np.ndarray:
    """``Y = L X Theta^(-1/2)``; ``cfg`` may be a :class:`LandmarkConfig` or an array."""
    X = cfg.X if isinstance(cfg, LandmarkConfig) else np.asarray(cfg, dtype=float)
    N, K = X.shape
    Y = helmert_submatrix(N) @ X
    if theta is None:
        return Y
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (K, K):
        raise DomainError(f"Theta must be {K}x{K}, got {theta.shape}")
    return Y @ inv_sqrt_pd(theta)


# ---------------------------------------------------------------------------
# vecw and the polar chart
# ---------------------------------------------------------------------------


def _vecw_index(N: int, n: int):
    rows, cols = [], []
    for j in range(n):
        for i in range(j + 1):
            rows.append(i)
            cols.append(j)
    for j in range(n, N - 1):
        for i in range(n):
            rows.append(i)
            cols.append(j)
    return np.array(rows, dtype=int), np.array(cols, dtype=int)


def vecw(V: np.ndarray, n: int) -> np.ndarray:
    """Independent elements of ``V``: upper triangle of ``V11`` then ``V12``, column by column."""
    V = np.asarray(V, dtype=float)
    rows, cols = _vecw_index(V.shape[0] + 1, n)
    return V[rows, cols]


def unvecw(w: np.ndarray, N: int, n: int) -> np.ndarray:
    """Rebuild ``V`` from ``vecw V``, completing ``V22 = V21 V11^(-1) V12``."""
    w = np.asarray(w, dtype=float)
    rows, cols = _vecw_index(N, n)
    if len(w) != len(rows):
        raise DomainError(f"expected {len(rows)} independent elements, got {len(w)}")
    V = np.zeros((N - 1, N - 1))
    V[rows, cols] = w
    V[cols, rows] = w
    if n < N - 1:
        V11 = V[:n, :n]
        V12 = V[:n, n:]
        V[n:, n:] = V12.T @ np.linalg.solve(V11, V12)
    return V


def angles_to_unit_vector(u) -> tuple:
    """Spherical chart: ``(w, log J(u))`` with ``J(u) = prod sin^(m-i) theta_i``."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    m = len(u)
    if m == 0:
        return np.array([1.0]), 0.0
    # closed ranges: boundary angles come back from the inverse map
    if np.any(u[:-1] < 0) or np.any(u[:-1] > math.pi) or u[-1] < 0 or u[-1] > 2 * math.pi:
        raise DomainError("angles outside [0, pi]^(m-1) x [0, 2 pi]")
    w = np.empty(m + 1)
    s = 1.0
    for i in range(m):
        w[i] = s * math.cos(u[i])
        s *= math.sin(u[i])
    w[m] = s
    return w, log_jacobian(u)


def log_jacobian(u) -> float:
    u = np.atleast_1d(np.asarray(u, dtype=float))
    m = len(u)
    powers = m - np.arange(1, m + 1)
    sines = np.abs(np.sin(u[powers > 0]))
    with np.errstate(divide="ignore"):
        return float(np.sum(powers[powers > 0] * np.log(sines)))


def unit_vector_to_angles(w) -> np.ndarray:
    """Inverse of :func:`angles_to_unit_vector` (``w`` is normalised first)."""
    w = np.asarray(w, dtype=float)
    norm = np.linalg.norm(w)
    if norm == 0:
        raise DomainError("zero vector has no direction")
    w = w / norm
    m = len(w) - 1
    u = np.empty(m)
    # tails[i] = ||w[i:]||, accumulated from the end to avoid cancellation
    tails = np.sqrt(np.cumsum(w[::-1] ** 2))[::-1]
    for i in range(m - 1):
        u[i] = math.atan2(tails[i + 1], w[i])
    if m >= 1:
        last = math.atan2(w[m], w[m - 1])
        u[m - 1] = last if last > 0 else last + 2 * math.pi
    return u


# ---------------------------------------------------------------------------
# Shape coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PseudoWishartShape:
    """Shape coordinates of one specimen."""

    V: np.ndarray
    r: float
    chart_radius: float
    W: np.ndarray
    u: np.ndarray
    log_jacobian: float
    log_det_wstar: float
    n: int
    m: int
    N: int
    K: int
    scale: str = "frobenius"
    vstar: str = "cholesky"
    specimen_id: str = ""
    Y: np.ndarray | None = field(default=None, repr=False)

    @property
    def trace_w(self) -> float:
        return float(np.trace(self.W))

    @property
    def M(self) -> int:
        return (self.N - 1) * self.K


def log_det_vstar(V: np.ndarray, n: int, mode: str = "cholesky") -> float:
    """``log|V*|``: leading ``n x n`` block (cholesky) or product of the ``n`` positive eigenvalues."""
    if mode == "cholesky":
        V11 = V[:n, :n]
        sign, logdet = np.linalg.slogdet(V11)
        if sign <= 0 or logdet <= math.log(1e-300):
            raise SingularBlockError(f"|V11| is not positive (log det {logdet:.3g})")
        return float(logdet)
    if mode == "spectral":
        d = np.linalg.eigvalsh(V)[::-1][:n]
        if d[-1] <= 0:
            raise RankDeficientError("fewer than n positive eigenvalues")
        return float(np.sum(np.log(d)))
    raise DomainError(f"unknown V* mode {mode!r}")


def w_star_logdet(shape: PseudoWishartShape, mode: str | None = None) -> float:
    """``log|W*|`` with ``W* = V*/r``."""
    mode = mode or shape.vstar
    return log_det_vstar(shape.V, shape.n, mode) - shape.n * math.log(shape.r)


def _shape_from_V(V, N, K, *, vstar, scale, specimen_id, Y=None) -> PseudoWishartShape:
    if scale not in SCALES:
        raise DomainError(f"unknown scale {scale!r}")
    if vstar not in VSTAR_MODES:
        raise DomainError(f"unknown V* mode {vstar!r}")
    n, m = shape_counts(N, K)
    w = vecw(V, n)
    chart_radius = float(np.linalg.norm(w))
    r_frob = float(np.linalg.norm(V))
    r = r_frob if scale == "frobenius" else chart_radius
    u = unit_vector_to_angles(w)
    shape = PseudoWishartShape(
        V=V,
        r=r,
        chart_radius=chart_radius,
        W=V / r,
        u=u,
        log_jacobian=log_jacobian(u),
        log_det_wstar=log_det_vstar(V, n, vstar) - n * math.log(r),
        n=n,
        m=m,
        N=N,
        K=K,
        scale=scale,
        vstar=vstar,
        specimen_id=specimen_id,
        Y=Y,
    )
    return shape


def pw_coordinates(
    Y, *, vstar: str = "cholesky", scale: str = "frobenius", specimen_id: str = ""
) -> PseudoWishartShape:
    """Pseudo-Wishart shape coordinates of a preshape ``Y`` ((N-1) x K)."""
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 2:
        raise DomainError("preshape must be 2-D")
    N, K = Y.shape[0] + 1, Y.shape[1]
    n, _ = shape_counts(N, K)
    sv = np.linalg.svd(Y, compute_uv=False)
    if sv[0] == 0 or sv[n - 1] <= RANK_TOL * sv[0]:
        raise RankDeficientError(
            f"specimen {specimen_id!r}: preshape rank < {n} (singular values {sv})"
        )
    V = Y @ Y.T
    V = (V + V.T) / 2
    return _shape_from_V(V, N, K, vstar=vstar, scale=scale, specimen_id=specimen_id, Y=Y)


def shape_from_landmarks(cfg: LandmarkConfig, theta=None, **kw) -> PseudoWishartShape:
    kw.setdefault("specimen_id", cfg.specimen_id)
    return pw_coordinates(preshape(cfg, theta), **kw)


def shape_from_angles(
    u, N: int, K: int, *, vstar: str = "cholesky", scale: str = "frobenius", specimen_id: str = ""
) -> PseudoWishartShape:
    """Shape at chart point ``u`` (``V`` has unit chart radius).

    Raises :class:`DomainError` when the point lies outside the PSD cone.
    """
    n, m = shape_counts(N, K)
    u = np.asarray(u, dtype=float)
    if len(u) != m:
        raise DomainError(f"expected {m} angles, got {len(u)}")
    w, _ = angles_to_unit_vector(u)
    V = unvecw(w, N, n)
    lam = np.linalg.eigvalsh(V[:n, :n])
    if lam[0] <= 0:
        raise DomainError("chart point outside the positive semidefinite cone")
    return _shape_from_V(V, N, K, vstar=vstar, scale=scale, specimen_id=specimen_id)


def procrustes_distance(A, B, *, center: bool = False) -> float:
    """Full Procrustes distance between configurations, reflections allowed.

    Inputs are taken as preshapes (already translation free) unless
    ``center=True``.  Both are scaled to unit Frobenius norm and the result is
    ``sqrt(1 - (sum of singular values of A'B)^2)``.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise DomainError("configurations differ in size")
    if center:
        A = A - A.mean(axis=0)
        B = B - B.mean(axis=0)
    A = A / np.linalg.norm(A)
    B = B / np.linalg.norm(B)
    s = np.linalg.svd(A.T @ B, compute_uv=False).sum()
    return math.sqrt(max(0.0, 1.0 - min(s, 1.0) ** 2))
