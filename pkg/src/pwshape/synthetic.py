"""Simulated landmark data under the isotropic Gaussian model."""

from __future__ import annotations

import math

import numpy as np

from .geometry import LandmarkConfig, helmert_submatrix

# six-point outline roughly the size of a digitised vertebra, in arbitrary units
VERTEBRA_TEMPLATE = np.array(
    [[0.0, 60.0], [40.0, 30.0], [35.0, -20.0], [0.0, -50.0], [-35.0, -20.0], [-40.0, 30.0]]
)


def random_rotation(K: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed element of SO(K)."""
    Q, R = np.linalg.qr(rng.standard_normal((K, K)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def simulate_preshapes(mu: np.ndarray, sigma2: float, n: int, rng: np.random.Generator) -> list:
    """``n`` draws of ``Y = mu + sigma Z`` with iid standard normal ``Z``."""
    mu = np.asarray(mu, dtype=float)
    s = math.sqrt(sigma2)
    return [mu + s * rng.standard_normal(mu.shape) for _ in range(n)]


def simulate_landmarks(mean_landmarks, sigma2: float, n: int, seed: int, *, group: str = "sim",
                       rotate: bool = False) -> list:
    """Landmark configurations whose preshapes are isotropic Gaussian around ``L mean``.

    Each specimen is shifted by a random translation.  ``rotate`` also
    applies a random rotation and scale; shapes are unchanged but the mean
    preshape is then a poor starting point for fitting.
    """
    X0 = np.asarray(mean_landmarks, dtype=float)
    N, K = X0.shape
    L = helmert_submatrix(N)
    rng = np.random.default_rng(seed)
    out = []
    for i, Y in enumerate(simulate_preshapes(L @ X0, sigma2, n, rng)):
        X = L.T @ Y
        if rotate:
            X = rng.uniform(0.5, 2.0) * X @ random_rotation(K, rng)
        X = X + rng.normal(0.0, 10.0, K)
        out.append(LandmarkConfig(X, specimen_id=f"{group}{i + 1:02d}", group=group))
    return out


def two_group_fixture(seed: int = 20240601, n: int = 23, sigma2: float = 50.0) -> list:
    """Two groups of six-landmark outlines, ``large`` slightly wider than ``small``."""
    small = VERTEBRA_TEMPLATE * 0.5
    large = VERTEBRA_TEMPLATE * np.array([0.56, 0.5])
    return (
        simulate_landmarks(small, sigma2, n, seed, group="small")
        + simulate_landmarks(large, sigma2, n, seed + 1, group="large")
    )
