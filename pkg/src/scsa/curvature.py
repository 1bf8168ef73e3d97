"""Discrete curvature of sampled signals and its expectation under noise."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import InvalidParams
from .signal import as_array

MIN_MC_SAMPLES = 100_000


@dataclass(frozen=True, eq=False)
class CurvatureProfile:
    """Curvature ``k_m`` at the interior samples ``m = 1 .. N-2`` (0-based)."""

    values: np.ndarray
    delta: float

    @property
    def total(self) -> float:
        return float(self.values.sum())


def _curvature_from_differences(x, w, delta):
    return np.abs(x - w) / (delta**2 * (1.0 + (x + w) ** 2 / (4.0 * delta**2)) ** 1.5)


def discrete_curvature(y, delta: float | None = None) -> CurvatureProfile:
    """Three-point curvature estimate at every interior sample.

    With forward and backward differences ``x_m = y[m+1] - y[m]`` and
    ``w_m = y[m] - y[m-1]``::

        k_m = |x_m - w_m| / (delta^2 * (1 + (x_m + w_m)^2 / (4 delta^2))^(3/2))

    which is ``|y''| / (1 + y'^2)^(3/2)`` with central differences.

    Parameters
    ----------
    y : Signal or array_like
        Samples; at least 3.
    delta : float, optional
        Sampling interval when ``y`` is a plain array (default 1).
    """
    arr, d = as_array(y, delta, min_len=3)
    diff = np.diff(arr)
    return CurvatureProfile(_curvature_from_differences(diff[1:], diff[:-1], d), d)


def total_curvature(y, delta: float | None = None) -> float:
    return discrete_curvature(y, delta).total


@dataclass(frozen=True)
class NoiseModelParams:
    """Jointly Gaussian, zero-mean model of adjacent first differences.

    ``sigma`` is the standard deviation of each difference and ``rho`` the
    correlation between the forward and backward difference at a sample.
    """

    sigma: float
    rho: float = 0.0
    delta: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise InvalidParams(f"sigma must be positive, got {self.sigma}")
        if not abs(self.rho) < 1:
            raise InvalidParams(f"|rho| must be < 1, got {self.rho}")
        if not (np.isfinite(self.delta) and self.delta > 0):
            raise InvalidParams(f"delta must be positive, got {self.delta}")

    @classmethod
    def from_white_noise(cls, sigma_noise: float, delta: float = 1.0) -> NoiseModelParams:
        # iid noise: var(x) = 2 s^2 and cov(x, w) = -s^2
        return cls(sigma=np.sqrt(2.0) * sigma_noise, rho=-0.5, delta=delta)

    @property
    def covariance(self) -> np.ndarray:
        s2 = self.sigma**2
        return np.array([[s2, self.rho * s2], [self.rho * s2, s2]])


def expected_curvature(p: NoiseModelParams) -> float:
    """Closed-form mean of ``k_m`` for jointly Gaussian differences.

    ``E[k] = 4/(pi delta) sqrt((1-rho)/(1+rho)) * I`` with
    ``I = int_0^inf (1+eta^2)^(-3/2) exp(-delta^2 eta^2 / (sigma^2 (1+rho))) d eta``.
    ``I`` is integrated over ``theta`` in ``[0, pi/2]`` after ``eta = tan(theta)``,
    where the integrand becomes ``cos(theta) exp(-c tan^2(theta))``.
    """
    if not isinstance(p, NoiseModelParams):
        raise InvalidParams("expected NoiseModelParams")
    c = p.delta**2 / (p.sigma**2 * (1.0 + p.rho))

    def integrand(theta):
        tan = np.tan(theta)
        return np.cos(theta) * np.exp(-c * tan * tan)

    # split where the Gaussian factor has decayed so a narrow spike at 0 is resolved
    split = np.arctan(6.0 / np.sqrt(c))
    value = sum(
        integrate.quad(integrand, a, b, epsabs=1e-10, epsrel=1e-10, limit=200)[0]
        for a, b in ((0.0, split), (split, np.pi / 2))
    )
    prefactor = 4.0 / (np.pi * p.delta) * np.sqrt((1.0 - p.rho) / (1.0 + p.rho))
    return float(prefactor * value)


def mc_expected_curvature(p: NoiseModelParams, n_samples: int = 1_000_000, seed: int = 0) -> float:
    """Monte-Carlo estimate of ``E[k_m]`` by sampling the differences directly.

    Draws ``(x, w)`` from the bivariate normal via the Cholesky factor of
    its covariance and averages the discrete curvature formula.
    """
    if n_samples < MIN_MC_SAMPLES:
        raise InvalidParams(f"n_samples must be >= {MIN_MC_SAMPLES}, got {n_samples}")
    rng = np.random.default_rng(seed)
    chol = np.linalg.cholesky(p.covariance)
    z = rng.standard_normal((int(n_samples), 2))
    xw = z @ chol.T
    k = _curvature_from_differences(xw[:, 0], xw[:, 1], p.delta)
    return float(k.mean())
