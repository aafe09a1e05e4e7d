"""Gaussian-process regression with correlated additive noise.

The model is ``y_i = f(x_i) + e_i`` with ``f ~ GP(mu, K)`` and
``e ~ N(0, V)``. When a synthetic-noise covariance ``Sigma`` is supplied the
responses are read as obfuscated data ``W = Y + Z`` with ``Z ~ N(0, Sigma)``
and every solve uses ``K_XX + V + Sigma``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from . import linalg
from .errors import InvalidInput
from .kernels import KernelSpec, as_points, gram

__all__ = [
    "GPModel",
    "Dataset",
    "PredictiveDistribution",
    "noise_matrix",
    "posterior",
    "log_marginal_likelihood",
    "fit_constant_mean_and_variance",
    "read_csv",
    "write_csv",
]


@dataclass(frozen=True)
class Dataset:
    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = as_points(self.X)
        Y = np.asarray(self.Y, dtype=float).reshape(-1)
        if X.shape[0] < 1 or X.shape[0] != Y.shape[0]:
            raise InvalidInput(f"dataset needs matching X/Y lengths >= 1, got {X.shape[0]} and {Y.shape[0]}")
        if not np.all(np.isfinite(Y)):
            raise InvalidInput("responses must be finite")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def d(self):
        return self.X.shape[1]


def noise_matrix(noise, n):
    """Expand ``noise`` to an ``n x n`` matrix.

    ``noise`` may be ``None`` (zero), a scalar variance, a length-``n`` vector
    of variances, or a full covariance matrix.
    """
    if noise is None:
        return np.zeros((n, n))
    v = np.asarray(noise, dtype=float)
    if v.ndim == 0:
        return float(v) * np.eye(n)
    if v.ndim == 1:
        if v.shape[0] != n:
            raise InvalidInput(f"noise vector has length {v.shape[0]}, expected {n}")
        return np.diag(v)
    if v.shape != (n, n):
        raise InvalidInput(f"noise matrix has shape {v.shape}, expected ({n}, {n})")
    return linalg.as_symmetric(v, "noise covariance")


@dataclass(frozen=True)
class GPModel:
    """Constant-mean GP prior plus an intrinsic-noise covariance.

    Attributes
    ----------
    mean : float
        Constant prior mean ``mu``.
    kernel : KernelSpec
        Prior covariance ``K``.
    noise : scalar, vector, matrix or None
        Intrinsic noise ``V``; see :func:`noise_matrix`.
    degenerate : bool
        Set by :func:`fit_constant_mean_and_variance` when the fitted signal
        variance is zero.
    """

    mean: float
    kernel: KernelSpec
    noise: object = None
    degenerate: bool = False

    def V(self, n):
        return noise_matrix(self.noise, n)

    def to_dict(self):
        if self.noise is None:
            noise = None
        else:
            noise = np.asarray(self.noise, dtype=float).tolist()
        return {"mean": float(self.mean), "kernel": self.kernel.to_dict(), "noise": noise,
                "degenerate": bool(self.degenerate)}

    @classmethod
    def from_dict(cls, data):
        noise = data.get("noise")
        if noise is not None:
            noise = np.asarray(noise, dtype=float)
            if noise.ndim == 0:
                noise = float(noise)
        return cls(float(data["mean"]), KernelSpec.from_dict(data["kernel"]), noise,
                   bool(data.get("degenerate", False)))


@dataclass(frozen=True)
class PredictiveDistribution:
    mean: np.ndarray
    covariance: np.ndarray
    points: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def variance(self):
        return np.diag(self.covariance).copy()

    @property
    def std(self):
        return np.sqrt(np.maximum(self.variance, 0.0))


def _total_cov(model, X, extra_noise):
    n = X.shape[0]
    C = gram(model.kernel, X) + model.V(n)
    if extra_noise is not None:
        S = np.asarray(extra_noise, dtype=float)
        if S.shape != (n, n):
            raise InvalidInput(f"extra noise must be {n}x{n}, got {S.shape}")
        C = C + S
    return linalg.as_symmetric(C)


def posterior(model: GPModel, data: Dataset, X_star, extra_noise=None, jitter=0.0):
    """Predictive mean and covariance at ``X_star``.

    ``mean = mu + K_*X C^{-1} (Y - mu)`` and
    ``cov = K_** - K_*X C^{-1} K_X*`` with ``C = K_XX + V + Sigma``.
    """
    X = data.X
    Xs = as_points(X_star, X.shape[1])
    low = linalg.cholesky(_total_cov(model, X, extra_noise), jitter)
    Kxs = gram(model.kernel, X, Xs)
    A = scipy.linalg.solve_triangular(low, Kxs, lower=True, check_finite=False)
    alpha = scipy.linalg.cho_solve((low, True), data.Y - model.mean, check_finite=False)
    mean = model.mean + Kxs.T @ alpha
    cov = gram(model.kernel, Xs) - A.T @ A
    return PredictiveDistribution(mean, 0.5 * (cov + cov.T), Xs)


def log_marginal_likelihood(model: GPModel, data: Dataset, jitter=0.0) -> float:
    """Log density of ``Y`` under ``N(mu 1, K_XX + V)``."""
    low = linalg.cholesky(_total_cov(model, data.X, None), jitter)
    r = scipy.linalg.solve_triangular(low, data.Y - model.mean, lower=True, check_finite=False)
    n = data.n
    return float(-0.5 * r @ r - np.sum(np.log(np.diag(low))) - 0.5 * n * np.log(2 * np.pi))


def fit_constant_mean_and_variance(X, Y, correlation: KernelSpec, nugget=0.0,
                                   jitter=0.0) -> GPModel:
    """Profile maximum-likelihood estimates of a constant mean and signal variance.

    With ``R`` the unit-amplitude correlation matrix (plus ``nugget * I``)::

        mu  = 1' R^-1 Y / 1' R^-1 1
        s2  = (Y - mu)' R^-1 (Y - mu) / n

    The returned model has kernel ``s2 * correlation`` and intrinsic noise
    ``s2 * nugget * I``. If ``s2`` is zero the model is flagged
    ``degenerate`` instead of raising.
    """
    data = Dataset(X, Y)
    if data.n < 2:
        raise InvalidInput("need at least two observations to fit")
    if abs(correlation.amplitude - 1.0) > 1e-12:
        raise InvalidInput("correlation kernel must have unit amplitude")
    if nugget < 0:
        raise InvalidInput("nugget must be non-negative")
    R = gram(correlation, data.X) + nugget * np.eye(data.n)
    low = linalg.cholesky(R, jitter)
    ones = np.ones(data.n)
    Ri1 = scipy.linalg.cho_solve((low, True), ones, check_finite=False)
    mu = float(Ri1 @ data.Y / (Ri1 @ ones))
    resid = data.Y - mu
    s2 = float(resid @ scipy.linalg.cho_solve((low, True), resid, check_finite=False) / data.n)
    degenerate = s2 <= 1e-14 * max(1.0, float(np.max(np.abs(data.Y))) ** 2)
    if degenerate:
        s2 = 0.0
    noise = s2 * nugget if nugget else None
    return GPModel(mu, correlation.rescaled(s2), noise, degenerate)


def read_csv(path) -> Dataset:
    """Read a dataset CSV with header ``x_1,...,x_d,y``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise InvalidInput(f"{path}: empty dataset file")
    header = [h.strip() for h in rows[0]]
    if not header or header[-1] != "y" or any(h != f"x_{i + 1}" for i, h in enumerate(header[:-1])):
        raise InvalidInput(f"{path}: expected header x_1,...,x_d,y, got {header}")
    body = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    if body.ndim != 2 or body.shape[1] != len(header):
        raise InvalidInput(f"{path}: ragged rows")
    return Dataset(body[:, :-1], body[:, -1])


def write_csv(path, data: Dataset):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x_{i + 1}" for i in range(data.d)] + ["y"])
        for x, y in zip(data.X, data.Y):
            w.writerow([repr(float(v)) for v in x] + [repr(float(y))])
