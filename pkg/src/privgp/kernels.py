"""Stationary covariance kernels, Gram matrices and Fourier transforms.

Two families are provided:

``sqexp``
    ``K(x, y) = c * exp(-theta * ||x - y||^2)``
``scaled``
    ``H = alpha * base`` for another kernel ``base``; ``0 <= alpha < 1``.

Fourier transforms use the unitary convention
``f~(w) = (2 pi)^(-d/2) * int f(x) exp(-i w.x) dx``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInput

__all__ = [
    "KernelSpec",
    "Validity",
    "sqexp",
    "scaled",
    "as_points",
    "evaluate",
    "gram",
    "fourier",
    "validate_pair",
    "validate_pair_numeric",
    "validity_region",
]

FAMILIES = ("sqexp", "scaled")


@dataclass(frozen=True)
class KernelSpec:
    """A stationary kernel.

    For ``family="sqexp"`` the fields ``c``, ``theta`` and ``d`` are used.
    For ``family="scaled"`` the kernel is ``alpha * base``.
    """

    family: str = "sqexp"
    c: float = 1.0
    theta: float = 1.0
    d: int = 1
    alpha: float = 0.0
    base: Optional["KernelSpec"] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInput(f"unknown kernel family {self.family!r}")
        if self.family == "sqexp":
            if not (np.isfinite(self.c) and self.c >= 0):
                raise InvalidInput("kernel amplitude c must be >= 0")
            if not (np.isfinite(self.theta) and self.theta > 0):
                raise InvalidInput("inverse lengthscale theta must be > 0")
            if int(self.d) != self.d or self.d < 1:
                raise InvalidInput("dimension d must be a positive integer")
        else:
            if self.base is None:
                raise InvalidInput("scaled kernel needs a base kernel")
            if not (0.0 <= self.alpha < 1.0):
                raise InvalidInput("scale alpha must lie in [0, 1)")

    @property
    def dim(self) -> int:
        return self.d if self.family == "sqexp" else self.base.dim

    @property
    def amplitude(self) -> float:
        """Value at zero lag, ``K(x, x)``."""
        if self.family == "sqexp":
            return float(self.c)
        return self.alpha * self.base.amplitude

    def flatten(self):
        """Return ``(c, theta)`` of the equivalent squared-exponential kernel."""
        if self.family == "sqexp":
            return float(self.c), float(self.theta)
        c, theta = self.base.flatten()
        return self.alpha * c, theta

    def rescaled(self, factor: float) -> "KernelSpec":
        """Kernel multiplied by a non-negative constant."""
        if self.family == "sqexp":
            return KernelSpec("sqexp", c=self.c * factor, theta=self.theta, d=self.d)
        return KernelSpec("scaled", alpha=self.alpha, base=self.base.rescaled(factor))

    def __call__(self, x, y):
        return evaluate(self, x, y)

    def to_dict(self) -> dict:
        if self.family == "sqexp":
            return {"family": "sqexp", "c": float(self.c), "theta": float(self.theta),
                    "d": int(self.d)}
        return {"family": "scaled", "alpha": float(self.alpha), "base": self.base.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "KernelSpec":
        family = data.get("family")
        if family == "sqexp":
            return cls("sqexp", c=float(data.get("c", 1.0)), theta=float(data["theta"]),
                       d=int(data.get("d", 1)))
        if family == "scaled":
            return cls("scaled", alpha=float(data["alpha"]), base=cls.from_dict(data["base"]))
        raise InvalidInput(f"unknown kernel family {family!r}")


def sqexp(theta, c=1.0, d=1):
    return KernelSpec("sqexp", c=c, theta=theta, d=d)


def scaled(base, alpha):
    return KernelSpec("scaled", alpha=alpha, base=base)


def as_points(points, d=None):
    """Coerce a point list to an ``(m, d)`` float array.

    A flat sequence is read as ``m`` one-dimensional points when ``d`` is 1 or
    unknown.
    """
    p = np.asarray(points, dtype=float)
    if p.ndim == 0:
        p = p.reshape(1, 1)
    elif p.ndim == 1:
        p = p.reshape(-1, 1) if d in (None, 1) else p.reshape(1, -1)
    if p.ndim != 2:
        raise InvalidInput(f"points must be a 2-D array, got shape {p.shape}")
    if d is not None and p.shape[1] != d:
        raise InvalidInput(f"dimension mismatch: expected d={d}, got {p.shape[1]}")
    if not np.all(np.isfinite(p)):
        raise InvalidInput("points must be finite")
    return p


def _sq_dist(p, q):
    diff = p[:, None, :] - q[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def evaluate(spec: KernelSpec, x, y) -> float:
    """Kernel value ``K(x, y)`` for two single points."""
    px = as_points(x, spec.dim)
    py = as_points(y, spec.dim)
    if px.shape[0] != 1 or py.shape[0] != 1:
        raise InvalidInput("evaluate takes single points; use gram for point lists")
    return float(gram(spec, px, py)[0, 0])


def gram(spec: KernelSpec, P, Q=None) -> np.ndarray:
    """Matrix ``(K(p_i, q_j))_ij``; ``Q`` defaults to ``P``."""
    p = as_points(P, spec.dim)
    q = p if Q is None else as_points(Q, spec.dim)
    c, theta = spec.flatten()
    out = c * np.exp(-theta * _sq_dist(p, q))
    if Q is None:
        out = 0.5 * (out + out.T)
    return out


def fourier(spec: KernelSpec, omega) -> np.ndarray:
    """Fourier transform of the stationary profile, ``c (2 theta)^(-d/2) exp(-|w|^2 / (4 theta))``.

    ``omega`` may be a single frequency vector or an ``(m, d)`` array; a scalar
    or 1-D array is read as radial frequencies ``|w|``.
    """
    c, theta = spec.flatten()
    d = spec.dim
    w = np.asarray(omega, dtype=float)
    if w.ndim == 2:
        if w.shape[1] != d:
            raise InvalidInput("frequency dimension mismatch")
        r2 = np.sum(w * w, axis=1)
    else:
        r2 = w * w
    return c * (2.0 * theta) ** (-d / 2.0) * np.exp(-r2 / (4.0 * theta))


@dataclass(frozen=True)
class Validity:
    valid: bool
    reason: str = ""

    def __bool__(self):
        return self.valid


def validity_region(c, theta, theta0, d):
    """Closed-form membership test of ``(c, theta)`` for ``H = c exp(-theta r^2)``
    against ``K = exp(-theta0 r^2)``."""
    return 0.0 <= c < 1.0 and c ** (2.0 / d) * theta0 <= theta <= theta0


def validate_pair(K: KernelSpec, H: KernelSpec) -> Validity:
    """Check that ``K - H`` is a positive definite kernel.

    Uses exact closed forms: a scaled copy ``alpha * K`` is valid iff
    ``0 <= alpha < 1``; a squared-exponential ``H`` is valid iff its
    amplitude relative to ``K`` is ``c < 1`` and
    ``c^(2/d) theta0 <= theta <= theta0``.
    """
    if K.dim != H.dim:
        return Validity(False, f"dimension mismatch ({K.dim} vs {H.dim})")
    if H.family == "scaled" and H.base == K:
        if 0.0 <= H.alpha < 1.0:
            return Validity(True)
        return Validity(False, "scale alpha must lie in [0, 1)")

    c_k, theta0 = K.flatten()
    c_h, theta = H.flatten()
    if c_k <= 0:
        return Validity(False, "base kernel has zero amplitude")
    c = c_h / c_k
    d = K.dim
    if c >= 1.0:
        return Validity(False, f"relative amplitude c={c:g} must be < 1 (c = 1 is excluded)")
    if theta > theta0:
        return Validity(False, f"theta={theta:g} exceeds theta0={theta0:g}")
    lower = c ** (2.0 / d) * theta0
    if theta < lower:
        return Validity(False, f"theta={theta:g} below c^(2/d) * theta0 = {lower:g}")
    return Validity(True)


def validate_pair_numeric(K: KernelSpec, H: KernelSpec, omega_max=None, num=4001) -> Validity:
    """Sampled check that ``K~(w) - H~(w) >= 0`` on a radial frequency grid.

    Only a necessary condition evaluated on finitely many frequencies; it is a
    fallback for kernel families without a closed-form region.
    """
    if K.dim != H.dim:
        return Validity(False, "dimension mismatch")
    if omega_max is None:
        _, theta0 = K.flatten()
        _, theta = H.flatten()
        # push out to where the wider spectrum underflows
        omega_max = np.sqrt(4.0 * max(theta0, theta) * 700.0)
    w = np.linspace(0.0, omega_max, num)
    fk = fourier(K, w)
    fh = fourier(H, w)
    live = (fk > 0) | (fh > 0)
    gap = fk - fh
    bad = live & (gap < -1e-12 * np.maximum(fk, fh))
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        return Validity(False, f"H~ exceeds K~ at |w| = {w[k]:.4g}")
    if np.all(gap <= 0):
        return Validity(False, "K~ - H~ vanishes identically on the grid")
    return Validity(True)
