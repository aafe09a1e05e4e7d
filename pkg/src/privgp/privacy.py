"""Synthetic-noise covariances that enforce predictive-variance floors.

Every formulation reduces to "find the smallest-trace ``Sigma >= 0`` that
dominates one or more matrices ``B``", where ``K_XX + V + Sigma >= B`` is the
Schur-complement form of a variance floor at the sensitive inputs:

* one sensitive input ``s`` with tolerance ``xi``:
  ``B = (K_ss - xi)^-1 K_Xs K_sX - K_XX - V`` and ``Sigma = B+``;
* several inputs with per-point tolerances (weak): one ``B_i`` per input,
  solved as an SDP;
* several inputs with a target covariance ``Xi`` (strong):
  ``B = K_XS (K_SS - Xi)^-1 K_SX - K_XX - V`` and ``Sigma = B+``;
* per-point tolerances with ``Sigma`` forced diagonal: SDP;
* a privacy kernel ``H`` over a region ``S``: ``Sigma = (G(S) - K_XX - V)+``
  where ``G(S)_ij`` is the inner product of ``K(., x_i)`` and ``K(., x_j)`` in
  the RKHS of ``K - H`` restricted to ``S``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.integrate
import scipy.linalg
import scipy.special

from . import linalg, sdp
from .errors import InvalidInput, InvalidTolerance, InvalidXi, NotIntegrable, NotPositiveDefinite
from .gp import GPModel, noise_matrix
from .kernels import KernelSpec, as_points, fourier, gram, scaled, validate_pair

__all__ = [
    "Provenance",
    "IllConditionedWarning",
    "SensitiveRegion",
    "PrivacySpec",
    "NoiseCovariance",
    "GramG",
    "PrivacyCheck",
    "single_dominated",
    "single_sensitive_noise",
    "weak_noise",
    "strong_noise",
    "diagonal_noise",
    "gram_g_finite",
    "gram_g_grid",
    "gram_g_uniform_stationary",
    "noise_from_gram",
    "kernel_noise",
    "compute_noise",
    "check_privacy",
]

COND_LIMIT = 1e12


class IllConditionedWarning(UserWarning):
    """``K_SS - H_SS`` was too ill-conditioned to invert without jitter."""


class Provenance(str, enum.Enum):
    SINGLE_CLOSED_FORM = "SingleClosedForm"
    WEAK_SDP = "WeakSdp"
    STRONG_CLOSED_FORM = "StrongClosedForm"
    DIAGONAL_SDP = "DiagonalSdp"
    KERNEL_FINITE = "KernelFinite"
    KERNEL_GRID = "KernelGrid"
    KERNEL_UNIFORM = "KernelUniform"


@dataclass(frozen=True)
class SensitiveRegion:
    """Where a privacy kernel applies.

    ``kind`` is one of ``"points"`` (explicit finite set), ``"grid"`` (one or
    more axis-aligned boxes sampled on a regular grid) or ``"whole"``.
    ``points`` is a sequence of per-axis point counts for a grid; the last
    entry is the working resolution, earlier ones feed the refinement
    diagnostic.
    """

    kind: str
    points_list: Optional[np.ndarray] = None
    boxes: tuple = ()
    points: tuple = ()

    def __post_init__(self):
        if self.kind not in ("points", "grid", "whole"):
            raise InvalidInput(f"unknown region type {self.kind!r}")
        if self.kind == "points":
            pts = as_points(self.points_list)
            if len(np.unique(pts, axis=0)) != len(pts):
                raise InvalidInput("sensitive points must be distinct")
            object.__setattr__(self, "points_list", pts)
        if self.kind == "grid":
            boxes = tuple((np.atleast_1d(np.asarray(lo, float)), np.atleast_1d(np.asarray(hi, float)))
                          for lo, hi in self.boxes)
            if not boxes:
                raise InvalidInput("grid region needs at least one box")
            for lo, hi in boxes:
                if lo.shape != hi.shape or np.any(hi < lo) or not np.all(np.isfinite(hi)):
                    raise InvalidInput("grid boxes need finite lo <= hi of equal dimension")
            res = tuple(int(p) for p in np.atleast_1d(self.points))
            if not res or min(res) < 1:
                raise InvalidInput("grid resolution must be a positive point count")
            object.__setattr__(self, "boxes", boxes)
            object.__setattr__(self, "points", res)

    @classmethod
    def finite(cls, pts):
        return cls("points", points_list=pts)

    @classmethod
    def grid(cls, lo, hi, points):
        return cls("grid", boxes=((lo, hi),), points=points)

    @classmethod
    def whole(cls):
        return cls("whole")

    def grid_points(self, resolution=None):
        """Points of the grid at ``resolution`` points per axis (default: finest)."""
        if self.kind == "points":
            return self.points_list
        if self.kind != "grid":
            raise InvalidInput("the whole space has no finite point set")
        m = self.points[-1] if resolution is None else int(resolution)
        chunks = []
        for lo, hi in self.boxes:
            axes = [np.linspace(a, b, m) if b > a else np.array([a]) for a, b in zip(lo, hi)]
            mesh = np.meshgrid(*axes, indexing="ij")
            chunks.append(np.stack([g.reshape(-1) for g in mesh], axis=1))
        pts = np.concatenate(chunks)
        return np.unique(pts, axis=0)

    def to_dict(self):
        if self.kind == "points":
            return {"type": "points", "points": self.points_list.tolist()}
        if self.kind == "whole":
            return {"type": "whole"}
        boxes = [{"lo": lo.tolist(), "hi": hi.tolist()} for lo, hi in self.boxes]
        pts = list(self.points) if len(self.points) > 1 else self.points[0]
        if len(boxes) == 1:
            return {"type": "grid", **boxes[0], "points": pts}
        return {"type": "grid", "boxes": boxes, "points": pts}

    @classmethod
    def from_dict(cls, data):
        kind = data.get("type")
        if kind == "points":
            return cls.finite(data["points"])
        if kind == "whole":
            return cls.whole()
        if kind == "grid":
            if "boxes" in data:
                boxes = [(b["lo"], b["hi"]) for b in data["boxes"]]
            else:
                boxes = [(data["lo"], data["hi"])]
            return cls("grid", boxes=tuple(boxes), points=data.get("points", 33))
        raise InvalidInput(f"unknown region type {kind!r}")


@dataclass(frozen=True)
class PrivacySpec:
    """Privacy requirement attached to a release.

    ``variant`` is ``"single"``, ``"weak"``, ``"strong"``, ``"diagonal"`` or
    ``"kernel"``. For the kernel variant either ``H`` is given explicitly or
    ``H_alpha`` is set, meaning ``H = H_alpha * K`` for the model kernel.
    """

    variant: str
    S: Optional[np.ndarray] = None
    xi: Optional[np.ndarray] = None
    Xi: Optional[np.ndarray] = None
    H: Optional[KernelSpec] = None
    H_alpha: Optional[float] = None
    region: Optional[SensitiveRegion] = None

    def __post_init__(self):
        v = self.variant
        if v in ("single", "weak", "diagonal"):
            S = as_points(self.S)
            xi = np.atleast_1d(np.asarray(self.xi, dtype=float))
            if v == "single" and S.shape[0] != 1:
                raise InvalidInput("single variant takes exactly one sensitive input")
            if xi.shape != (S.shape[0],):
                raise InvalidInput("need one tolerance per sensitive input")
            object.__setattr__(self, "S", S)
            object.__setattr__(self, "xi", xi)
        elif v == "strong":
            S = as_points(self.S)
            Xi = np.atleast_2d(np.asarray(self.Xi, dtype=float))
            if Xi.shape != (S.shape[0], S.shape[0]):
                raise InvalidInput("Xi must be gamma x gamma")
            object.__setattr__(self, "S", S)
            object.__setattr__(self, "Xi", Xi)
        elif v == "kernel":
            if (self.H is None) == (self.H_alpha is None):
                raise InvalidInput("kernel variant needs exactly one of H or H_alpha")
            if self.H_alpha is not None and not 0.0 <= self.H_alpha < 1.0:
                raise InvalidInput("H_alpha must lie in [0, 1)")
            if self.region is None:
                raise InvalidInput("kernel variant needs a sensitive region")
        else:
            raise InvalidInput(f"unknown privacy variant {v!r}")

    def privacy_kernel(self, K: KernelSpec) -> KernelSpec:
        return self.H if self.H is not None else scaled(K, self.H_alpha)

    def to_dict(self):
        v = self.variant
        if v == "single":
            return {"variant": v, "s": self.S[0].tolist(), "xi": float(self.xi[0])}
        if v in ("weak", "diagonal"):
            return {"variant": v, "S": self.S.tolist(), "xi": self.xi.tolist()}
        if v == "strong":
            return {"variant": v, "S": self.S.tolist(), "Xi": self.Xi.tolist()}
        H = self.H.to_dict() if self.H is not None else {"family": "scaled", "alpha": self.H_alpha,
                                                         "base": "model"}
        return {"variant": v, "H": H, "region": self.region.to_dict()}

    @classmethod
    def from_dict(cls, data):
        v = data.get("variant")
        if v == "single":
            return cls(v, S=[data["s"]], xi=[data["xi"]])
        if v in ("weak", "diagonal"):
            return cls(v, S=data["S"], xi=data["xi"])
        if v == "strong":
            return cls(v, S=data["S"], Xi=data["Xi"])
        if v == "kernel":
            h = data["H"]
            region = SensitiveRegion.from_dict(data.get("region", {"type": "whole"}))
            if h.get("family") == "scaled" and h.get("base") == "model":
                return cls(v, H_alpha=float(h["alpha"]), region=region)
            return cls(v, H=KernelSpec.from_dict(h), region=region)
        raise InvalidInput(f"unknown privacy variant {v!r}")


@dataclass
class NoiseCovariance:
    sigma: np.ndarray
    provenance: Provenance
    status: str = "Optimal"
    details: dict = field(default_factory=dict, repr=False)

    @property
    def trace(self):
        return float(np.trace(self.sigma))

    def to_dict(self):
        return {"provenance": self.provenance.value, "status": self.status, "trace": self.trace}


@dataclass
class GramG:
    """``G(S)``: RKHS inner products of the training-point kernel sections.

    ``diagnostics`` holds ``max |G(S_k) - G(S_k-1)|`` over a refinement sequence
    (grid regions only).
    """

    matrix: np.ndarray
    region: str
    diagnostics: list = field(default_factory=list)
    jitter: float = 0.0
    condition: float = float("nan")


def _model_parts(model: GPModel, X):
    X = as_points(X, model.kernel.dim)
    return X, gram(model.kernel, X), noise_matrix(model.noise, X.shape[0])


def _check_tolerances(model, S, xi):
    kss = np.diag(gram(model.kernel, S))
    bad = (xi <= 0) | (xi >= kss)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise InvalidTolerance(f"tolerance xi={xi[i]:g} at s={S[i].tolist()} must lie in (0, {kss[i]:g})")


def single_dominated(model: GPModel, X, s, xi):
    """``(K_ss - xi)^-1 K_Xs K_sX - K_XX - V`` for one sensitive input."""
    X, Kxx, V = _model_parts(model, X)
    s = as_points(s, X.shape[1])
    k = gram(model.kernel, X, s)[:, 0]
    kss = float(gram(model.kernel, s)[0, 0])
    return linalg.as_symmetric(np.outer(k, k) / (kss - xi) - Kxx - V)


def single_sensitive_noise(model: GPModel, X, s, xi) -> NoiseCovariance:
    """Closed-form minimum-trace noise for one sensitive input."""
    s = as_points(s, model.kernel.dim)
    if s.shape[0] != 1:
        raise InvalidInput("single_sensitive_noise takes one point")
    _check_tolerances(model, s, np.array([float(xi)]))
    B = single_dominated(model, X, s, float(xi))
    return NoiseCovariance(linalg.psd_part(B), Provenance.SINGLE_CLOSED_FORM)


def _weak_problem(model, X, S, xi, diagonal_only):
    S = as_points(S, model.kernel.dim)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if xi.shape != (S.shape[0],):
        raise InvalidInput("need one tolerance per sensitive input")
    _check_tolerances(model, S, xi)
    Bs = [single_dominated(model, X, s, x) for s, x in zip(S, xi)]
    return sdp.TraceMinProblem(tuple(Bs), diagonal_only)


def _sdp_noise(problem, provenance, tol, max_iter):
    sol = sdp.solve(problem, tol=tol, max_iter=max_iter)
    if sol.status is not sdp.Status.OPTIMAL:
        warnings.warn(f"SDP stopped with status {sol.status.value} after {sol.iterations} steps",
                      RuntimeWarning, stacklevel=3)
    return NoiseCovariance(sol.sigma, provenance, sol.status.value,
                           {"iterations": sol.iterations, "gap": sol.duality_gap_estimate})


def weak_noise(model: GPModel, X, S, xi, tol=1e-7, max_iter=500) -> NoiseCovariance:
    """Minimum-trace noise meeting a separate variance floor at each sensitive input."""
    return _sdp_noise(_weak_problem(model, X, S, xi, False), Provenance.WEAK_SDP, tol, max_iter)


def diagonal_noise(model: GPModel, X, S, xi, tol=1e-7, max_iter=500) -> NoiseCovariance:
    """As :func:`weak_noise` but with independent (diagonal) synthetic noise."""
    return _sdp_noise(_weak_problem(model, X, S, xi, True), Provenance.DIAGONAL_SDP, tol, max_iter)


def strong_noise(model: GPModel, X, S, Xi) -> NoiseCovariance:
    """Closed-form noise enforcing ``Cov[f(S) | W] >= Xi``."""
    X, Kxx, V = _model_parts(model, X)
    S = as_points(S, X.shape[1])
    Xi = np.atleast_2d(np.asarray(Xi, dtype=float))
    if Xi.shape != (S.shape[0], S.shape[0]):
        raise InvalidXi("Xi must be gamma x gamma")
    Xi = linalg.as_symmetric(Xi, "Xi")
    lam = np.linalg.eigvalsh(Xi)
    if lam[0] < -1e-12 * max(1.0, abs(lam[-1])):
        raise InvalidXi(f"Xi is not PSD (min eigenvalue {lam[0]:.3e})")
    try:
        low = linalg.cholesky(gram(model.kernel, S) - Xi)
    except NotPositiveDefinite:
        raise InvalidXi("K_SS - Xi is not positive definite") from None
    A = scipy.linalg.solve_triangular(low, gram(model.kernel, S, X), lower=True, check_finite=False)
    B = A.T @ A - Kxx - V
    return NoiseCovariance(linalg.psd_part(B), Provenance.STRONG_CLOSED_FORM)


def _pair_gap(K, H, S):
    return linalg.as_symmetric(gram(K, S) - gram(H, S))


def _condition(M):
    lam = np.linalg.eigvalsh(M)
    return np.inf if lam[0] <= 0 else float(lam[-1] / lam[0])


def _auto_jitter(M, jitter):
    """Resolve the jitter policy; returns (jitter, condition number)."""
    cond = _condition(M)
    if jitter is None:
        jitter = 0.0
        if cond > COND_LIMIT:
            jitter = linalg.default_jitter(M)
            warnings.warn(f"K_SS - H_SS has condition number {cond:.2e}; adding diagonal jitter "
                          f"{jitter:.2e}", IllConditionedWarning, stacklevel=3)
    return jitter, cond


def _require_valid(K, H):
    v = validate_pair(K, H)
    if not v:
        raise InvalidInput(f"invalid kernel pair: {v.reason}")


def gram_g_finite(K: KernelSpec, H: KernelSpec, S, X, jitter=None) -> GramG:
    """``G(S) = K_XS (K_SS - H_SS)^-1 K_SX`` for a finite sensitive set.

    ``jitter=None`` applies ``1e-10 * mean(diag)`` (with a warning) only when
    the condition number of ``K_SS - H_SS`` exceeds 1e12.
    """
    _require_valid(K, H)
    S = as_points(S, K.dim)
    X = as_points(X, K.dim)
    if len(np.unique(S, axis=0)) != len(S):
        raise InvalidInput("sensitive points must be distinct")
    M = _pair_gap(K, H, S)
    jitter, cond = _auto_jitter(M, jitter)
    low = linalg.cholesky(M, jitter)
    A = scipy.linalg.solve_triangular(low, gram(K, S, X), lower=True, check_finite=False)
    G = A.T @ A
    return GramG(0.5 * (G + G.T), f"points[{len(S)}]", [], jitter, cond)


def gram_g_grid(K: KernelSpec, H: KernelSpec, region: SensitiveRegion, X, jitter=None) -> GramG:
    """``G`` on the finest grid of ``region``, with a refinement diagnostic.

    Each resolution in ``region.points`` is evaluated in turn. The jitter
    decision is taken once, on the finest grid, and applied to every level so
    that successive levels remain comparable.
    """
    if region.kind != "grid":
        raise InvalidInput("gram_g_grid needs a grid region")
    _require_valid(K, H)
    levels = [region.grid_points(m) for m in region.points]
    finest = levels[-1]
    jitter, cond = _auto_jitter(_pair_gap(K, H, finest), jitter)
    mats = [gram_g_finite(K, H, S, X, jitter=jitter).matrix for S in levels]
    diffs = [float(np.max(np.abs(b - a))) for a, b in zip(mats, mats[1:])]
    return GramG(mats[-1], f"grid[{len(finest)}]", diffs, jitter, cond)


def _integrand_profile(K, H):
    """Return ``f(rho) = K~^2 / (K~ - H~)`` for radial frequency ``rho``."""
    c_h, theta = H.flatten()
    c_k, theta0 = K.flatten()
    d = K.dim
    ratio0 = (c_h / c_k) * (theta0 / theta) ** (d / 2.0)
    decay = 1.0 / (4.0 * theta) - 1.0 / (4.0 * theta0)

    def f(rho):
        fk = fourier(K, rho)
        return fk / -np.expm1(np.log(ratio0) - decay * rho * rho) if ratio0 > 0 else fk

    return f, ratio0, decay


def gram_g_uniform_stationary(K: KernelSpec, H: KernelSpec, X, rtol=1e-6) -> GramG:
    """``G(R^d)`` from the Fourier integral of a stationary kernel pair.

    ``G_ij = (2 pi)^(-d/2) int cos(w.(x_i - x_j)) K~(w)^2 / (K~(w) - H~(w)) dw``,
    reduced to a one-dimensional radial integral and evaluated by adaptive
    Gauss-Kronrod quadrature. A scaled pair ``H = alpha K`` returns the exact
    ``K_XX / (1 - alpha)``.

    Raises
    ------
    NotIntegrable
        If the integral of ``K~^2 / (K~ - H~)`` diverges, which for a Gaussian
        pair happens when ``K~ - H~`` vanishes at the origin in ``d <= 2``.
    """
    _require_valid(K, H)
    X = as_points(X, K.dim)
    c_k, theta0 = K.flatten()
    c_h, theta = H.flatten()
    if theta == theta0:
        alpha = c_h / c_k
        return GramG(gram(K, X) / (1.0 - alpha), "whole-space (scaled)")

    d = K.dim
    f, ratio0, decay = _integrand_profile(K, H)
    if ratio0 >= 1.0 - 1e-12 and d <= 2:
        raise NotIntegrable("K~ - H~ vanishes at the origin; the whole-space integral diverges "
                            f"in dimension {d}")
    # tail of K~ below 1e-12 of its peak, with room for the polynomial weights
    omega_max = math.sqrt(4.0 * theta0 * math.log(1e12)) * 1.5 + 1.0

    diff = X[:, None, :] - X[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    keys = np.round(dist, 12)
    uniq, inverse = np.unique(keys, return_inverse=True)

    def entry(r):
        opts = dict(limit=500, epsrel=rtol * 1e-2)
        if r == 0.0:
            area = 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)
            val, _ = scipy.integrate.quad(lambda p: f(p) * p ** (d - 1), 0.0, omega_max,
                                          epsabs=0.0, **opts)
            return (2.0 * math.pi) ** (-d / 2.0) * area * val
        if d == 1:
            val, _ = scipy.integrate.quad(f, 0.0, omega_max, weight="cos", wvar=r,
                                          epsabs=1e-14, **opts)
            return math.sqrt(2.0 / math.pi) * val
        nu = d / 2.0 - 1.0
        val, _ = scipy.integrate.quad(lambda p: f(p) * scipy.special.jv(nu, p * r) * p ** (d / 2.0),
                                      0.0, omega_max, epsabs=1e-14, **opts)
        return r ** (1.0 - d / 2.0) * val

    values = np.array([entry(float(r)) for r in uniq])
    G = values[inverse].reshape(dist.shape)
    return GramG(0.5 * (G + G.T), "whole-space (quadrature)")


def noise_from_gram(G, K_XX, V=None) -> NoiseCovariance:
    """``Sigma = (G - K_XX - V)+``."""
    Gm = G.matrix if isinstance(G, GramG) else np.asarray(G, dtype=float)
    K_XX = np.asarray(K_XX, dtype=float)
    if Gm.shape != K_XX.shape:
        raise InvalidInput("G and K_XX shapes differ")
    V = np.zeros_like(K_XX) if V is None else noise_matrix(V, K_XX.shape[0])
    prov = Provenance.KERNEL_FINITE
    details = {}
    if isinstance(G, GramG):
        if G.region.startswith("grid"):
            prov = Provenance.KERNEL_GRID
        elif G.region.startswith("whole"):
            prov = Provenance.KERNEL_UNIFORM
        details = {"region": G.region, "diagnostics": G.diagnostics, "jitter": G.jitter}
    return NoiseCovariance(linalg.psd_part(Gm - K_XX - V), prov, details=details)


def kernel_noise(model: GPModel, X, H: KernelSpec, region: SensitiveRegion, rtol=1e-6):
    """Kernel-based noise over a finite set, a grid region or the whole space."""
    X, Kxx, V = _model_parts(model, X)
    K = model.kernel
    if region.kind == "points":
        G = gram_g_finite(K, H, region.points_list, X)
    elif region.kind == "grid":
        G = gram_g_grid(K, H, region, X)
    else:
        G = gram_g_uniform_stationary(K, H, X, rtol=rtol)
    return noise_from_gram(G, Kxx, V)


def compute_noise(model: GPModel, X, spec: PrivacySpec, tol=1e-7, max_iter=500):
    """Dispatch on ``spec.variant``."""
    v = spec.variant
    if v == "single":
        return single_sensitive_noise(model, X, spec.S, spec.xi[0])
    if v == "weak":
        return weak_noise(model, X, spec.S, spec.xi, tol, max_iter)
    if v == "diagonal":
        return diagonal_noise(model, X, spec.S, spec.xi, tol, max_iter)
    if v == "strong":
        return strong_noise(model, X, spec.S, spec.Xi)
    return kernel_noise(model, X, spec.privacy_kernel(model.kernel), spec.region)


@dataclass(frozen=True)
class PrivacyCheck:
    """Result of re-deriving the variance floors from released quantities.

    ``min_slack`` is the smallest of ``Var - xi`` (per-point variants) or the
    smallest eigenvalue of ``Cov[f(S0) | W] - Xi`` (matrix variants).
    """

    min_slack: float
    probes: np.ndarray

    def passed(self, tol=1e-6):
        return self.min_slack >= -tol


def _posterior_cov(model, X, sigma, S):
    n = X.shape[0]
    C = gram(model.kernel, X) + noise_matrix(model.noise, n) + sigma
    low = linalg.cholesky(C)
    A = scipy.linalg.solve_triangular(low, gram(model.kernel, X, S), lower=True, check_finite=False)
    cov = gram(model.kernel, S) - A.T @ A
    return 0.5 * (cov + cov.T)


def check_privacy(model: GPModel, X, sigma, spec: PrivacySpec, probes=None) -> PrivacyCheck:
    """Recompute the posterior at the sensitive inputs and measure the floor slack.

    For the kernel variant the probe set defaults to the region's finite point
    set (the training inputs for the whole space).
    """
    X = as_points(X, model.kernel.dim)
    sigma = np.asarray(sigma, dtype=float)
    if spec.variant in ("single", "weak", "diagonal"):
        cov = _posterior_cov(model, X, sigma, spec.S)
        return PrivacyCheck(float(np.min(np.diag(cov) - spec.xi)), spec.S)
    if spec.variant == "strong":
        cov = _posterior_cov(model, X, sigma, spec.S)
        return PrivacyCheck(linalg.min_eigenvalue(cov - spec.Xi), spec.S)
    H = spec.privacy_kernel(model.kernel)
    if probes is None:
        probes = X if spec.region.kind == "whole" else spec.region.grid_points()
    probes = as_points(probes, X.shape[1])
    cov = _posterior_cov(model, X, sigma, probes)
    return PrivacyCheck(linalg.min_eigenvalue(cov - gram(H, probes)), probes)
