"""Reproducible studies: three toy problems on a 1-D grid and the orbit release.

Each function returns plain arrays and scalars; :mod:`privgp.cli` writes
them out as CSV/JSON and the demos print them.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import privacy
from .errors import InvalidXi
from .gp import Dataset, GPModel, fit_constant_mean_and_variance, posterior
from .kernels import sqexp, scaled, validate_pair, validate_pair_numeric, validity_region
from .pipeline import release
from .privacy import PrivacySpec, SensitiveRegion
from .satellite import OrbitParams, generate, in_segments, orbit_state

__all__ = ["toy_setup", "example1", "example2", "default_c_grid", "example3", "satellite_study"]


def toy_setup(theta=10.0):
    """Inputs ``i / 10`` (``i = 1..9``), kernel ``exp(-theta (x - y)^2)``, ``V = 0``."""
    X = np.arange(1, 10) / 10.0
    model = GPModel(0.0, sqexp(theta))
    return model, Dataset(X, np.zeros_like(X))


def _variance_curve(model, data, grid, sigma=None):
    return posterior(model, data, grid, extra_noise=sigma).variance


def example1(theta=10.0, s=0.5, xi=0.5, grid_points=201, tol=1e-7):
    """Correlated versus independent noise for one sensitive input."""
    model, data = toy_setup(theta)
    opt = privacy.single_sensitive_noise(model, data.X, [s], xi)
    diag = privacy.diagonal_noise(model, data.X, [[s]], [xi], tol=tol)
    grid = np.linspace(0.0, 1.0, grid_points)
    curves = {
        "diagonal": _variance_curve(model, data, grid, diag.sigma),
        "proposed": _variance_curve(model, data, grid, opt.sigma),
        "unsecured": _variance_curve(model, data, grid),
    }
    at_s = {k: float(_variance_curve(model, data, [s], sig)[0])
            for k, sig in (("proposed", opt.sigma), ("diagonal", diag.sigma), ("unsecured", None))}
    return {
        "X": data.X,
        "sigma_opt": opt.sigma,
        "sigma_diag": diag.sigma,
        "grid": grid,
        "curves": curves,
        "summary": {
            "trace_opt": opt.trace,
            "trace_diag": diag.trace,
            "var_at_s": at_s["proposed"],
            "var_at_s_diag": at_s["diagonal"],
            "var_at_s_unsecured": at_s["unsecured"],
            "diag_status": diag.status,
        },
    }


def default_c_grid(count=20):
    """``count`` points over ``(e^-0.4 - 0.5, 0.5]``, starting just inside the open end."""
    return np.linspace(0.1704, 0.5, count)


def example2(c_values=None, theta=10.0, S=(0.4, 0.6), xi=0.5, c_curve=0.45, grid_points=201,
             tol=1e-7):
    """Weak (per-point) versus strong (matrix) floors at two sensitive inputs."""
    model, data = toy_setup(theta)
    S = np.asarray(S, dtype=float).reshape(-1, 1)
    weak = privacy.weak_noise(model, data.X, S, [xi] * len(S), tol=tol)
    c_values = default_c_grid() if c_values is None else np.atleast_1d(c_values)
    rows = []
    for c in c_values:
        Xi = np.full((len(S), len(S)), float(c))
        np.fill_diagonal(Xi, xi)
        try:
            rows.append((float(c), privacy.strong_noise(model, data.X, S, Xi).trace, "ok"))
        except InvalidXi:
            rows.append((float(c), math.nan, "InvalidXi"))
    Xi = np.array([[xi, c_curve], [c_curve, xi]])
    strong = privacy.strong_noise(model, data.X, S, Xi)
    grid = np.linspace(0.0, 1.0, grid_points)
    return {
        "traces": rows,
        "sigma_weak": weak.sigma,
        "sigma_strong": strong.sigma,
        "grid": grid,
        "curves": {"weak": _variance_curve(model, data, grid, weak.sigma),
                   "strong": _variance_curve(model, data, grid, strong.sigma)},
        "summary": {
            "trace_weak": weak.trace,
            "trace_strong_curve": strong.trace,
            "c_curve": c_curve,
            "var_weak_at_S": _variance_curve(model, data, S, weak.sigma).tolist(),
            "var_strong_at_S": _variance_curve(model, data, S, strong.sigma).tolist(),
            "weak_status": weak.status,
        },
    }


def example3(theta0=10.0, dims=(1, 2, 3), probe_count=30, boundary_count=51):
    """Validity region of ``H = c exp(-theta r^2)`` against ``K = exp(-theta0 r^2)``."""
    boundary = []
    for d in dims:
        for c in np.linspace(0.0, 1.0, boundary_count):
            boundary.append((d, float(c), float(c ** (2.0 / d) * theta0), theta0))
    probes = []
    K_by_d = {d: sqexp(theta0, d=d) for d in dims}
    for d in dims:
        for c in np.linspace(0.0, 1.0, probe_count):
            for th in np.linspace(theta0 / probe_count, 1.2 * theta0, probe_count):
                H = sqexp(float(th), c=float(c), d=d)
                v = validate_pair(K_by_d[d], H)
                numeric = bool(validate_pair_numeric(K_by_d[d], H)) if c < 1 else False
                probes.append((d, float(c), float(th), bool(v), bool(validity_region(c, th, theta0, d)),
                               numeric, v.reason))
    return {"boundary": boundary, "probes": probes}


def satellite_study(params: OrbitParams = None, alphas=(0.1, 0.5), n=61, domain=(0.0, 3.0),
                    theta=200.0, grid_points=21, dense=601, seed=0, channel="radius",
                    margin=0.2):
    """Kernel-based release of a sampled orbit channel for each ``H = alpha K``.

    ``margin`` (in orbital periods) separates the private segments from the
    region reported as "outside"; the posterior necessarily changes in a
    neighbourhood of a few correlation lengths around each segment.
    """
    params = params or OrbitParams()
    data = generate(params, n, domain, channel)
    model = fit_constant_mean_and_variance(data.X, data.Y, sqexp(theta))
    region = SensitiveRegion("grid", boxes=tuple(([a], [b]) for a, b in params.private_segments),
                             points=grid_points)
    t = np.linspace(domain[0], domain[1], dense)
    truth = orbit_state(t, params)[channel]
    unsecured = posterior(model, data, t)
    inside = in_segments(t, params.private_segments)
    outside = ~in_segments(t, params.private_segments, margin)
    prior_sd = math.sqrt(model.kernel.amplitude)
    out = {"data": data, "model": model, "t": t, "truth": truth, "unsecured": unsecured,
           "inside": inside, "outside": outside, "releases": {}}
    for alpha in alphas:
        spec = PrivacySpec("kernel", H_alpha=float(alpha), region=region)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", privacy.IllConditionedWarning)
            rel = release(data, model, spec, seed=seed)
        pred = rel.predict(t)
        floor = alpha * model.kernel.amplitude
        out["releases"][float(alpha)] = {
            "released": rel,
            "prediction": pred,
            "report": {
                "alpha": float(alpha),
                "trace": rel.noise.trace,
                "floor": floor,
                "min_var_minus_floor_inside": float(np.min(pred.variance[inside] - floor)),
                "grid_floor_slack": rel.check().min_slack,
                "mean_halfwidth_inside": float(np.mean(2 * pred.std[inside])),
                "mean_halfwidth_outside": float(np.mean(2 * pred.std[outside])),
                "unsecured_halfwidth_inside": float(np.mean(2 * unsecured.std[inside])),
                "max_std_change_outside_rel": float(
                    np.max(np.abs(pred.std[outside] - unsecured.std[outside])) / prior_sd),
            },
        }
    out["summary"] = {"mean": model.mean, "variance": model.kernel.amplitude, "margin": margin,
                      "segments": [list(s) for s in params.private_segments]}
    return out
