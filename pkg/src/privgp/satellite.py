"""Toy two-body orbit data for the trajectory-privacy study.

A Keplerian ellipse is sampled against time. Lengths are in Earth radii and
time in orbital periods, so the mean anomaly is ``M = 2 pi t`` and every
channel has period 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput
from .gp import Dataset

__all__ = ["OrbitParams", "solve_kepler", "orbit_state", "generate", "CHANNELS",
           "write_segments", "read_segments", "in_segments"]

CHANNELS = ("radius", "angle", "radial_velocity", "transverse_velocity")


def _default_segments():
    return [(k + 0.4, k + 0.6) for k in range(3)]


@dataclass(frozen=True)
class OrbitParams:
    """Orbit shape and private time windows.

    Attributes
    ----------
    eccentricity : float
        ``0 <= e < 1``.
    semi_major_axis : float
        In Earth radii, ``> 1``.
    private_segments : list of (t_lo, t_hi)
        Private windows in orbital periods; one per period by default.
    """

    eccentricity: float = 0.1
    semi_major_axis: float = 1.5
    private_segments: list = field(default_factory=_default_segments)

    def __post_init__(self):
        if not 0.0 <= self.eccentricity < 1.0:
            raise InvalidInput("eccentricity must lie in [0, 1)")
        if not self.semi_major_axis > 1.0:
            raise InvalidInput("semi-major axis must exceed one Earth radius")
        segs = [(float(a), float(b)) for a, b in self.private_segments]
        if any(b < a for a, b in segs):
            raise InvalidInput("private segments need t_lo <= t_hi")
        object.__setattr__(self, "private_segments", segs)


def solve_kepler(mean_anomaly, e, tol=1e-12, max_iter=100):
    """Eccentric anomaly ``E`` with ``M = E - e sin E`` by Newton iteration."""
    M = np.asarray(mean_anomaly, dtype=float)
    E = np.where(e < 0.8, M, np.pi * np.ones_like(M))
    for _ in range(max_iter):
        step = (E - e * np.sin(E) - M) / (1.0 - e * np.cos(E))
        E = E - step
        if np.all(np.abs(step) <= tol):
            return E
    raise RuntimeError("Kepler iteration did not converge")


def orbit_state(t, params: OrbitParams):
    """All output channels at times ``t`` (periods) as a dict of arrays.

    ``angle`` is the unwrapped true anomaly in radians; velocities are in
    Earth radii per orbital period.
    """
    e = params.eccentricity
    a = params.semi_major_axis
    t = np.asarray(t, dtype=float)
    n = 2.0 * math.pi
    M = n * t
    # reduce to [0, 2 pi) for Newton, then restore the whole revolutions
    revs = np.floor(M / (2 * math.pi))
    E = solve_kepler(M - 2 * math.pi * revs, e)
    r = a * (1.0 - e * np.cos(E))
    nu = 2.0 * np.arctan2(np.sqrt(1 + e) * np.sin(E / 2), np.sqrt(1 - e) * np.cos(E / 2))
    nu = nu + 2 * math.pi * revs
    h = n * a * a * math.sqrt(1 - e * e)
    mu = n * n * a**3
    return {
        "radius": r,
        "angle": nu,
        "radial_velocity": mu / h * e * np.sin(nu),
        "transverse_velocity": h / r,
    }


def generate(params: OrbitParams = None, n=61, domain=(0.0, 3.0), channel="radius") -> Dataset:
    """Sample ``n`` evenly spaced times over ``domain`` and one output channel."""
    params = params or OrbitParams()
    if n < 2:
        raise InvalidInput("need n >= 2 samples")
    if channel not in CHANNELS:
        raise InvalidInput(f"unknown channel {channel!r}")
    t = np.linspace(domain[0], domain[1], n)
    return Dataset(t, orbit_state(t, params)[channel])


def in_segments(t, segments, margin=0.0):
    """Boolean mask of times within ``margin`` of any private segment."""
    t = np.asarray(t, dtype=float).reshape(-1)
    mask = np.zeros(t.shape, dtype=bool)
    for lo, hi in segments:
        mask |= (t >= lo - margin) & (t <= hi + margin)
    return mask


def write_segments(path, params: OrbitParams):
    with open(path, "w") as fh:
        json.dump({"eccentricity": params.eccentricity,
                   "semi_major_axis": params.semi_major_axis,
                   "private_segments": [list(s) for s in params.private_segments]}, fh, indent=2)


def read_segments(path) -> OrbitParams:
    with open(path) as fh:
        data = json.load(fh)
    return OrbitParams(data.get("eccentricity", 0.1), data.get("semi_major_axis", 1.5),
                       data.get("private_segments", _default_segments()))
