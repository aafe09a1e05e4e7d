"""Owner-side release workflow: train, obfuscate, reconstruct.

1. Training: fit (or accept) the GP prior for the raw data ``(X, Y)``.
2. Obfuscation: compute ``Sigma`` for the privacy requirement, draw
   ``Z ~ N(0, Sigma)`` with an explicit seed and form ``W = Y + Z``.
3. Reconstruction: release ``(X, W)``, the prior, ``V`` and ``Sigma``.
   Predictions use ``K_XX + V + Sigma`` in place of ``K_XX + V``.

The raw responses ``Y`` are never stored in a :class:`ReleasedModel`.

Released models are JSON documents. Floats are written in Python's
shortest round-trip decimal form, so a save/load cycle reproduces every
float bit for bit. A SHA-256 checksum over the canonical payload guards
against tampering, and loading re-verifies the variance floors.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg, privacy, sampling
from .errors import FormatError, InvalidInput, PrivGPError, StageError
from .gp import Dataset, GPModel, PredictiveDistribution, fit_constant_mean_and_variance, posterior, read_csv
from .kernels import KernelSpec, as_points
from .privacy import NoiseCovariance, PrivacySpec, Provenance

__all__ = ["FORMAT_VERSION", "ReleasedModel", "PipelineConfig", "release", "run", "predict",
           "save", "load", "verify"]

FORMAT_VERSION = 1
log = logging.getLogger(__name__)


@dataclass
class ReleasedModel:
    X: np.ndarray
    W: np.ndarray
    model: GPModel
    noise: NoiseCovariance
    privacy_spec: Optional[PrivacySpec]
    format_version: int = FORMAT_VERSION

    @property
    def sigma(self):
        return self.noise.sigma

    @property
    def dataset(self):
        return Dataset(self.X, self.W)

    def predict(self, X_star) -> PredictiveDistribution:
        return predict(self, X_star)

    def check(self):
        """Floor slack recomputed from the released quantities alone."""
        if self.privacy_spec is None:
            return None
        return privacy.check_privacy(self.model, self.X, self.sigma, self.privacy_spec)


@dataclass
class PipelineConfig:
    """Inputs to :func:`run`.

    With ``fit=True`` ``kernel`` is a unit-amplitude correlation and the
    constant mean and signal variance are estimated by maximum likelihood;
    otherwise ``kernel``, ``mean`` and ``noise`` are used as given.
    """

    dataset: str
    kernel: KernelSpec
    privacy: PrivacySpec
    seed: int = 0
    fit: bool = True
    mean: float = 0.0
    noise: object = None
    nugget: float = 0.0
    output: Optional[str] = None
    tol: float = 1e-7

    @classmethod
    def from_dict(cls, data, base_dir="."):
        def resolve(p):
            return p if p is None or os.path.isabs(p) else os.path.join(base_dir, p)

        try:
            return cls(
                dataset=resolve(data["dataset"]),
                kernel=KernelSpec.from_dict(data["kernel"]),
                privacy=PrivacySpec.from_dict(data["privacy"]),
                seed=int(data.get("seed", 0)),
                fit=bool(data.get("fit", True)),
                mean=float(data.get("mean", 0.0)),
                noise=data.get("noise"),
                nugget=float(data.get("nugget", 0.0)),
                output=resolve(data.get("output")),
                tol=float(data.get("tol", 1e-7)),
            )
        except KeyError as exc:
            raise InvalidInput(f"config is missing field {exc}") from None

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh), os.path.dirname(os.path.abspath(path)))


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except StageError:
        raise
    except (PrivGPError, OSError, ValueError, np.linalg.LinAlgError) as exc:
        raise StageError(name, exc) from exc


def release(data: Dataset, model: GPModel, spec: PrivacySpec, seed=0, tol=1e-7) -> ReleasedModel:
    """Obfuscate ``data`` for ``spec`` and assemble a verified release."""
    noise = _stage("obfuscation", privacy.compute_noise, model, data.X, spec, tol)
    draw = _stage("obfuscation", sampling.sample_noise, noise.sigma, seed)
    W = sampling.obfuscate(data.Y, draw)
    log.info("sigma %s, trace %.6g, seed %d", noise.provenance.value, noise.trace, seed)
    released = ReleasedModel(data.X.copy(), W, model, noise, spec)
    _stage("reconstruction", verify, released)
    return released


def run(config: PipelineConfig) -> ReleasedModel:
    data = _stage("training", read_csv, config.dataset)
    if config.fit:
        model = _stage("training", fit_constant_mean_and_variance, data.X, data.Y,
                       config.kernel, config.nugget)
    else:
        model = GPModel(config.mean, config.kernel, config.noise)
    released = release(data, model, config.privacy, config.seed, config.tol)
    if config.output:
        save(released, config.output)
    return released


def predict(released: ReleasedModel, X_star) -> PredictiveDistribution:
    Xs = as_points(X_star, released.X.shape[1])
    return posterior(released.model, released.dataset, Xs, extra_noise=released.sigma)


def verify(released: ReleasedModel, tol=1e-6):
    """Check shapes, PSD-ness of ``Sigma`` and the disclosed privacy floors."""
    n = released.X.shape[0]
    if released.W.shape != (n,):
        raise FormatError("W length does not match X")
    sigma = released.sigma
    if sigma.shape != (n, n):
        raise FormatError("Sigma has the wrong shape")
    scale = max(1.0, float(np.max(np.abs(sigma)))) if sigma.size else 1.0
    if linalg.min_eigenvalue(sigma) < -1e-8 * scale:
        raise FormatError("Sigma is not positive semidefinite")
    check = released.check()
    if check is not None and not check.passed(tol):
        raise FormatError(f"privacy floor violated by {-check.min_slack:.3e}")
    return check


def _payload(released: ReleasedModel, redact_privacy_spec=False):
    spec = None if redact_privacy_spec or released.privacy_spec is None \
        else released.privacy_spec.to_dict()
    return {
        "format_version": released.format_version,
        "X": released.X.tolist(),
        "W": released.W.tolist(),
        "model": released.model.to_dict(),
        "sigma": released.sigma.tolist(),
        "provenance": released.noise.provenance.value,
        "status": released.noise.status,
        "privacy_spec": spec,
    }


def _digest(payload):
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def save(released: ReleasedModel, path, redact_privacy_spec=False):
    """Write the release as a single JSON document.

    ``redact_privacy_spec`` drops the privacy requirement from the file;
    ``Sigma`` is always kept because predictions need it.
    """
    payload = _payload(released, redact_privacy_spec)
    payload["checksum"] = _digest(payload)
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load(path) -> ReleasedModel:
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read released model: {exc}") from None
    if payload.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {payload.get('format_version')!r}")
    checksum = payload.pop("checksum", None)
    if checksum != _digest(payload):
        raise FormatError("checksum mismatch")
    try:
        spec = payload["privacy_spec"]
        released = ReleasedModel(
            X=as_points(payload["X"]),
            W=np.asarray(payload["W"], dtype=float),
            model=GPModel.from_dict(payload["model"]),
            noise=NoiseCovariance(np.asarray(payload["sigma"], dtype=float),
                                  Provenance(payload["provenance"]), payload.get("status", "Optimal")),
            privacy_spec=None if spec is None else PrivacySpec.from_dict(spec),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"malformed released model: {exc}") from None
    verify(released)
    return released
