"""Reproducible draws of the synthetic noise ``Z ~ N(0, Sigma)``.

Uniform variates come from the Philox-4x64 counter-based generator (raw
64-bit outputs, top 53 bits mapped to ``(0, 1]``); normals come from the
Box-Muller transform, consuming uniforms in pairs ``(u1, u2)`` and emitting
``sqrt(-2 ln u1) cos(2 pi u2)`` then ``sqrt(-2 ln u1) sin(2 pi u2)``.

The ``i``-th normal of a draw multiplies the ``i``-th eigenvector in
descending-eigenvalue order, whether or not that eigenvalue is clipped, so a
seed maps to the same ``omega`` vector regardless of the rank of ``Sigma``.
"""

import hashlib
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InvalidInput, NotPSD

__all__ = ["NoiseDraw", "standard_normals", "sigma_fingerprint", "sample_noise", "obfuscate"]


def _uniforms(seed, count):
    raw = np.random.Philox(int(seed)).random_raw(count)
    return ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53


def standard_normals(seed, count):
    """First ``count`` Box-Muller normals of the stream for ``seed``."""
    pairs = (count + 1) // 2
    u = _uniforms(seed, 2 * pairs).reshape(pairs, 2)
    radius = np.sqrt(-2.0 * np.log(u[:, 0]))
    angle = 2.0 * np.pi * u[:, 1]
    out = np.empty((pairs, 2))
    out[:, 0] = radius * np.cos(angle)
    out[:, 1] = radius * np.sin(angle)
    return out.reshape(-1)[:count]


def sigma_fingerprint(sigma):
    data = np.ascontiguousarray(np.asarray(sigma, dtype="<f8"))
    return hashlib.sha256(data.tobytes()).hexdigest()


@dataclass(frozen=True)
class NoiseDraw:
    """A seeded draw. ``z`` has shape ``(n,)``, or ``(size, n)`` for batches."""

    z: np.ndarray
    seed: int
    sigma_fingerprint: str


def sample_noise(sigma, seed, size=None) -> NoiseDraw:
    """Draw ``Z = O' (sqrt(lambda_1+) w_1, ..., sqrt(lambda_n+) w_n)'``.

    ``O`` and ``lambda`` come from the Jacobi decomposition of ``sigma``.
    Eigenvalues within the clipping tolerance of zero contribute exactly 0.
    With ``size`` given, ``size`` independent draws are taken from consecutive
    blocks of the normal stream; the first equals the unbatched draw.
    """
    sigma = linalg.as_symmetric(sigma, "sigma")
    if not 0 <= int(seed) < 2**64:
        raise InvalidInput("seed must be an unsigned 64-bit integer")
    n = sigma.shape[0]
    dec = linalg.sym_eigen(sigma)
    lam = dec.eigenvalues.copy()
    scale = max(np.max(np.abs(sigma)), 0.0) if sigma.size else 0.0
    if lam.size and lam[-1] < -1e-6 * scale:
        raise NotPSD(f"sigma has eigenvalue {lam[-1]:.3e} < 0")
    lam[lam <= linalg.clip_tolerance(lam)] = 0.0
    root = np.sqrt(lam)

    count = n if size is None else n * int(size)
    omega = standard_normals(seed, count).reshape(-1, n)
    # row-wise contraction so a draw does not depend on the batch size
    z = np.einsum("ki,ij->kj", omega * root, dec.basis, optimize=False)
    if size is None:
        z = z[0]
    return NoiseDraw(z, int(seed), sigma_fingerprint(sigma))


def obfuscate(y, draw: NoiseDraw):
    """Obfuscated responses ``W = Y + Z``."""
    y = np.asarray(y, dtype=float)
    if draw.z.shape != y.shape:
        raise InvalidInput(f"length mismatch: y {y.shape} vs z {draw.z.shape}")
    return y + draw.z
