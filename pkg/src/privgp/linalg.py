"""Dense symmetric linear algebra.

The eigen-solver is a cyclic Jacobi method using a round-robin (tournament)
ordering, so every step applies ``n // 2`` disjoint plane rotations at once.
Everything downstream (PSD parts, noise sampling, SDP initialization) goes
through :func:`sym_eigen`; Cholesky factorizations are delegated to LAPACK.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidInput, NotPositiveDefinite

__all__ = [
    "SpectralDecomposition",
    "as_symmetric",
    "sym_eigen",
    "psd_part",
    "clip_tolerance",
    "min_eigenvalue",
    "cholesky",
    "solve_spd",
    "default_jitter",
]

JACOBI_TOL = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True)
class SpectralDecomposition:
    """Spectral decomposition ``A = O.T @ diag(eigenvalues) @ O``.

    Attributes
    ----------
    eigenvalues : ndarray, shape (n,)
        Sorted in descending order.
    basis : ndarray, shape (n, n)
        Orthogonal matrix ``O``; row ``i`` is the unit eigenvector belonging
        to ``eigenvalues[i]``.
    sweeps : int
        Number of Jacobi sweeps performed.
    """

    eigenvalues: np.ndarray
    basis: np.ndarray
    sweeps: int = 0

    @property
    def vectors(self):
        """Eigenvectors as columns (numpy convention)."""
        return self.basis.T

    def reconstruct(self, eigenvalues=None):
        lam = self.eigenvalues if eigenvalues is None else np.asarray(eigenvalues)
        return as_symmetric((self.basis.T * lam) @ self.basis)


def as_symmetric(a, name="matrix"):
    """Return ``a`` as a float array with exactly symmetric storage."""
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{name} has non-finite entries")
    return 0.5 * (a + a.T)


def _round_robin(order):
    """Yield rounds of disjoint index pairs covering every pair exactly once."""
    players = list(order)
    if len(players) % 2:
        players.append(-1)
    m = len(players)
    for _ in range(m - 1):
        pairs = [(players[k], players[m - 1 - k]) for k in range(m // 2)]
        pairs = [(p, q) for p, q in pairs if p >= 0 and q >= 0]
        if pairs:
            yield np.array(pairs, dtype=int).T
        players = [players[0], players[-1]] + players[1:-1]


def sym_eigen(a, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS, pivot_seed=None):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Symmetric matrix (symmetrized on input).
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm drops below
        ``tol * ||a||_F``.
    max_sweeps : int
        Hard cap on the number of sweeps.
    pivot_seed : int, optional
        If given, the index order fed to the round-robin schedule is shuffled
        with this seed. The eigenvalues and the PSD part do not depend on it.

    Returns
    -------
    SpectralDecomposition
    """
    a = as_symmetric(a)
    n = a.shape[0]
    v = np.eye(n)
    fro = np.linalg.norm(a)
    order = np.arange(n)
    if pivot_seed is not None:
        order = np.random.default_rng(pivot_seed).permutation(n)

    sweeps = 0
    target = tol * fro
    while n > 1 and fro > 0.0 and sweeps < max_sweeps:
        if np.linalg.norm(a - np.diag(np.diag(a))) <= target:
            break
        sweeps += 1
        for p, q in _round_robin(order):
            apq = a[p, q]
            # threshold: leave negligible entries alone
            active = np.abs(apq) > 1e-300
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            tau = (a[q, q] - a[p, p]) / (2.0 * apq)
            # for huge |tau| use t ~ 1 / (2 tau) to avoid overflowing tau^2
            big = np.abs(tau) > 1e150
            tb = np.where(big, 1.0, tau)
            t = np.sign(tb) / (np.abs(tb) + np.sqrt(1.0 + tb * tb))
            t[big] = 0.5 / tau[big]
            t[tau == 0.0] = 1.0
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c

            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            a[p, q] = 0.0
            a[q, p] = 0.0

            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq

    lam = np.diag(a).copy()
    idx = np.argsort(-lam, kind="stable")
    return SpectralDecomposition(lam[idx], v[:, idx].T.copy(), sweeps)


def clip_tolerance(eigenvalues):
    """Magnitude below which an eigenvalue is treated as an exact zero."""
    lam = np.asarray(eigenvalues)
    top = np.max(np.abs(lam)) if lam.size else 0.0
    return 1e-10 * max(1.0, top)


def psd_part(a, pivot_seed=None):
    """PSD part of a symmetric matrix: negative eigenvalues clipped to zero.

    Eigenvalues within :func:`clip_tolerance` of zero are also set to zero so
    that roundoff does not leak into otherwise null directions.
    """
    dec = sym_eigen(a, pivot_seed=pivot_seed)
    lam = dec.eigenvalues.copy()
    lam[lam <= clip_tolerance(lam)] = 0.0
    if not np.any(lam):
        return np.zeros_like(dec.basis)
    return dec.reconstruct(lam)


def min_eigenvalue(a):
    """Smallest eigenvalue of a symmetric matrix (LAPACK, for checks only)."""
    a = as_symmetric(a)
    if a.size == 0:
        return np.inf
    return float(np.linalg.eigvalsh(a)[0])


def default_jitter(a):
    """Opt-in diagonal jitter, ``1e-10 * mean(diag(a))``."""
    return 1e-10 * float(np.mean(np.diag(a)))


def cholesky(a, jitter=0.0):
    """Lower Cholesky factor of ``a + jitter * I``.

    Raises
    ------
    NotPositiveDefinite
        If a pivot is not positive after the jitter is added.
    """
    if jitter < 0:
        raise InvalidInput("jitter must be non-negative")
    a = as_symmetric(a)
    if jitter:
        a = a + jitter * np.eye(a.shape[0])
    try:
        return scipy.linalg.cholesky(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None


def solve_spd(a, rhs, jitter=0.0):
    """Solve ``(a + jitter * I) x = rhs`` for SPD ``a``."""
    low = cholesky(a, jitter)
    return scipy.linalg.cho_solve((low, True), np.asarray(rhs, dtype=float),
                                  check_finite=False)
