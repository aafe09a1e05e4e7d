"""Log-barrier solver for trace-minimization SDPs.

Solves::

    minimize    Tr(Sigma)
    subject to  Sigma - B_i >= 0   (i = 1..gamma)
                Sigma >= 0

optionally with ``Sigma`` restricted to diagonal matrices. The barrier
function ``t Tr(Sigma) - sum_j log det F_j`` (``F_j`` ranging over
``Sigma - B_i`` and ``Sigma``) is minimized by damped Newton steps for an
increasing sequence of ``t``; with ``gamma + 1`` blocks of order ``n`` the
duality gap at the central point is ``(gamma + 1) n / t``.

Newton systems are formed in orthonormal ``svec`` coordinates over the
``n (n + 1) / 2`` free entries (``n`` entries in the diagonal case).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import linalg
from .errors import InvalidInput, NotPositiveDefinite

__all__ = ["Status", "TraceMinProblem", "SdpSolution", "solve"]

MU_FACTOR = 5.0
ARMIJO = 1e-4
NEWTON_TOL = 1e-10
EPS = np.finfo(float).eps


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    MAX_ITERATIONS = "MaxIterations"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class TraceMinProblem:
    dominated: tuple
    diagonal_only: bool = False

    def __post_init__(self):
        mats = [linalg.as_symmetric(b, "dominated matrix") for b in self.dominated]
        if not mats:
            raise InvalidInput("need at least one dominated matrix")
        n = mats[0].shape[0]
        if any(b.shape != (n, n) for b in mats):
            raise InvalidInput("dominated matrices must share one order")
        object.__setattr__(self, "dominated", tuple(mats))

    @property
    def order(self):
        return self.dominated[0].shape[0]


@dataclass
class SdpSolution:
    sigma: np.ndarray
    trace: float
    iterations: int
    duality_gap_estimate: float
    status: Status
    history: list = field(default_factory=list, repr=False)

    @property
    def optimal(self):
        return self.status is Status.OPTIMAL


def _factor_all(sigma, dominated):
    """Cholesky factors of every barrier block, or None if one is not PD."""
    try:
        lows = [linalg.cholesky(sigma - b) for b in dominated]
        lows.append(linalg.cholesky(sigma))
    except NotPositiveDefinite:
        return None
    return lows


def _barrier(t, sigma, lows):
    return t * np.trace(sigma) - 2.0 * sum(np.sum(np.log(np.diag(L))) for L in lows)


def _inverse(low):
    n = low.shape[0]
    inv = scipy.linalg.cho_solve((low, True), np.eye(n), check_finite=False)
    return 0.5 * (inv + inv.T)


class _SvecBasis:
    """Orthonormal basis of symmetric matrices, one element per upper-triangle entry."""

    def __init__(self, n):
        self.n = n
        self.I, self.J = np.triu_indices(n)
        off = self.I != self.J
        self.scale = np.where(off, 1.0, 1.0 / np.sqrt(2.0))
        self.gscale = np.where(off, np.sqrt(2.0), 1.0)

    def gradient(self, G):
        return self.gscale * G[self.I, self.J]

    def hessian(self, Ws):
        I, J = self.I, self.J
        H = np.zeros((I.size, I.size))
        for W in Ws:
            H += W[np.ix_(I, I)] * W[np.ix_(J, J)] + W[np.ix_(I, J)] * W[np.ix_(J, I)]
        return H * np.outer(self.scale, self.scale)

    def matrix(self, x):
        D = np.zeros((self.n, self.n))
        v = x * self.gscale / 2.0
        D[self.I, self.J] = v
        D[self.J, self.I] += v
        D[np.diag_indices(self.n)] = x[self.I == self.J]
        return D


def _newton_direction(t, lows, basis, diagonal_only):
    Ws = [_inverse(L) for L in lows]
    G = t * np.eye(lows[0].shape[0]) - sum(Ws)
    if diagonal_only:
        g = np.diag(G).copy()
        H = sum(W * W for W in Ws)
    else:
        g = basis.gradient(G)
        H = basis.hessian(Ws)
    try:
        x = -scipy.linalg.solve(H, g, assume_a="pos", check_finite=False)
    except np.linalg.LinAlgError:
        x = -np.linalg.lstsq(H, g, rcond=None)[0]
    D = np.diag(x) if diagonal_only else basis.matrix(x)
    return D, float(-g @ x)


def solve(problem: TraceMinProblem, tol=1e-7, max_iter=500) -> SdpSolution:
    """Minimize ``Tr(Sigma)`` subject to ``Sigma >= B_i`` and ``Sigma >= 0``.

    Parameters
    ----------
    problem : TraceMinProblem
    tol : float
        Target bound on the duality gap, in trace units.
    max_iter : int
        Total number of Newton steps allowed across all barrier stages.

    Returns
    -------
    SdpSolution
        ``status`` is ``Optimal`` once the gap bound ``(gamma + 1) n / t``
        is below ``tol`` at a centered point; ``MaxIterations`` otherwise.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    dominated = problem.dominated
    n = problem.order
    blocks = len(dominated) + 1
    diagonal_only = problem.diagonal_only
    basis = None if diagonal_only else _SvecBasis(n)

    top = max(linalg.sym_eigen(b).eigenvalues[0] for b in dominated)
    sigma = (max(top, 0.0) + 1.0) * np.eye(n)
    lows = _factor_all(sigma, dominated)
    if lows is None:
        return SdpSolution(sigma, float(np.trace(sigma)), 0, np.inf, Status.INFEASIBLE)

    t = blocks * n / max(1.0, float(np.trace(sigma)))
    iterations = 0
    history = []
    status = Status.MAX_ITERATIONS
    while True:
        centered = False
        while iterations < max_iter:
            D, dec2 = _newton_direction(t, lows, basis, diagonal_only)
            f0 = _barrier(t, sigma, lows)
            # below the resolution of f0 the line search only sees roundoff
            if dec2 / 2.0 <= max(NEWTON_TOL, 64 * EPS * abs(f0)):
                centered = True
                break
            step = 1.0
            while True:
                trial = sigma + step * D
                trial_lows = _factor_all(trial, dominated)
                if trial_lows is not None and \
                        _barrier(t, trial, trial_lows) <= f0 - ARMIJO * step * dec2:
                    break
                step *= 0.5
                if step < 1e-20:
                    trial_lows = None
                    break
            iterations += 1
            if trial_lows is None:
                # no progress possible at this precision; treat as centered
                centered = True
                break
            sigma, lows = trial, trial_lows
        gap = blocks * n / t
        history.append((t, float(np.trace(sigma)), iterations))
        if not centered:
            break
        if gap <= tol:
            status = Status.OPTIMAL
            break
        t *= MU_FACTOR

    sigma = 0.5 * (sigma + sigma.T)
    return SdpSolution(sigma, float(np.trace(sigma)), iterations, blocks * n / t, status,
                       history)
