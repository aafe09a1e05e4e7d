"""
Protecting an interval and the whole line
=========================================

For a privacy kernel ``H`` the noise is ``(G(S) - K_XX - V)+`` where ``G(S)``
collects RKHS inner products over the sensitive set ``S``. An interval is
handled by refining a grid; the whole real line by Fourier quadrature.
"""

import warnings

import numpy as np

from privgp import SensitiveRegion, gram_g_grid, gram_g_uniform_stationary, noise_from_gram
from privgp.kernels import gram, sqexp
from privgp.privacy import IllConditionedWarning

K, H = sqexp(10.0), sqexp(8.0, c=0.5)
X = np.arange(1, 10) / 10

# Successive dyadic grids over [0.4, 0.6]: the change in G shrinks. The
# 33-point grid is numerically singular, so a small jitter engages with a
# warning and is applied to every level.
region = SensitiveRegion.grid([0.4], [0.6], [5, 9, 17, 33])
G = gram_g_grid(K, H, region, X)
print("refinement diagnostics:", np.round(G.diagnostics, 5))
print("noise trace for [0.4, 0.6]:", round(noise_from_gram(G, gram(K, X)).trace, 4))

# The whole line, against a wide dense grid.
Gq = gram_g_uniform_stationary(K, H, X)
with warnings.catch_warnings():
    warnings.simplefilter("ignore", IllConditionedWarning)
    Gg = gram_g_grid(K, H, SensitiveRegion.grid([-3.0], [4.0], [513]), X)
print("quadrature vs grid, max relative gap:", np.max(np.abs(Gq.matrix - Gg.matrix)) / np.max(Gq.matrix))
print("noise trace for the whole line:", round(noise_from_gram(Gq, gram(K, X)).trace, 4))
