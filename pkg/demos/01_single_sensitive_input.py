"""
Protecting one sensitive input
==============================

Nine noiseless observations at ``x = 0.1, ..., 0.9`` of a GP with kernel
``exp(-10 (x - y)^2)``. The owner wants anyone fitting the released data to
have predictive variance at least 0.5 at ``x = 0.5``.
"""

import numpy as np

from privgp import posterior, release, single_sensitive_noise, diagonal_noise, PrivacySpec
from privgp.studies import toy_setup

model, data = toy_setup(theta=10.0)
data = type(data)(data.X, np.sin(2 * np.pi * data.X[:, 0]))

# Without synthetic noise the posterior interpolates the data, so the
# variance at a training input is zero.
print("unsecured variance at 0.5:", posterior(model, data, [0.5]).variance[0])

# The minimum-trace noise covariance has a closed form: the PSD part of a
# rank-one update of -K_XX.
opt = single_sensitive_noise(model, data.X, [0.5], 0.5)
print("trace of correlated noise:", round(opt.trace, 4))
print("per-point noise variance:", np.round(np.diag(opt.sigma), 3))

# Restricting to independent noise is also a valid design, but it costs more.
diag = diagonal_noise(model, data.X, [[0.5]], [0.5])
print("trace of independent noise:", round(diag.trace, 4))

grid = np.linspace(0, 1, 11)
for name, sigma in (("correlated", opt.sigma), ("independent", diag.sigma)):
    v = posterior(model, data, grid, extra_noise=sigma).variance
    print(f"{name:>12} variance on grid:", np.round(v, 3))

# The release bundles X, the obfuscated W = Y + Z and the noise covariance.
released = release(data, model, PrivacySpec("single", S=[[0.5]], xi=[0.5]), seed=1)
print("released variance at 0.5:", released.predict([0.5]).variance[0])
