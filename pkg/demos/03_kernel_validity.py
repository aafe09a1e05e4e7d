"""
Which privacy kernels are admissible
====================================

A privacy kernel ``H = c exp(-theta r^2)`` may be paired with the model
kernel ``K = exp(-theta0 r^2)`` only if ``K - H`` is positive definite. For
Gaussians this reduces to a region in the ``(c, theta)`` plane; a sampled
Fourier check agrees away from its edge cases.
"""

import numpy as np

from privgp.kernels import sqexp, validate_pair, validate_pair_numeric

theta0 = 10.0
for d in (1, 2, 3):
    K = sqexp(theta0, d=d)
    print(f"d = {d}: valid cells (rows c = 0..0.9, columns theta = 1..12)")
    for c in np.arange(0.0, 1.0, 0.1):
        row = "".join("#" if validate_pair(K, sqexp(th, c=c, d=d)) else "."
                      for th in np.arange(1.0, 13.0, 1.0))
        print(f"  c={c:.1f} {row}")

K = sqexp(theta0)
for H in (sqexp(8.0, c=0.5), sqexp(2.0, c=0.5), sqexp(10.0, c=1.0)):
    v = validate_pair(K, H)
    print(H.flatten(), "closed form:", bool(v), v.reason or "", "| sampled:", bool(validate_pair_numeric(K, H)))
