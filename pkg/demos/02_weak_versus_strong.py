"""
Several sensitive inputs: separate floors or a joint floor
==========================================================

With sensitive inputs 0.4 and 0.6 the owner can ask for a variance floor at
each point separately (solved by a log-barrier SDP) or for a matrix floor on
their joint posterior covariance (closed form). The joint requirement is
never cheaper.
"""

import numpy as np

from privgp import posterior, strong_noise, weak_noise
from privgp.errors import InvalidXi
from privgp.studies import default_c_grid, toy_setup

model, data = toy_setup()
S = [[0.4], [0.6]]

weak = weak_noise(model, data.X, S, [0.5, 0.5])
print("separate floors: trace", round(weak.trace, 4), "status", weak.status)

# The off-diagonal target c must keep Xi PSD and K_SS - Xi positive
# definite, which leaves c in (exp(-0.4) - 0.5, 0.5].
for c in [0.1, *np.round(default_c_grid(6), 4)]:
    try:
        tr = strong_noise(model, data.X, S, [[0.5, c], [c, 0.5]]).trace
        print(f"joint floor c={c}: trace {tr:.4f}")
    except InvalidXi as exc:
        print(f"joint floor c={c}: rejected ({exc})")

strong = strong_noise(model, data.X, S, [[0.5, 0.45], [0.45, 0.5]])
for name, sigma in (("separate", weak.sigma), ("joint", strong.sigma)):
    print(name, "variances at S:", posterior(model, data, [0.4, 0.6], extra_noise=sigma).variance)

# Neither noise matrix dominates the other.
print("eigenvalues of joint - separate:", np.round(np.linalg.eigvalsh(strong.sigma - weak.sigma), 3))
