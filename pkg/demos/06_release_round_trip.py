"""
Saving and loading a release
============================

The release file holds ``X``, ``W``, the GP prior, the noise covariance and
(optionally) the privacy requirement. Loading re-checks a checksum and the
variance floors, so a tampered file is refused.
"""

import json
import os
import tempfile

import numpy as np

from privgp import PrivacySpec, load, release, save
from privgp.errors import FormatError
from privgp.studies import toy_setup

model, data = toy_setup()
rel = release(data, model, PrivacySpec("weak", S=[[0.3], [0.7]], xi=[0.4, 0.4]), seed=5)

path = os.path.join(tempfile.mkdtemp(), "released.json")
save(rel, path)
back = load(path)
probe = np.linspace(0, 1, 5)
print("predictions identical after reload:",
      np.array_equal(rel.predict(probe).covariance, back.predict(probe).covariance))

with open(path) as fh:
    payload = json.load(fh)
payload["sigma"] = np.zeros_like(rel.sigma).tolist()
with open(path, "w") as fh:
    json.dump(payload, fh)
try:
    load(path)
except FormatError as exc:
    print("tampered file refused:", exc)
