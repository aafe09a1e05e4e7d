"""
Hiding parts of an orbit
========================

A two-body orbit sampled at 61 times over three periods. One segment per
period is private. The owner fits a constant mean and signal variance, then
releases the radius with privacy kernels ``0.1 K`` and ``0.5 K`` over the
segments.
"""

import numpy as np

from privgp.studies import satellite_study

study = satellite_study(alphas=(0.1, 0.5))
print("fitted mean %.4f, signal variance %.6f" % (study["summary"]["mean"], study["summary"]["variance"]))
print("private segments:", study["summary"]["segments"])

for alpha, rel in study["releases"].items():
    r = rel["report"]
    print(f"\nH = {alpha} K")
    print("  noise trace            ", round(r["trace"], 5))
    print("  variance floor         ", round(r["floor"], 6))
    print("  min slack inside       ", f"{r['min_var_minus_floor_inside']:.2e}")
    print("  band half-width inside ", round(r["mean_halfwidth_inside"], 4),
          "(unsecured", round(r["unsecured_halfwidth_inside"], 4), ")")
    print("  sd change outside      ", f"{100 * r['max_std_change_outside_rel']:.2f}% of prior sd")

# Coarse text view of the released band for H = 0.5 K.
t, pred = study["t"], study["releases"][0.5]["prediction"]
for k in range(0, len(t), 30):
    mark = "*" if study["inside"][k] else " "
    print(f"{t[k]:5.2f}{mark} {pred.mean[k]:.3f} +- {2 * pred.std[k]:.3f}")
