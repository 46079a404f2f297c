"""Numerical view: with the metric truncated at degree K, the Laplacian of
an equivalent jet vanishes to order K+m-1 at the origin."""

import random

import numpy as np

from harmjet.geometry import residual_decay
from harmjet.jetflow import StarJet, make_fstar, random_jet, run, s_of_m

rng = random.Random(4)
print(" m  K  at least  fitted")
for m in (5, 6, 7):
    f = random_jet(m, s_of_m(m) + 1, s_of_m(m) + 8, rng)
    for K in range(1, m):
        probe = residual_decay(run(f, K, check=False).metric, f)
        print(f"{m:2d} {K:2d}  {K + m - 1:8d}  {probe.fitted_slope:6.3f}")

# the obstructed witness with the flat metric only decays like r^4
probe = residual_decay(StarJet.flat(5), make_fstar(5, 1))
print("\nwitness, flat metric: slope", round(probe.fitted_slope, 3))
print("|residual| at the smallest radius:", np.round(probe.values[-1, :4], 12))
print(probe.to_csv().splitlines()[0])
