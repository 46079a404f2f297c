"""A jet whose tail starts late enough is always equivalent to Re z^m.

We build such a jet, run the degree-by-degree construction of the star
operator and check that every vanishing condition holds.
"""

import random

from harmjet.geometry import metric_from_star
from harmjet.jetflow import random_jet, run, s_of_m
from harmjet.polyring import format_poly

rng = random.Random(2)
m = 6
s = s_of_m(m)
f = random_jet(m, s + 1, s + 3, rng, size=3)
print(f"m = {m}, tail vanishes through degree s(m) = {s}")
for d, p in f.tail.items():
    print(f"  [f]_{d} = {format_poly(p)}")

K = s + 3 - m
res = run(f, K)
print("\nverdict:", res.report.verdict)
print("assertions A_1..A_K:", res.assertions)

# the metric coefficients that make f harmonic, degree by degree
g = metric_from_star(res.metric)
for name, entry in (("g11", g.g11), ("g12", g.g12), ("g22", g.g22)):
    print(f"\n{name}:")
    for d, p in entry.items():
        print(f"  degree {d}: {format_poly(p)}")
