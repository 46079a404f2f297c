"""Re z^m + C (x^2+y^2)^(m-2) cannot be made harmonic once m >= 5.

The first obstructed degree is k = m-4, where the right-hand side is a
multiple of the missed direction (x^2+y^2)^(m-3).
"""

from fractions import Fraction

from harmjet.jetflow import make_fstar, obstruction, run
from harmjet.polyring import format_poly

for m in range(5, 10):
    for C in (1, -1, Fraction(3, 2)):
        f = make_fstar(m, C)
        rep = obstruction(f)
        phi = run(f, m - 4, check=False).steps[-1].phi
        print(f"m={m} C={str(C):>4}  {rep.verdict:15s} first failure k={rep.first_failure}"
              f"  phi/(x^2+y^2)^{m - 3} = {phi.coeffs[0]}")

# compare with -4 C (m-2)^2
print("\nexpected coefficient for C=1:", [-4 * (m - 2) ** 2 for m in range(5, 10)])

f = make_fstar(5, 1)
print("\nm=5 residual:", format_poly(obstruction(f).residuals[1]))
