"""The linear operator behind each degree step, and the direction it misses."""

from harmjet.polyring import format_poly, r2_power
from harmjet.theta import build_theta, irr_inclusion_table, rank_report, solve_in_image

# Theta_k sends a pair of degree-k polynomials to R_{k+m-2}[x,y].
# Its rank is min(2(k+1), k+m-1): injective for small k, onto for large k.
m = 7
print(f"m = {m}")
print(" k  shape   rank  injective  surjective")
for k in range(1, 2 * m + 1):
    op = build_theta(m, k)
    rep = rank_report(op)
    print(f"{k:2d}  {op.shape[0]:2d}x{op.shape[1]:<2d}  {rep.rank:4d}  {rep.injective!s:9}  {rep.surjective}")

# At k = m-4 the image is the sum of the rotation-invariant pieces
# (x^2+y^2)^q {Re z^p, Im z^p} with q <= m-4.  The one left over is a
# pure power of x^2+y^2.
op = build_theta(m, m - 4)
print()
for q, inside in irr_inclusion_table(op):
    print(f"Irr^{q} of degree {op.target_degree}: {'in image' if inside else 'missed'}")

missed = r2_power(m - 3)
out = solve_in_image(op, missed)
print("\nmissed direction:", format_poly(missed))
print("in image:", out.in_image, "| residual equals it:", out.residual == missed)
