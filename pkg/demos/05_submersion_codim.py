"""The obstruction map h -> (phi_1, ..., phi_{m-4}) is a submersion.

Its Jacobian is block lower triangular with -Laplacian blocks on the
diagonal, and the obstructed jets form a set of codimension (m-2)(m-3)-2.
"""

import random

from harmjet import linalg
from harmjet.analysis import (
    codim,
    domain_dimension,
    laplacian_matrix,
    phi_jacobian,
    random_h,
    tangent_kernel_dimension,
)
from harmjet.polyring import GradedPoly

rng = random.Random(5)
for m in (5, 6, 7, 8):
    for label, h in (("h = 0", GradedPoly()), ("random h", random_h(m, rng))):
        jac = phi_jacobian(m, h)
        diag = all(jac.block(k, k) == laplacian_matrix(m + k, -1) for k in range(1, m - 3))
        print(f"m={m} {label:8s} Jacobian {jac.shape[0]}x{jac.shape[1]}"
              f" rank {linalg.rank(jac.matrix)}  -Laplacian diagonal: {diag}")

print("\n m  dim  codim  kernel")
for m in range(5, 9):
    print(f"{m:2d} {domain_dimension(m):4d} {codim(m):6d} {tangent_kernel_dimension(m):7d}")
