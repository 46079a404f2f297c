"""Dense exact linear algebra over the rationals.

Matrices are lists of rows of :class:`gmpy2.mpq`.  Sizes stay
around 50 x 50 here, so plain Gauss-Jordan elimination is fast enough and
keeps every result exact.
"""

from __future__ import annotations

from typing import Sequence

from harmjet.rational import Q, QType

Matrix = list[list[QType]]

_ZERO = Q(0)
_ONE = Q(1)


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[c if isinstance(c, QType) else Q(c) for c in row] for row in rows]


def zeros(n: int, m: int) -> Matrix:
    return [[_ZERO] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = _ONE
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, v) for k, v in enumerate(row) if v]
        out.append([sum((v * col[k] for k, v in nz), _ZERO) for col in bt])
    return out


def matvec(a: Matrix, v: Sequence[QType]) -> list[QType]:
    return [sum((x * y for x, y in zip(row, v) if x), _ZERO) for row in a]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (input is not modified)."""
    m = [list(row) for row in a]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _ONE / m[r][c]
        m[r] = [v * inv for v in m[r]]
        pr = m[r]
        for i in range(n_rows):
            f = m[i][c]
            if i != r and f:
                m[i] = [v - f * w for v, w in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix) -> Matrix:
    """Basis of ``{x : a x = 0}`` returned as columns of an ``n x d`` matrix."""
    n_cols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [_ZERO] * n_cols
        v[f] = _ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    if not basis:
        return [[] for _ in range(n_cols)]
    return transpose(basis)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def solve(a: Matrix, b: Sequence[QType]) -> list[QType] | None:
    """One solution of ``a x = b`` (free variables set to 0), or ``None``."""
    n_cols = len(a[0])
    aug = [list(row) + [v] for row, v in zip(a, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == n_cols:
        return None
    x = [_ZERO] * n_cols
    for row, p in zip(red, pivots):
        x[p] = row[n_cols]
    return x


def columns(a: Matrix, idx: Sequence[int]) -> Matrix:
    return [[row[i] for i in idx] for row in a]
