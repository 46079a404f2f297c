"""The linearised operator ``Theta_k`` and exact solves against its image.

For a leading term ``f0 = Re z^m`` the operator sends a pair of degree-``k``
polynomials ``(Q1, Q2)`` to

    (Q1 f0_x + Q2 f0_y)_x + (Q2 f0_x - Q1 f0_y)_y,

i.e. ``d(L(Q1, Q2) df0)`` with ``L(a, b) = [[-b, a], [a, b]]``.  In complex
notation with ``Q = Q1 + i Q2`` the same map is ``2m Re d_z(Q z^(m-1))``.
Both constructions are implemented; they have to agree.

Domain coordinates are the monomial coefficients of ``Q1`` followed by those
of ``Q2``; target coordinates are the monomial coefficients of
``R_{k+m-2}[x,y]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod

from harmjet import linalg
from harmjet.errors import DomainError
from harmjet.polyring import (
    CxHomPoly,
    HomPoly,
    derive,
    expand_re_im_zm,
    hp_mul,
    irr_basis,
)
from harmjet.rational import Q, QType

INNER_PRODUCTS = ("circle", "coefficient")


@dataclass(frozen=True)
class LMatrix:
    """The traceless matrix ``[[-b, a], [a, b]]``."""

    a: object
    b: object

    def rows(self):
        return ((-self.b, self.a), (self.a, self.b))


def _double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


@lru_cache(maxsize=None)
def circle_moment(a: int, b: int) -> QType:
    """Mean of ``cos^a t sin^b t`` over the circle."""
    if a % 2 or b % 2:
        return Q(0)
    return Q(
        _double_factorial(a - 1) * _double_factorial(b - 1), _double_factorial(a + b)
    )


@lru_cache(maxsize=None)
def gram_matrix(n: int, inner: str = "circle") -> tuple[tuple[QType, ...], ...]:
    """Gram matrix of the monomial basis of ``R_n[x,y]``."""
    if inner == "circle":
        return tuple(
            tuple(circle_moment(2 * n - j1 - j2, j1 + j2) for j2 in range(n + 1))
            for j1 in range(n + 1)
        )
    if inner == "coefficient":
        return tuple(
            tuple(Q(int(j1 == j2)) for j2 in range(n + 1)) for j1 in range(n + 1)
        )
    raise DomainError(f"unknown inner product {inner!r}; choose from {INNER_PRODUCTS}")


def inner_product(p: HomPoly, q: HomPoly, inner: str = "circle") -> QType:
    if p.degree != q.degree:
        raise DomainError("inner product needs equal degrees")
    g = gram_matrix(p.degree, inner)
    return sum(
        (a * g[i][j] * b for i, a in enumerate(p.coeffs) if a for j, b in enumerate(q.coeffs) if b),
        Q(0),
    )


def theta_real(m: int, q1: HomPoly, q2: HomPoly) -> HomPoly:
    """``d(L(Q1, Q2) df0) / dx^dy`` computed with real partial derivatives."""
    f0 = expand_re_im_zm(m)[0]
    f0x, f0y = derive(f0, "x"), derive(f0, "y")
    first = hp_mul(q1, f0x) + hp_mul(q2, f0y)
    second = hp_mul(q2, f0x) - hp_mul(q1, f0y)
    return derive(first, "x") + derive(second, "y")


def theta_complex(m: int, q: CxHomPoly) -> HomPoly:
    """``2m Re d_z(Q z^(m-1))``."""
    return (q * CxHomPoly.z_power(m - 1)).d_z().re * (2 * m)


def _unit(k: int, j: int) -> HomPoly:
    cs = [Q(0)] * (k + 1)
    cs[j] = Q(1)
    return HomPoly(k, cs)


def _theta_matrix(m: int, k: int, path: str) -> linalg.Matrix:
    zero = HomPoly.zero(k)
    cols = []
    for part in (0, 1):
        for j in range(k + 1):
            e = _unit(k, j)
            q1, q2 = (e, zero) if part == 0 else (zero, e)
            if path == "real":
                img = theta_real(m, q1, q2)
            else:
                img = theta_complex(m, CxHomPoly(q1, q2))
            cols.append(list(img.coeffs))
    return linalg.transpose(cols)


def theta_matrix_real(m: int, k: int) -> linalg.Matrix:
    return _theta_matrix(m, k, "real")


def theta_matrix_complex(m: int, k: int) -> linalg.Matrix:
    return _theta_matrix(m, k, "complex")


def _freeze(a: linalg.Matrix) -> tuple[tuple[QType, ...], ...]:
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class ThetaOperator:
    """Exact matrix of ``Theta_k`` together with the maps needed for solving.

    ``projector`` is the orthogonal projection onto the image with respect
    to ``gram_target``; ``preimage_map`` sends an image element to its
    preimage of least ``gram_domain`` norm; ``adjoint_map`` is the adjoint
    with respect to both Gram matrices.
    """

    m: int
    k: int
    inner: str
    matrix: tuple
    gram_domain: tuple
    gram_target: tuple
    rank: int
    projector: tuple
    preimage_map: tuple
    adjoint_map: tuple

    @property
    def target_degree(self) -> int:
        return self.k + self.m - 2

    @property
    def shape(self) -> tuple[int, int]:
        return (self.k + self.m - 1, 2 * (self.k + 1))


def _block_diag(a, b) -> linalg.Matrix:
    na, nb = len(a), len(b)
    out = linalg.zeros(na + nb, na + nb)
    for i in range(na):
        out[i][:na] = list(a[i])
    for i in range(nb):
        out[na + i][na:] = list(b[i])
    return out


@lru_cache(maxsize=None)
def build_theta(m: int, k: int, inner: str = "circle") -> ThetaOperator:
    if m < 2 or k < 1:
        raise DomainError(f"need m >= 2 and k >= 1, got m={m}, k={k}")
    a = theta_matrix_real(m, k)
    gt = [list(r) for r in gram_matrix(k + m - 2, inner)]
    gk = gram_matrix(k, inner)
    gd = _block_diag(gk, gk)
    nd = 2 * (k + 1)

    _, pivots = linalg.rref(a)
    r = len(pivots)
    b = linalg.columns(a, pivots)
    bt_gt = linalg.matmul(linalg.transpose(b), gt)
    w = linalg.matmul(linalg.inverse(linalg.matmul(bt_gt, b)), bt_gt)
    proj = linalg.matmul(b, w)

    # particular preimage on the pivot columns, then remove the kernel part
    embed = linalg.zeros(nd, r)
    for t, p in enumerate(pivots):
        embed[p][t] = Q(1)
    particular = linalg.matmul(embed, w)
    ker = linalg.nullspace(a)
    if ker and ker[0]:
        nt_gd = linalg.matmul(linalg.transpose(ker), gd)
        corr = linalg.matmul(
            ker, linalg.matmul(linalg.inverse(linalg.matmul(nt_gd, ker)), nt_gd)
        )
        pre = linalg.matmul(linalg.sub(linalg.identity(nd), corr), particular)
    else:
        pre = particular

    adj = linalg.matmul(
        linalg.inverse(gd), linalg.matmul(linalg.transpose(a), gt)
    )
    return ThetaOperator(
        m=m,
        k=k,
        inner=inner,
        matrix=_freeze(a),
        gram_domain=_freeze(gd),
        gram_target=_freeze(gt),
        rank=r,
        projector=_freeze(proj),
        preimage_map=_freeze(pre),
        adjoint_map=_freeze(adj),
    )


def _split(op: ThetaOperator, v) -> tuple[HomPoly, HomPoly]:
    k = op.k
    return HomPoly(k, v[: k + 1]), HomPoly(k, v[k + 1 :])


def theta_apply(op: ThetaOperator, q: CxHomPoly) -> HomPoly:
    if q.degree != op.k:
        raise DomainError(f"Theta_{op.k} needs degree {op.k}, got {q.degree}")
    v = list(q.re.coeffs) + list(q.im.coeffs)
    return HomPoly(op.target_degree, linalg.matvec(op.matrix, v))


def adjoint(op: ThetaOperator, phi: HomPoly) -> tuple[HomPoly, HomPoly]:
    """Literal adjoint ``Theta_k^*`` for the operator's inner products."""
    _check_target(op, phi)
    return _split(op, linalg.matvec(op.adjoint_map, phi.coeffs))


def _check_target(op: ThetaOperator, phi: HomPoly) -> None:
    if phi.degree != op.target_degree:
        raise DomainError(
            f"right-hand side must have degree {op.target_degree}, got {phi.degree}"
        )


@dataclass(frozen=True)
class SolveOutcome:
    in_image: bool
    preimage: tuple[HomPoly, HomPoly] | None
    projection: HomPoly
    residual: HomPoly


def project(op: ThetaOperator, phi: HomPoly) -> HomPoly:
    _check_target(op, phi)
    return HomPoly(phi.degree, linalg.matvec(op.projector, phi.coeffs))


def solve_in_image(op: ThetaOperator, phi: HomPoly) -> SolveOutcome:
    """Decide ``phi in Im Theta_k`` and solve ``Theta_k(Q) = P phi``.

    The returned preimage always solves the projected equation; it solves
    the original one exactly when ``in_image`` is true.
    """
    proj = project(op, phi)
    residual = phi - proj
    q = _split(op, linalg.matvec(op.preimage_map, proj.coeffs))
    in_image = residual.is_zero()
    return SolveOutcome(
        in_image=in_image,
        preimage=q,
        projection=proj,
        residual=residual,
    )


@dataclass(frozen=True)
class RankReport:
    rank: int
    injective: bool
    surjective: bool
    M_k: int


def M_of_k(m: int, k: int) -> int:
    return min(k, (k + m - 2) // 2)


def rank_report(op: ThetaOperator) -> RankReport:
    rows, cols = op.shape
    return RankReport(
        rank=op.rank,
        injective=op.rank == cols,
        surjective=op.rank == rows,
        M_k=M_of_k(op.m, op.k),
    )


def irr_inclusion_table(op: ThetaOperator) -> list[tuple[int, bool]]:
    """For each ``q``, whether both spanning vectors of ``Irr^q`` lie in the image."""
    n = op.target_degree
    table = []
    for q in range(n // 2 + 1):
        re, im = irr_basis(n, q)
        ok = solve_in_image(op, re).in_image and solve_in_image(op, im).in_image
        table.append((q, ok))
    return table


def zbar_z(q: int, n: int) -> CxHomPoly:
    """``zbar^q z^n``."""
    return CxHomPoly.zbar_power(q) * CxHomPoly.z_power(n)
