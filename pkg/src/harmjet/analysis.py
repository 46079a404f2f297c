"""The obstruction map ``h -> (phi_1, ..., phi_{m-4})`` and its derivative.

``h`` is the part of the jet in degrees ``m+1 .. 2m-4``.  Each ``phi_k`` is
a polynomial in the coefficients of ``h`` of degree at most ``k`` (``G_j``
is a polynomial of degree ``<= j``, and ``phi_k`` pairs ``G_j`` with a
linear function of ``h`` for ``j < k``), so the Jacobian is recovered exactly
by Lagrange interpolation along coordinate lines.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from harmjet import linalg
from harmjet.errors import DomainError
from harmjet.jetflow import Jet, StarJet, random_hompoly, step
from harmjet.polyring import GradedPoly, HomPoly, laplace_flat
from harmjet.rational import Q, QType
from harmjet.theta import build_theta


def _check(m: int, h: GradedPoly) -> None:
    if m < 5:
        raise DomainError("the obstruction map needs m >= 5")
    bad = [d for d in h.degrees() if not m + 1 <= d <= 2 * m - 4]
    if bad:
        raise DomainError(f"h has components outside degrees {m + 1}..{2 * m - 4}: {bad}")


def domain_blocks(m: int) -> list[tuple[int, int]]:
    """``(degree, dimension)`` of the summands ``R_{m+l}``, ``l = 1 .. m-4``."""
    return [(m + l, m + l + 1) for l in range(1, m - 3)]


def target_blocks(m: int) -> list[tuple[int, int]]:
    """``(degree, dimension)`` of the summands ``R_{m+k-2}``, ``k = 1 .. m-4``."""
    return [(m + k - 2, m + k - 1) for k in range(1, m - 3)]


def _steps_from(T: StarJet, f: Jet, k0: int, inner: str):
    """``phi_k`` for ``k = k0 .. m-4`` continuing from ``T = T_{k0-1}``."""
    out = []
    for k in range(k0, f.m - 3):
        rec, T = step(T, f, k, inner)
        out.append(rec.phi)
    return out


def phi_of_h(m: int, h: GradedPoly, inner: str = "circle") -> list[HomPoly]:
    _check(m, h)
    f = Jet(m, h, order=2 * m - 4)
    return _steps_from(StarJet.flat(m), f, 1, inner)


def _stars(m: int, h: GradedPoly, inner: str) -> tuple[list[StarJet], list[HomPoly]]:
    f = Jet(m, h, order=2 * m - 4)
    T = StarJet.flat(m)
    stars, phis = [T], []
    for k in range(1, m - 3):
        rec, T = step(T, f, k, inner)
        stars.append(T)
        phis.append(rec.phi)
    return stars, phis


def lagrange_derivative_weights(nodes: list[QType], at: QType = Q(0)) -> list[QType]:
    """Weights ``w`` with ``p'(at) = sum w_i p(nodes_i)`` for ``deg p < len(nodes)``."""
    weights = []
    for i, ti in enumerate(nodes):
        total = Q(0)
        for l, tl in enumerate(nodes):
            if l == i:
                continue
            term = Q(1) / (ti - tl)
            for j, tj in enumerate(nodes):
                if j not in (i, l):
                    term *= (at - tj) / (ti - tj)
            total += term
        weights.append(total)
    return weights


def laplacian_matrix(n: int, sign: int = 1) -> linalg.Matrix:
    """Matrix of ``sign * Delta_st : R_n -> R_{n-2}`` in monomial coordinates."""
    cols = []
    for j in range(n + 1):
        e = HomPoly(n, [Q(int(i == j)) for i in range(n + 1)])
        cols.append([sign * c for c in laplace_flat(e).coeffs])
    return linalg.transpose(cols)


@dataclass(frozen=True)
class PhiJacobian:
    m: int
    base_point: GradedPoly
    matrix: linalg.Matrix
    row_offsets: tuple[int, ...]
    col_offsets: tuple[int, ...]

    def block(self, k: int, l: int) -> linalg.Matrix:
        """Derivative of ``phi_k`` with respect to the degree-``m+l`` part of ``h``."""
        r0, r1 = self.row_offsets[k - 1], self.row_offsets[k]
        c0, c1 = self.col_offsets[l - 1], self.col_offsets[l]
        return [row[c0:c1] for row in self.matrix[r0:r1]]

    @property
    def shape(self) -> tuple[int, int]:
        return self.row_offsets[-1], self.col_offsets[-1]


def _offsets(blocks) -> tuple[int, ...]:
    out = [0]
    for _, dim in blocks:
        out.append(out[-1] + dim)
    return tuple(out)


def phi_jacobian(m: int, h: GradedPoly, inner: str = "circle") -> PhiJacobian:
    """Exact derivative of ``phi`` at ``h``.

    For a coordinate direction ``e`` in degree ``m+l`` the steps before
    ``l`` do not see ``e``, so the perturbed runs restart from the base
    ``T_{l-1}``.
    """
    _check(m, h)
    stars, base_phis = _stars(m, h, inner)
    n_steps = m - 4
    nodes = [Q(t) for t in range(n_steps + 1)]
    weights = lagrange_derivative_weights(nodes)
    row_off = _offsets(target_blocks(m))
    col_off = _offsets(domain_blocks(m))
    n_rows = row_off[-1]
    columns = []
    for l, (deg, dim) in enumerate(domain_blocks(m), start=1):
        for j in range(dim):
            e = HomPoly(deg, [Q(int(i == j)) for i in range(dim)])
            # derivative of phi_k for k >= l; phi_k with k < l is constant
            w0 = weights[0]
            deriv = [[w0 * c for c in base_phis[k - 1].coeffs] for k in range(l, n_steps + 1)]
            for t, w in zip(nodes[1:], weights[1:]):
                f = Jet(m, h + GradedPoly([e * t]), order=2 * m - 4)
                for idx, phi in enumerate(_steps_from(stars[l - 1], f, l, inner)):
                    deriv[idx] = [a + w * c for a, c in zip(deriv[idx], phi.coeffs)]
            col = [Q(0)] * row_off[l - 1]
            for d in deriv:
                col.extend(d)
            assert len(col) == n_rows
            columns.append(col)
    return PhiJacobian(m, h, linalg.transpose(columns), row_off, col_off)


def submersion_check(m: int, h: GradedPoly, inner: str = "circle") -> bool:
    jac = phi_jacobian(m, h, inner)
    return linalg.rank(jac.matrix) == sum(m + k - 1 for k in range(1, m - 3))


def codim(m: int) -> int:
    """Codimension ``(m-2)(m-3) - 2`` of the zero set of ``Theta^* phi``."""
    if m < 5:
        raise DomainError("codimension count needs m >= 5")
    value = (m - 2) * (m - 3) - 2
    assert value == sum(2 * (k + 1) for k in range(1, m - 3))
    return value


def domain_dimension(m: int) -> int:
    return sum(dim for _, dim in domain_blocks(m))


def _block_diag(blocks: list[linalg.Matrix]) -> linalg.Matrix:
    rows = sum(len(b) for b in blocks)
    cols = sum(len(b[0]) for b in blocks)
    out = linalg.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[r + i][c : c + len(row)] = list(row)
        r += len(b)
        c += len(b[0])
    return out


def composed_derivative(
    m: int, h: GradedPoly, composition: str = "adjoint", inner: str = "circle"
) -> linalg.Matrix:
    """Derivative at ``h`` of ``Theta^* o phi`` or of ``(1 - P_Theta) o phi``.

    ``"adjoint"`` uses the literal adjoints ``Theta_k^*``; ``"residual"``
    uses the cokernel residual maps ``1 - P_{Theta_k}``.  Both have the
    same zero set of the undifferentiated map only through ``Im Theta_k``
    membership, and their ranks differ.
    """
    jac = phi_jacobian(m, h, inner).matrix
    ops = [build_theta(m, k, inner) for k in range(1, m - 3)]
    if composition == "adjoint":
        left = _block_diag([[list(r) for r in op.adjoint_map] for op in ops])
    elif composition == "residual":
        left = _block_diag(
            [linalg.sub(linalg.identity(len(op.projector)), [list(r) for r in op.projector]) for op in ops]
        )
    else:
        raise DomainError(f"unknown composition {composition!r}")
    return linalg.matmul(left, jac)


def tangent_kernel_dimension(
    m: int, h: GradedPoly | None = None, composition: str = "adjoint", inner: str = "circle"
) -> int:
    h = GradedPoly() if h is None else h
    mat = composed_derivative(m, h, composition, inner)
    return domain_dimension(m) - linalg.rank(mat)


def random_h(m: int, rng: random.Random, size: int = 3) -> GradedPoly:
    """Random point of ``R_{m+1 <= 2m-4}[x,y]`` with small rational coefficients."""
    return GradedPoly([random_hompoly(d, rng, size) for d, _ in domain_blocks(m)])
