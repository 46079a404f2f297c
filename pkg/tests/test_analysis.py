import random

import pytest

from harmjet import linalg
from harmjet.analysis import (
    codim,
    composed_derivative,
    domain_blocks,
    domain_dimension,
    lagrange_derivative_weights,
    laplacian_matrix,
    phi_jacobian,
    phi_of_h,
    random_h,
    submersion_check,
    tangent_kernel_dimension,
)
from harmjet.errors import DomainError
from harmjet.jetflow import make_fstar
from harmjet.polyring import GradedPoly, HomPoly, r2_power
from harmjet.rational import Q


def test_phi_of_zero():
    for m in (5, 6, 8):
        assert all(p.is_zero() for p in phi_of_h(m, GradedPoly()))
        assert len(phi_of_h(m, GradedPoly())) == m - 4


def test_phi_of_fstar_tail():
    for C in (Q(1), Q(-5, 2)):
        phis = phi_of_h(5, GradedPoly([r2_power(3) * C]))
        assert phis == [r2_power(2) * (-36 * C)]


def test_top_degree_h_does_not_reach_early_phis():
    rng = random.Random(0)
    for m in (6, 7, 8):
        h = random_h(m, rng).truncate(2 * m - 4, 2 * m - 4)
        phis = phi_of_h(m, h)
        assert all(p.is_zero() for p in phis[: m - 5])


def test_phi_of_h_rejects_out_of_range():
    with pytest.raises(DomainError):
        phi_of_h(5, GradedPoly([r2_power(4)]))
    with pytest.raises(DomainError):
        phi_of_h(4, GradedPoly())


def test_lagrange_weights():
    nodes = [Q(t) for t in range(4)]
    w = lagrange_derivative_weights(nodes)
    # exact for cubics: d/dt (t^3 - 2t^2 + 5t) at 0 = 5
    vals = [t**3 - 2 * t**2 + 5 * t for t in nodes]
    assert sum(a * b for a, b in zip(w, vals)) == 5


def test_jacobian_m5():
    jac = phi_jacobian(5, GradedPoly())
    assert jac.shape == (5, 7)
    assert jac.matrix == laplacian_matrix(6, -1)
    assert linalg.rank(jac.matrix) == 5
    h = random_h(5, random.Random(1))
    assert phi_jacobian(5, h).matrix == jac.matrix


def test_jacobian_m6():
    jac = phi_jacobian(6, GradedPoly())
    assert jac.shape == (13, 17)
    assert linalg.rank(jac.matrix) == 13
    assert jac.block(1, 1) == laplacian_matrix(7, -1)
    assert jac.block(2, 2) == laplacian_matrix(8, -1)
    assert all(c == 0 for row in jac.block(1, 2) for c in row)


@pytest.mark.parametrize("m", [6, 7, 8])
def test_diagonal_blocks_independent_of_h(m):
    rng = random.Random(m)
    jac0 = phi_jacobian(m, GradedPoly())
    jac = phi_jacobian(m, random_h(m, rng))
    for k in range(1, m - 3):
        assert jac.block(k, k) == jac0.block(k, k) == laplacian_matrix(m + k, -1)


def test_jacobian_directional_derivative():
    # compare J v with an exact interpolated derivative along a non-coordinate direction
    m = 7
    rng = random.Random(21)
    h, v = random_h(m, rng), random_h(m, rng)
    jac = phi_jacobian(m, h)
    nodes = [Q(t) for t in range(-2, 2)]
    w = lagrange_derivative_weights(nodes)
    samples = [phi_of_h(m, h + v.scale(t)) for t in nodes]
    expected = []
    for k in range(m - 4):
        acc = [Q(0)] * (samples[0][k].degree + 1)
        for wt, s in zip(w, samples):
            acc = [a + wt * c for a, c in zip(acc, s[k].coeffs)]
        expected.extend(acc)
    vec = [c for d, _ in domain_blocks(m) for c in v[d].coeffs]
    assert linalg.matvec(jac.matrix, vec) == expected


def test_submersion_examples():
    assert submersion_check(5, GradedPoly())
    assert submersion_check(7, random_h(7, random.Random(5)))
    assert submersion_check(6, make_fstar(6, 1).h())


def test_codim_examples():
    assert [codim(m) for m in (5, 6, 7)] == [4, 10, 18]
    with pytest.raises(DomainError):
        codim(4)


def test_codim_sum_identity():
    for m in range(5, 51):
        assert codim(m) == sum(2 * (k + 1) for k in range(1, m - 3))


@pytest.mark.parametrize("m", [5, 6, 7])
def test_kernel_dimensions(m):
    dim = domain_dimension(m)
    assert tangent_kernel_dimension(m) == dim - codim(m)
    # the cokernel-residual composition has a smaller image
    assert tangent_kernel_dimension(m, composition="residual") == dim - (m - 3) * (m - 4) // 2


def test_composed_derivative_rejects_unknown():
    with pytest.raises(DomainError):
        composed_derivative(5, GradedPoly(), composition="other")


def test_random_h_support():
    h = random_h(8, random.Random(0))
    assert h.degrees() == list(range(9, 13))
    assert isinstance(h[9], HomPoly)
