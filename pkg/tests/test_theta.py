import random

import pytest
import sympy as sp

from harmjet import linalg
from harmjet.errors import DomainError
from harmjet.jetflow import random_hompoly
from harmjet.polyring import CxHomPoly, HomPoly, expand_re_im_zm, hp_mul, r2_power
from harmjet.rational import Q
from harmjet.theta import (
    M_of_k,
    adjoint,
    build_theta,
    circle_moment,
    gram_matrix,
    inner_product,
    irr_inclusion_table,
    project,
    rank_report,
    solve_in_image,
    theta_apply,
    theta_complex,
    theta_matrix_complex,
    theta_matrix_real,
    theta_real,
    zbar_z,
)

x = HomPoly.monomial(1, 0)
y = HomPoly.monomial(0, 1)


def _sympy_rank(a) -> int:
    return sp.Matrix([[sp.Rational(int(c.numerator), int(c.denominator)) for c in row] for row in a]).rank()


@pytest.mark.parametrize(
    "m,k,shape,rank", [(5, 1, (5, 4), 4), (2, 1, (2, 4), 2), (6, 3, (8, 8), 8)]
)
def test_build_examples(m, k, shape, rank):
    op = build_theta(m, k)
    assert op.shape == shape
    assert (len(op.matrix), len(op.matrix[0])) == shape
    assert op.rank == rank


def test_build_rejects_bad_input():
    with pytest.raises(DomainError):
        build_theta(1, 1)
    with pytest.raises(DomainError):
        build_theta(5, 0)
    with pytest.raises(DomainError):
        build_theta(5, 1, "sobolev")


@pytest.mark.parametrize("m,k", [(3, 2), (5, 1), (5, 4), (7, 3), (8, 6), (9, 5)])
def test_rank_matches_sympy(m, k):
    assert build_theta(m, k).rank == _sympy_rank(theta_matrix_real(m, k))


def test_apply_examples():
    op = build_theta(5, 1)
    assert theta_apply(op, CxHomPoly(x, y)) == expand_re_im_zm(4)[0] * 50
    op2 = build_theta(5, 2)
    q = zbar_z(1, 1).times_i()
    expected = -50 * hp_mul(r2_power(1), expand_re_im_zm(3)[1])
    assert theta_apply(op2, q) == expected
    assert expected == HomPoly.from_terms(5, {(4, 1): -150, (2, 3): -100, (0, 5): 50})
    for m, k in [(3, 1), (6, 4)]:
        op = build_theta(m, k)
        assert theta_apply(op, CxHomPoly(HomPoly.zero(k))).is_zero()


def test_apply_rejects_wrong_degree():
    with pytest.raises(DomainError):
        theta_apply(build_theta(5, 2), CxHomPoly(x, y))


@pytest.mark.parametrize(
    "m,k,rank,inj,surj", [(7, 1, 4, True, False), (5, 3, 7, False, True), (4, 1, 4, True, True)]
)
def test_rank_report_examples(m, k, rank, inj, surj):
    rep = rank_report(build_theta(m, k))
    assert (rep.rank, rep.injective, rep.surjective) == (rank, inj, surj)
    assert rep.M_k == M_of_k(m, k)


def test_solve_examples():
    op = build_theta(5, 1)
    assert not solve_in_image(op, r2_power(2)).in_image
    out = solve_in_image(op, expand_re_im_zm(4)[0])
    assert out.in_image
    assert out.preimage == (x * Q(1, 50), y * Q(1, 50))
    zero = solve_in_image(op, HomPoly.zero(4))
    assert zero.in_image and zero.residual.is_zero()
    assert all(p.is_zero() for p in zero.preimage)


def test_solve_rejects_wrong_degree():
    with pytest.raises(DomainError):
        solve_in_image(build_theta(5, 1), HomPoly.zero(3))


@pytest.mark.parametrize("m", range(2, 9))
def test_explicit_images(m):
    # Theta(zbar^q z^n) = 2m (n+m-1) (x^2+y^2)^q Re z^p, i-companion gives -Im
    for k in range(1, 8):
        for q in range(M_of_k(m, k) + 1):
            n = k - q
            p = k + m - 2 - 2 * q
            re, im = expand_re_im_zm(p)
            c = 2 * m * (n + m - 1)
            assert theta_complex(m, zbar_z(q, n)) == hp_mul(r2_power(q), re) * c
            assert theta_complex(m, zbar_z(q, n).times_i()) == hp_mul(r2_power(q), im) * (-c)


@pytest.mark.parametrize("m", range(2, 8))
def test_two_paths(m):
    for k in range(1, 9):
        assert theta_matrix_real(m, k) == theta_matrix_complex(m, k)


def test_two_paths_pointwise():
    rng = random.Random(7)
    for _ in range(20):
        m, k = rng.randint(2, 9), rng.randint(1, 7)
        q1, q2 = random_hompoly(k, rng), random_hompoly(k, rng)
        assert theta_real(m, q1, q2) == theta_complex(m, CxHomPoly(q1, q2))


def test_circle_moments():
    assert circle_moment(0, 0) == 1
    assert circle_moment(2, 0) == Q(1, 2)
    assert circle_moment(2, 2) == Q(1, 8)
    assert circle_moment(4, 0) == Q(3, 8)
    assert circle_moment(1, 1) == 0


def test_circle_moment_matches_integral():
    t = sp.symbols("t")
    for a in range(0, 7):
        for b in range(0, 7 - a):
            val = sp.integrate(sp.cos(t) ** a * sp.sin(t) ** b, (t, 0, 2 * sp.pi)) / (2 * sp.pi)
            val = sp.nsimplify(val)
            assert circle_moment(a, b) == Q(int(val.p), int(val.q))


def test_irr_summands_orthogonal_under_circle():
    from harmjet.polyring import irr_basis

    n = 8
    basis = [p for q in range(n // 2 + 1) for p in irr_basis(n, q) if not p.is_zero()]
    for i, p in enumerate(basis):
        for j, r in enumerate(basis):
            if i != j:
                assert inner_product(p, r) == 0


@pytest.mark.parametrize("inner", ["circle", "coefficient"])
def test_projection_idempotent_and_self_adjoint(inner):
    rng = random.Random(11)
    for _ in range(15):
        m, k = rng.randint(2, 9), rng.randint(1, 8)
        op = build_theta(m, k, inner)
        P = [list(r) for r in op.projector]
        assert linalg.matmul(P, P) == P
        G = [list(r) for r in op.gram_target]
        # G P is symmetric exactly when P is G-orthogonal
        GP = linalg.matmul(G, P)
        assert GP == linalg.transpose(GP)


def test_adjoint_identity():
    rng = random.Random(3)
    for _ in range(15):
        m, k = rng.randint(2, 8), rng.randint(1, 6)
        op = build_theta(m, k)
        q1, q2 = random_hompoly(k, rng), random_hompoly(k, rng)
        phi = random_hompoly(k + m - 2, rng)
        a1, a2 = adjoint(op, phi)
        lhs = inner_product(theta_apply(op, CxHomPoly(q1, q2)), phi)
        rhs = inner_product(q1, a1) + inner_product(q2, a2)
        assert lhs == rhs


def test_solve_preimage_solves_projected_equation():
    rng = random.Random(5)
    for _ in range(25):
        m, k = rng.randint(2, 9), rng.randint(1, 7)
        op = build_theta(m, k)
        phi = random_hompoly(k + m - 2, rng)
        out = solve_in_image(op, phi)
        assert theta_apply(op, CxHomPoly(*out.preimage)) == out.projection
        assert out.projection + out.residual == phi
        assert project(op, out.residual).is_zero()


@pytest.mark.parametrize("m", range(5, 10))
def test_missed_direction(m):
    op = build_theta(m, m - 4)
    table = dict(irr_inclusion_table(op))
    assert table == {q: q <= m - 4 for q in range(m - 2)}
    assert not solve_in_image(op, r2_power(m - 3)).in_image
    assert solve_in_image(op, r2_power(m - 3)).residual == r2_power(m - 3)


def test_gram_positive_definite():
    for n in range(0, 8):
        g = [list(r) for r in gram_matrix(n)]
        assert linalg.rank(g) == n + 1
