import math
import random

import numpy as np
import pytest
import sympy as sp

from harmjet.errors import DomainError
from harmjet.geometry import (
    MetricJet,
    default_radii,
    evaluate_float,
    laplacian_graded,
    metric_from_star,
    residual_decay,
    residual_polynomial,
    star_from_metric,
)
from harmjet.jetflow import G0, Jet, StarJet, make_fstar, random_hompoly, random_jet, run
from harmjet.polyring import GradedPoly, HomPoly, r2_power

X, Y = sp.symbols("x y")

x = HomPoly.monomial(1, 0)


def _sym(g: GradedPoly):
    return sp.Integer(0) + sum(
        sp.Rational(int(c.numerator), int(c.denominator)) * X**i * Y**j
        for _, p in g.items()
        for i, j, c in p.terms()
    )


def test_star_from_identity():
    T = star_from_metric(MetricJet.identity(), 0)
    assert T.component(0) == G0


def test_star_from_metric_degree_one():
    g = MetricJet.identity()
    g = MetricJet(g.g11, GradedPoly([x]), g.g22)
    T = star_from_metric(g, 1)
    assert T.component(1) == ((-x, HomPoly.zero(1)), (HomPoly.zero(1), x))


def test_metric_from_flat_star():
    g = metric_from_star(StarJet.flat(5))
    assert g == MetricJet.identity()
    assert g.base_is_identity()


def test_metric_from_successful_run():
    f = random_jet(6, 9, 14, random.Random(2))
    g = metric_from_star(run(f, 4, check=False).metric)
    assert g.base_is_identity()


def test_metric_from_star_rejects_trace():
    T = StarJet.flat(5).extend(((x, HomPoly.zero(1)), (HomPoly.zero(1), HomPoly.zero(1))))
    with pytest.raises(DomainError):
        metric_from_star(T)


def test_star_metric_roundtrip():
    rng = random.Random(8)
    g = MetricJet(
        GradedPoly([HomPoly(0, [1])] + [random_hompoly(d, rng) for d in range(1, 4)]),
        GradedPoly([random_hompoly(d, rng) for d in range(1, 4)]),
        GradedPoly([HomPoly(0, [1])] + [random_hompoly(d, rng) for d in range(1, 4)]),
    )
    assert metric_from_star(star_from_metric(g, 3)) == g


def test_laplacian_examples():
    for m in (2, 5, 9):
        assert laplacian_graded(MetricJet.identity(), Jet(m), 12).is_zero()
    lap = laplacian_graded(MetricJet.identity(), make_fstar(5, 1), 4)
    assert lap.min_degree() == 4 and lap[4] == r2_power(2) * 36


def test_laplacian_matches_sympy():
    rng = random.Random(12)
    f = random_jet(5, 6, 9, rng)
    gs = [GradedPoly([HomPoly(0, [1])] + [random_hompoly(d, rng) for d in (1, 2)]) for _ in range(2)]
    g = MetricJet(gs[0], GradedPoly([random_hompoly(d, rng) for d in (1, 2)]), gs[1])
    D = 6
    F, a, b, c = _sym(f.as_graded()), _sym(g.g11), _sym(g.g12), _sym(g.g22)
    expr = sp.expand(
        sp.diff(a * sp.diff(F, X) + b * sp.diff(F, Y), X)
        + sp.diff(b * sp.diff(F, X) + c * sp.diff(F, Y), Y)
    )
    poly = sp.Poly(expr, X, Y)
    low = sum((coef * X**i * Y**j for (i, j), coef in poly.terms() if i + j <= D), sp.Integer(0))
    assert sp.expand(_sym(laplacian_graded(g, f, D)) - low) == 0


@pytest.mark.parametrize("m", [5, 6, 7])
def test_run_metric_kills_low_degrees(m):
    f = random_jet(m, 2 * m - 3, 2 * m + 4, random.Random(m))
    K = m
    T = run(f, K, check=False).metric
    lap = laplacian_graded(metric_from_star(T), f, K + m - 2)
    assert lap.is_zero()


def test_residual_polynomial_lowest_degree():
    m, K = 6, 3
    f = random_jet(m, 2 * m - 3, 2 * m + 5, random.Random(1))
    res = residual_polynomial(run(f, K, check=False).metric, f)
    assert res.min_degree() >= K + m - 1


def test_evaluate_float_matches_exact():
    rng = random.Random(3)
    g = GradedPoly([random_hompoly(d, rng) for d in range(0, 9)])
    pts = [(0.3, -0.7), (1.1, 0.25), (-0.5, -0.5)]
    xs, ys = np.array([p[0] for p in pts]), np.array([p[1] for p in pts])
    vals = evaluate_float(g, xs, ys)
    for (a, b), v in zip(pts, vals):
        assert v == pytest.approx(float(_sym(g).subs({X: a, Y: b})), rel=1e-12)


def test_decay_equivalent_jet():
    f = random_jet(5, 7, 14, random.Random(4))
    probe = residual_decay(run(f, 2, check=False).metric, f)
    assert probe.fitted_slope >= 6 - 0.2


def test_decay_fstar_flat():
    f = make_fstar(5, 1)
    probe = residual_decay(StarJet.flat(5), f)
    assert probe.fitted_slope == pytest.approx(4.0, abs=0.05)


def test_decay_zero_residual():
    probe = residual_decay(StarJet.flat(6), Jet(6))
    assert math.isinf(probe.fitted_slope)
    assert not probe.values.any()


def test_decay_validates_radii():
    f = make_fstar(5, 1)
    T = StarJet.flat(5)
    with pytest.raises(DomainError):
        residual_decay(T, f, radii=[])
    with pytest.raises(DomainError):
        residual_decay(T, f, radii=[0.5, 0.25, 0.125])
    with pytest.raises(DomainError):
        residual_decay(T, f, radii=[0.1, 0.2, 0.3, 0.4])
    with pytest.raises(DomainError):
        residual_decay(T, f, radii=[2.0, 0.5, 0.25, 0.1])


def test_csv_header_and_size():
    probe = residual_decay(StarJet.flat(5), make_fstar(5, 1), angles=[0.1, 0.2])
    lines = probe.to_csv().splitlines()
    assert lines[0] == "radius,angle,abs_residual"
    assert len(lines) == 1 + len(default_radii()) * 2
    r, t, v = map(float, lines[1].split(","))
    assert r == 0.125 and t == 0.1 and v > 0
