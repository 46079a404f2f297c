"""Metric jets, their Hodge-star matrices, and the coordinate Laplacian.

With ``det g = 1`` the Hodge star on 1-forms has matrix
``[[-g12, -g22], [g11, g12]]`` in the basis ``(dx, dy)``, where ``gij`` are
the entries of the inverse (cotangent) metric.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from harmjet.errors import DomainError
from harmjet.jetflow import Jet, StarJet
from harmjet.polyring import GradedPoly, HomPoly


@dataclass(frozen=True)
class MetricJet:
    g11: GradedPoly
    g12: GradedPoly
    g22: GradedPoly

    @classmethod
    def identity(cls) -> "MetricJet":
        one = GradedPoly([HomPoly(0, [1])])
        return cls(one, GradedPoly(), one)

    def base_is_identity(self) -> bool:
        return (
            self.g11[0] == HomPoly(0, [1])
            and self.g22[0] == HomPoly(0, [1])
            and self.g12[0].is_zero()
        )


def star_from_metric(g: MetricJet, D: int) -> StarJet:
    entries = (
        (-g.g12.truncate(D), -g.g22.truncate(D)),
        (g.g11.truncate(D), g.g12.truncate(D)),
    )
    return StarJet(0, entries, D)


def metric_from_star(T: StarJet) -> MetricJet:
    if not T.trace().is_zero():
        raise DomainError("star jet is not traceless")
    (_, t12), (t21, t22) = T.entries
    return MetricJet(g11=t21, g12=t22, g22=-t12)


def laplacian_graded(g: MetricJet, f: Jet, D: int) -> GradedPoly:
    """``(g12 f_x + g22 f_y)_y + (g11 f_x + g12 f_y)_x`` through degree ``D``."""
    fg = f.as_graded(D + 2)
    fx, fy = fg.derive("x"), fg.derive("y")
    a = g.g12.mul(fx, D + 1) + g.g22.mul(fy, D + 1)
    b = g.g11.mul(fx, D + 1) + g.g12.mul(fy, D + 1)
    return (a.derive("y") + b.derive("x")).truncate(D)


def residual_polynomial(T: StarJet, f: Jet) -> GradedPoly:
    """The components of ``d(T df)`` that are determined by the jet.

    Through ``order-2`` for a truncated jet; for an exact polynomial the
    whole Laplacian of the truncated metric.  Degrees below ``K+m-1``
    vanish exactly when the run met no obstruction.
    """
    K = T.max_degree
    if f.order is not None:
        top = f.order - 2
    else:
        top = K + f.as_graded().max_degree() - 2
    return laplacian_graded(metric_from_star(T), f, top).truncate(top)


def _float_coeffs(p: HomPoly) -> np.ndarray:
    return np.array([float(c) for c in p.coeffs])


def evaluate_float(g: GradedPoly, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Double-precision evaluation.

    Each component uses the nested form
    ``c0 x^d + y (c1 x^(d-1) + y (c2 x^(d-2) + ...))``.
    """
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    out = np.zeros(x.shape)
    for d, p in g.items():
        c = _float_coeffs(p)
        xpow = [np.ones(x.shape)]
        for _ in range(d):
            xpow.append(xpow[-1] * x)
        acc = c[d] * xpow[0]
        for j in range(d - 1, -1, -1):
            acc = c[j] * xpow[d - j] + y * acc
        out = out + acc
    return out


@dataclass(frozen=True)
class ResidualProbe:
    radii: np.ndarray
    angles: np.ndarray
    values: np.ndarray
    fitted_slope: float

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["radius", "angle", "abs_residual"])
        for i, r in enumerate(self.radii):
            for j, t in enumerate(self.angles):
                w.writerow([repr(float(r)), repr(float(t)), repr(float(self.values[i, j]))])
        return buf.getvalue()


def default_radii() -> np.ndarray:
    return 2.0 ** -np.arange(3, 11)


def default_angles(n: int = 16) -> np.ndarray:
    # offset keeps samples off the coordinate axes
    return (np.arange(n) + 0.5) * (2 * np.pi / n)


def residual_decay(
    T: StarJet,
    f: Jet,
    radii: Sequence[float] | None = None,
    angles: Sequence[float] | None = None,
) -> ResidualProbe:
    """Sample ``|d(T df)|`` on circles and fit the log-log decay slope.

    The slope is fitted to the root-mean-square over angles at each radius.
    An identically zero residual gives ``inf``.
    """
    radii = default_radii() if radii is None else np.asarray(radii, dtype=float)
    angles = default_angles() if angles is None else np.asarray(angles, dtype=float)
    if radii.size == 0 or angles.size == 0:
        raise DomainError("need at least one radius and one angle")
    if radii.size < 4:
        raise DomainError("need at least 4 radii to fit a slope")
    if np.any(np.diff(radii) >= 0) or np.any(radii <= 0) or np.any(radii >= 1):
        raise DomainError("radii must be strictly decreasing and lie in (0, 1)")

    res = residual_polynomial(T, f)
    rr, tt = np.meshgrid(radii, angles, indexing="ij")
    values = np.abs(evaluate_float(res, rr * np.cos(tt), rr * np.sin(tt)))
    if res.is_zero():
        return ResidualProbe(radii, angles, values, math.inf)
    rms = np.sqrt(np.mean(values ** 2, axis=1))
    slope = float(np.polyfit(np.log(radii), np.log(rms), 1)[0])
    return ResidualProbe(radii, angles, values, slope)
