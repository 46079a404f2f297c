"""Degree-by-degree construction of a Hodge-star jet making a jet harmonic.

A :class:`Jet` is ``Re z^m`` plus a tail of higher-degree terms.  Starting
from the flat star ``G0 = [[0, -1], [1, 0]]`` each step ``k`` computes the
right-hand side ``phi_k``, solves ``Theta_k(G11, G12) = P phi_k``, fixes
``G22`` from the unit-determinant condition and appends

    G_k = [[-G12, -G22], [G11, G12]]

to the star jet.  Steps ``k = 1 .. m-4`` may fail to be solvable; the
cokernel residuals at those steps decide equivalence to ``Re z^m``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from harmjet.errors import DomainError, JetTooShortError
from harmjet.polyring import (
    GradedPoly,
    HomPoly,
    derive,
    expand_re_im_zm,
    hp_mul,
    r2_power,
)
from harmjet.rational import Q
from harmjet.theta import SolveOutcome, build_theta, solve_in_image

EQUIVALENT = "equivalent"
NOT_EQUIVALENT = "not_equivalent"
UNDETERMINED = "undetermined"


def s_of_m(m: int) -> int:
    """Tail-vanishing threshold ``max(m, 2m - 4)`` for the normal form."""
    if m < 2:
        raise DomainError("m must be >= 2")
    return max(m, 2 * m - 4)


def obstruction_set(m: int) -> range:
    """Degrees ``k`` at which ``Theta_k`` fails to be surjective: ``1 .. m-4``."""
    return range(1, max(m - 3, 1))


@dataclass(frozen=True)
class Jet:
    """``Re z^m + tail``, known through degree ``order``.

    ``order=None`` means the jet is an exact polynomial: every coefficient
    above the tail is known to vanish.
    """

    m: int
    tail: GradedPoly = field(default_factory=GradedPoly)
    order: int | None = None

    def __post_init__(self):
        if self.m < 2:
            raise DomainError("m must be >= 2")
        low = self.tail.min_degree()
        if low != -1 and low <= self.m:
            raise DomainError(f"tail has a component of degree {low} <= m = {self.m}")
        if self.order is not None and self.tail.max_degree() > self.order:
            raise DomainError("tail extends beyond the declared order")

    @classmethod
    def from_terms(
        cls, m: int, terms: Mapping[tuple[int, int], object] = None, order: int | None = None
    ) -> "Jet":
        by_degree: dict[int, dict] = {}
        for (i, j), c in (terms or {}).items():
            by_degree.setdefault(i + j, {})[(i, j)] = c
        tail = GradedPoly({d: HomPoly.from_terms(d, t) for d, t in by_degree.items()})
        return cls(m, tail, order)

    @property
    def f0(self) -> HomPoly:
        return expand_re_im_zm(self.m)[0]

    def known_through(self, n: int) -> bool:
        return self.order is None or n <= self.order

    def require(self, n: int, what: str = "") -> None:
        if not self.known_through(n):
            raise JetTooShortError(n, self.order, what)

    def component(self, n: int) -> HomPoly:
        """``[f]_n``."""
        if n < self.m:
            return HomPoly.zero(max(n, 0))
        if n == self.m:
            return self.f0
        self.require(n)
        return self.tail[n]

    def h(self) -> GradedPoly:
        """``[f]_{m+1 <= 2m-4}``."""
        return self.tail.truncate(2 * self.m - 4, self.m + 1)

    def as_graded(self, max_degree: int | None = None) -> GradedPoly:
        top = max_degree if max_degree is not None else (
            self.order if self.order is not None else max(self.tail.max_degree(), self.m)
        )
        self.require(top)
        return (GradedPoly([self.f0]) + self.tail).truncate(top)


def make_fstar(m: int, C) -> Jet:
    """``Re z^m + C (x^2+y^2)^(m-2)`` as a jet of order ``2m - 4``."""
    C = Q(C)
    if m < 5:
        raise DomainError("f_star needs m >= 5")
    if C == 0:
        raise DomainError("f_star needs C != 0")
    return Jet(m, GradedPoly([r2_power(m - 2) * C]), order=2 * m - 4)


def random_hompoly(n: int, rng: random.Random, size: int = 5) -> HomPoly:
    return HomPoly(
        n, [Q(rng.randint(-size, size), rng.randint(1, size)) for _ in range(n + 1)]
    )


def random_jet(m: int, low: int, high: int, rng: random.Random, size: int = 5) -> Jet:
    """Jet of order ``high`` with random rational tail in degrees ``low .. high``."""
    low = max(low, m + 1)
    tail = GradedPoly([random_hompoly(d, rng, size) for d in range(low, high + 1)])
    return Jet(m, tail, order=high)


G0 = ((HomPoly(0, [0]), HomPoly(0, [-1])), (HomPoly(0, [1]), HomPoly(0, [0])))


@dataclass(frozen=True)
class StarJet:
    """``T_k = G_0 + ... + G_k`` as a 2x2 matrix of graded polynomials."""

    m: int
    entries: tuple[tuple[GradedPoly, GradedPoly], tuple[GradedPoly, GradedPoly]]
    max_degree: int

    @classmethod
    def flat(cls, m: int) -> "StarJet":
        return cls(
            m,
            tuple(tuple(GradedPoly([p]) for p in row) for row in G0),
            0,
        )

    def component(self, j: int) -> tuple[tuple[HomPoly, HomPoly], tuple[HomPoly, HomPoly]]:
        return tuple(tuple(e[j] for e in row) for row in self.entries)

    def extend(self, g: tuple[tuple[HomPoly, HomPoly], tuple[HomPoly, HomPoly]]) -> "StarJet":
        k = self.max_degree + 1
        if any(p.degree != k for row in g for p in row):
            raise DomainError(f"new star component must have degree {k}")
        entries = tuple(
            tuple(e + GradedPoly([p]) for e, p in zip(row, grow))
            for row, grow in zip(self.entries, g)
        )
        return StarJet(self.m, entries, k)

    def truncate(self, k: int) -> "StarJet":
        if k > self.max_degree:
            raise DomainError(f"star jet only known through degree {self.max_degree}")
        return StarJet(
            self.m, tuple(tuple(e.truncate(k) for e in row) for row in self.entries), k
        )

    def det_component(self, n: int) -> HomPoly:
        (t11, t12), (t21, t22) = self.entries
        return t11.component_of_product(t22, n) - t12.component_of_product(t21, n)

    def trace(self) -> GradedPoly:
        return self.entries[0][0] + self.entries[1][1]


def dTdf_component(T: StarJet, f: Jet, n: int) -> HomPoly:
    """``[d(T df)]_n`` read as a function via ``dx ^ dy``.

    The 1-form ``T df`` is ``(T11 f_x + T12 f_y) dx + (T21 f_x + T22 f_y) dy``,
    so the component is ``(T21 f_x + T22 f_y)_x - (T11 f_x + T12 f_y)_y`` in
    degree ``n``; it draws on ``[f]`` up to degree ``n + 2``.
    """
    f.require(n + 2, f"[d T df]_{n}")
    (t11, t12), (t21, t22) = T.entries
    a = HomPoly.zero(n + 1)
    b = HomPoly.zero(n + 1)
    for j in range(0, min(T.max_degree, n + 1) + 1):
        fd = f.component(n + 2 - j)
        if fd.is_zero():
            continue
        fx, fy = derive(fd, "x"), derive(fd, "y")
        a = a + hp_mul(t21[j], fx) + hp_mul(t22[j], fy)
        b = b + hp_mul(t11[j], fx) + hp_mul(t12[j], fy)
    return derive(a, "x") - derive(b, "y")


def phi_next(T_prev: StarJet, f: Jet, k: int) -> HomPoly:
    """Right-hand side ``phi_k`` of the degree-``k`` linear system.

    ``phi_k = -[d T_{k-1} df]_{k+m-2} + ([det T_{k-1}]_k f0_y)_y``.
    """
    if T_prev.max_degree != k - 1:
        raise DomainError(f"phi_{k} needs T_{k - 1}, got T_{T_prev.max_degree}")
    m = f.m
    f.require(k + m, f"phi_{k}")
    d = T_prev.det_component(k)
    f0y = derive(f.f0, "y")
    return derive(hp_mul(d, f0y), "y") - dTdf_component(T_prev, f, k + m - 2)


@dataclass(frozen=True)
class StepRecord:
    k: int
    phi: HomPoly
    outcome: SolveOutcome
    G: tuple[tuple[HomPoly, HomPoly], tuple[HomPoly, HomPoly]]


def step(T_prev: StarJet, f: Jet, k: int, inner: str = "circle") -> tuple[StepRecord, StarJet]:
    phi = phi_next(T_prev, f, k)
    outcome = solve_in_image(build_theta(f.m, k, inner), phi)
    g11, g12 = outcome.preimage
    # unit determinant in degree k: [det T_{k-1}]_k + G11 + G22 = 0
    g22 = -T_prev.det_component(k) - g11
    G = ((-g12, -g22), (g11, g12))
    return StepRecord(k, phi, outcome, G), T_prev.extend(G)


@dataclass(frozen=True)
class ObstructionReport:
    """Cokernel residuals at the problematic degrees.

    ``residuals`` maps ``k`` to the component of ``phi_k`` outside
    ``Im Theta_k``.  Residuals after ``first_failure`` are conditional: they
    depend on the projected continuation and hence on the inner product.
    """

    m: int
    S: tuple[int, ...]
    residuals: dict[int, HomPoly]
    first_failure: int | None
    verdict: str

    @property
    def complete(self) -> bool:
        return set(self.S) <= set(self.residuals)

    @property
    def conditional(self) -> tuple[int, ...]:
        if self.first_failure is None:
            return ()
        return tuple(k for k in self.residuals if k > self.first_failure)


@dataclass(frozen=True)
class RunResult:
    metric: StarJet
    report: ObstructionReport
    steps: list[StepRecord]
    assertions: list[bool]


def _report(m: int, steps: list[StepRecord]) -> ObstructionReport:
    S = tuple(obstruction_set(m))
    residuals = {s.k: s.outcome.residual for s in steps if s.k in S}
    first = next((k for k, r in residuals.items() if not r.is_zero()), None)
    if first is not None:
        verdict = NOT_EQUIVALENT
    elif set(S) <= set(residuals):
        verdict = EQUIVALENT
    else:
        verdict = UNDETERMINED
    return ObstructionReport(m, S, residuals, first, verdict)


def run(f: Jet, K: int, inner: str = "circle", check: bool = True) -> RunResult:
    """Run steps ``1 .. K``; ``check`` also verifies the assertions for each k."""
    if K < 0:
        raise DomainError("K must be nonnegative")
    f.require(K + f.m, f"run to K={K}")
    T = StarJet.flat(f.m)
    steps = []
    for k in range(1, K + 1):
        rec, T = step(T, f, k, inner)
        steps.append(rec)
    assertions = [assert_Ak(T, f, k) for k in range(1, K + 1)] if check else []
    return RunResult(T, _report(f.m, steps), steps, assertions)


def obstruction(f: Jet, inner: str = "circle") -> ObstructionReport:
    """Run exactly the problematic steps ``1 .. m-4`` and report."""
    K = len(obstruction_set(f.m))
    return run(f, K, inner, check=False).report


def assert_Ak(T: StarJet, f: Jet, k: int) -> bool:
    """Check ``[d T_k df]_n = 0`` for ``n <= k+m-2`` and ``[det T_k]_n = 0`` for ``1 <= n <= k``."""
    Tk = T.truncate(k)
    f.require(k + f.m, f"assertion A_{k}")
    if any(not dTdf_component(Tk, f, n).is_zero() for n in range(0, k + f.m - 1)):
        return False
    return all(Tk.det_component(n).is_zero() for n in range(1, k + 1))
