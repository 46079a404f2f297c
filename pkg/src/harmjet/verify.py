"""Quick self-check of the structural identities, run by ``harmjet verify``.

Each check is small enough that the whole suite finishes in well under a
minute; the pytest suite covers the same ground at larger scale.
"""

from __future__ import annotations

import random
from typing import Callable

from harmjet import analysis, geometry, jetflow, linalg, theta
from harmjet.polyring import (
    HomPoly,
    derive,
    harmonic_decompose,
    harmonic_reconstruct,
    hp_mul,
    laplace_flat,
    r2_power,
    shift_x,
    shift_y,
)


def _leibniz(rng: random.Random) -> bool:
    for _ in range(20):
        # degree >= 1: derivatives of constants keep degree 0 by convention
        p = jetflow.random_hompoly(rng.randint(1, 8), rng)
        q = jetflow.random_hompoly(rng.randint(1, 8), rng)
        for v in "xy":
            lhs = derive(hp_mul(p, q), v)
            rhs = hp_mul(derive(p, v), q) + hp_mul(p, derive(q, v))
            if lhs != rhs:
                return False
    return True


def _euler(rng: random.Random) -> bool:
    for n in range(1, 13):
        p = jetflow.random_hompoly(n, rng)
        if shift_x(derive(p, "x")) + shift_y(derive(p, "y")) != p * n:
            return False
    return True


def _harmonic_roundtrip(rng: random.Random) -> bool:
    for n in range(0, 15):
        p = jetflow.random_hompoly(n, rng)
        if harmonic_reconstruct(n, harmonic_decompose(p)) != p:
            return False
    return True


def _radial_laplacian(rng: random.Random) -> bool:
    return all(laplace_flat(r2_power(n)) == r2_power(n - 1) * (4 * n * n) for n in range(1, 11))


def _rank_law(rng: random.Random) -> bool:
    return all(
        theta.build_theta(m, k).rank == min(2 * (k + 1), k + m - 1)
        for m in range(2, 9)
        for k in range(1, 2 * m + 1)
    )


def _two_paths(rng: random.Random) -> bool:
    return all(
        theta.theta_matrix_real(m, k) == theta.theta_matrix_complex(m, k)
        for m in range(2, 8)
        for k in range(1, 8)
    )


def _missed_direction(rng: random.Random) -> bool:
    for m in range(5, 10):
        op = theta.build_theta(m, m - 4)
        if theta.solve_in_image(op, r2_power(m - 3)).in_image:
            return False
    return True


def _normal_form(rng: random.Random) -> bool:
    for m in range(2, 9):
        s = jetflow.s_of_m(m)
        f = jetflow.random_jet(m, s + 1, s + 3, rng)
        res = jetflow.run(f, s + 3 - m)
        if res.report.verdict != jetflow.EQUIVALENT or not all(res.assertions):
            return False
    return True


def _fstar(rng: random.Random) -> bool:
    for m in range(5, 10):
        rep = jetflow.obstruction(jetflow.make_fstar(m, 1))
        if rep.verdict != jetflow.NOT_EQUIVALENT or rep.first_failure != m - 4:
            return False
    return True


def _submersion(rng: random.Random) -> bool:
    return all(analysis.submersion_check(m, analysis.random_h(m, rng)) for m in (5, 6, 7))


def _codim(rng: random.Random) -> bool:
    return all(
        analysis.tangent_kernel_dimension(m) == analysis.domain_dimension(m) - analysis.codim(m)
        for m in (5, 6, 7)
    )


def _star_roundtrip(rng: random.Random) -> bool:
    f = jetflow.random_jet(6, 9, 14, rng)
    T = jetflow.run(f, 4, check=False).metric
    back = geometry.star_from_metric(geometry.metric_from_star(T), T.max_degree)
    return back.entries == T.entries


def _projection(rng: random.Random) -> bool:
    for _ in range(10):
        m, k = rng.randint(2, 8), rng.randint(1, 8)
        P = [list(r) for r in theta.build_theta(m, k).projector]
        if linalg.matmul(P, P) != P:
            return False
    return True


CHECKS: dict[str, Callable[[random.Random], bool]] = {
    "polyring.leibniz": _leibniz,
    "polyring.euler": _euler,
    "polyring.harmonic_roundtrip": _harmonic_roundtrip,
    "polyring.radial_laplacian": _radial_laplacian,
    "theta.rank_law": _rank_law,
    "theta.two_paths": _two_paths,
    "theta.projection_idempotent": _projection,
    "theta.missed_direction": _missed_direction,
    "jetflow.normal_form": _normal_form,
    "jetflow.fstar": _fstar,
    "geometry.star_roundtrip": _star_roundtrip,
    "analysis.submersion": _submersion,
    "analysis.codim": _codim,
}


def run_checks(seed: int = 0) -> list[tuple[str, bool]]:
    rng = random.Random(seed)
    return [(name, bool(fn(rng))) for name, fn in CHECKS.items()]


if __name__ == "__main__":
    for name, ok in run_checks():
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
