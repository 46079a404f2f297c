"""Exact homogeneous and graded polynomials in two variables.

Coefficients are ``gmpy2.mpq`` rationals.  A :class:`HomPoly` of degree
``n`` stores ``n + 1`` coefficients, entry ``j`` multiplying ``x**(n-j) * y**j``.
A :class:`GradedPoly` is a finitely supported map ``degree -> HomPoly``.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping

from harmjet.errors import DomainError
from harmjet.rational import Q, QType, as_q


class HomPoly:
    """Homogeneous polynomial of fixed degree with rational coefficients."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Iterable = None):
        if degree < 0:
            raise DomainError(f"negative degree {degree}")
        if coeffs is None:
            cs = (Q(0),) * (degree + 1)
        else:
            cs = tuple(as_q(c) for c in coeffs)
            if len(cs) != degree + 1:
                raise DomainError(
                    f"degree {degree} needs {degree + 1} coefficients, got {len(cs)}"
                )
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("HomPoly is immutable")

    @classmethod
    def zero(cls, degree: int) -> "HomPoly":
        return cls(degree)

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "HomPoly":
        """``c * x**i * y**j``."""
        cs = [Q(0)] * (i + j + 1)
        cs[j] = as_q(c)
        return cls(i + j, cs)

    @classmethod
    def from_terms(cls, degree: int, terms: Mapping[tuple[int, int], object]) -> "HomPoly":
        cs = [Q(0)] * (degree + 1)
        for (i, j), c in terms.items():
            if i + j != degree:
                raise DomainError(f"term x^{i} y^{j} does not have degree {degree}")
            cs[j] += as_q(c)
        return cls(degree, cs)

    def terms(self) -> Iterator[tuple[int, int, QType]]:
        """Yield ``(i, j, c)`` for the nonzero terms ``c * x**i * y**j``."""
        n = self.degree
        for j, c in enumerate(self.coeffs):
            if c:
                yield n - j, j, c

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, HomPoly):
            return self.degree == other.degree and self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.degree, self.coeffs))

    def _check(self, other: "HomPoly") -> None:
        if self.degree != other.degree:
            raise DomainError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        self._check(other)
        return HomPoly(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        self._check(other)
        return HomPoly(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.degree, [-a for a in self.coeffs])

    def __mul__(self, other) -> "HomPoly":
        if isinstance(other, HomPoly):
            return hp_mul(self, other)
        if isinstance(other, numbers.Rational):
            c = as_q(other)
            return HomPoly(self.degree, [c * a for a in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, x, y):
        """Exact evaluation at a rational point."""
        return sum((c * x ** i * y ** j for i, j, c in self.terms()), Q(0))

    def __repr__(self) -> str:
        return f"HomPoly({self.degree}, {format_poly(self)!r})"


def format_poly(p: HomPoly) -> str:
    parts = []
    for i, j, c in p.terms():
        mono = "*".join(
            s for s in (
                "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
            ) if s
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


def hp_mul(p: HomPoly, q: HomPoly) -> HomPoly:
    out = [Q(0)] * (p.degree + q.degree + 1)
    qc = [(j, c) for j, c in enumerate(q.coeffs) if c]
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in qc:
                out[i + j] += a * b
    return HomPoly(p.degree + q.degree, out)


def derive(p: HomPoly, var: str) -> HomPoly:
    """Partial derivative in ``'x'`` or ``'y'``; degree 0 maps to the degree-0 zero."""
    n = p.degree
    if n == 0:
        return HomPoly.zero(0)
    if var == "x":
        # x^(n-j) y^j -> (n-j) x^(n-1-j) y^j
        return HomPoly(n - 1, [(n - j) * p.coeffs[j] for j in range(n)])
    if var == "y":
        return HomPoly(n - 1, [(j + 1) * p.coeffs[j + 1] for j in range(n)])
    raise DomainError(f"unknown variable {var!r}")


def laplace_flat(p: HomPoly) -> HomPoly:
    if p.degree < 2:
        raise DomainError("flat Laplacian needs degree >= 2")
    return derive(derive(p, "x"), "x") + derive(derive(p, "y"), "y")


def shift_x(p: HomPoly) -> HomPoly:
    """Multiply by ``x``."""
    return HomPoly(p.degree + 1, p.coeffs + (Q(0),))


def shift_y(p: HomPoly) -> HomPoly:
    """Multiply by ``y``."""
    return HomPoly(p.degree + 1, (Q(0),) + p.coeffs)


@lru_cache(maxsize=None)
def expand_re_im_zm(m: int) -> tuple[HomPoly, HomPoly]:
    """``(Re (x+iy)^m, Im (x+iy)^m)`` by binomial expansion."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    re = [Q(0)] * (m + 1)
    im = [Q(0)] * (m + 1)
    for j in range(m + 1):
        c = comb(m, j)
        # i^j cycles 1, i, -1, -i
        r = j % 4
        if r == 0:
            re[j] = Q(c)
        elif r == 1:
            im[j] = Q(c)
        elif r == 2:
            re[j] = Q(-c)
        else:
            im[j] = Q(-c)
    return HomPoly(m, re), HomPoly(m, im)


@lru_cache(maxsize=None)
def r2_power(q: int) -> HomPoly:
    """``(x^2 + y^2)^q``."""
    cs = [Q(0)] * (2 * q + 1)
    for t in range(q + 1):
        cs[2 * t] = Q(comb(q, t))
    return HomPoly(2 * q, cs)


@dataclass(frozen=True)
class IrrComponent:
    """Coefficients of ``(x^2+y^2)^q (a Re z^p + b Im z^p)``."""

    q: int
    p: int
    a: QType
    b: QType


@lru_cache(maxsize=None)
def irr_basis(n: int, q: int) -> tuple[HomPoly, HomPoly]:
    """Spanning pair ``((x^2+y^2)^q Re z^p, (x^2+y^2)^q Im z^p)`` with ``p = n - 2q``."""
    if q < 0 or 2 * q > n:
        raise DomainError(f"need 0 <= 2q <= n, got n={n}, q={q}")
    re, im = expand_re_im_zm(n - 2 * q)
    r2 = r2_power(q)
    return hp_mul(r2, re), hp_mul(r2, im)


def irr_columns(n: int) -> list[tuple[int, str, HomPoly]]:
    """Basis of R_n[x,y] adapted to the S^1 decomposition, as ``(q, 're'|'im', poly)``."""
    cols = []
    for q in range(n // 2 + 1):
        re, im = irr_basis(n, q)
        cols.append((q, "re", re))
        if n - 2 * q > 0:
            cols.append((q, "im", im))
    return cols


@lru_cache(maxsize=None)
def _irr_inverse(n: int):
    from harmjet.linalg import inverse

    cols = irr_columns(n)
    mat = [[c[2].coeffs[r] for c in cols] for r in range(n + 1)]
    return cols, inverse(mat)


def harmonic_decompose(p: HomPoly) -> list[IrrComponent]:
    n = p.degree
    cols, inv = _irr_inverse(n)
    sol = [sum((row[r] * p.coeffs[r] for r in range(n + 1)), Q(0)) for row in inv]
    comps: dict[int, list] = {}
    for (q, kind, _), v in zip(cols, sol):
        ab = comps.setdefault(q, [Q(0), Q(0)])
        ab[0 if kind == "re" else 1] = v
    return [
        IrrComponent(q, n - 2 * q, a, b) for q, (a, b) in sorted(comps.items()) if a or b
    ]


def harmonic_reconstruct(n: int, comps: Iterable[IrrComponent]) -> HomPoly:
    out = HomPoly.zero(n)
    for c in comps:
        re, im = irr_basis(n, c.q)
        out = out + c.a * re + c.b * im
    return out


class CxHomPoly:
    """Complex homogeneous polynomial ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re: HomPoly, im: HomPoly | None = None):
        if im is None:
            im = HomPoly.zero(re.degree)
        if re.degree != im.degree:
            raise DomainError("real and imaginary parts must share a degree")
        self.re = re
        self.im = im

    @property
    def degree(self) -> int:
        return self.re.degree

    @classmethod
    def z_power(cls, n: int) -> "CxHomPoly":
        return cls(*expand_re_im_zm(n))

    @classmethod
    def zbar_power(cls, n: int) -> "CxHomPoly":
        re, im = expand_re_im_zm(n)
        return cls(re, -im)

    def __mul__(self, other):
        if isinstance(other, CxHomPoly):
            return CxHomPoly(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return CxHomPoly(self.re * other, self.im * other)

    def __add__(self, other: "CxHomPoly") -> "CxHomPoly":
        return CxHomPoly(self.re + other.re, self.im + other.im)

    def times_i(self) -> "CxHomPoly":
        return CxHomPoly(-self.im, self.re)

    def d_z(self) -> "CxHomPoly":
        """Wirtinger derivative ``(d/dx - i d/dy) / 2``."""
        half = Q(1, 2)
        # (u + iv)_x - i (u + iv)_y = (u_x + v_y) + i (v_x - u_y)
        re = derive(self.re, "x") + derive(self.im, "y")
        im = derive(self.im, "x") - derive(self.re, "y")
        return CxHomPoly(re * half, im * half)

    def __eq__(self, other) -> bool:
        return isinstance(other, CxHomPoly) and self.re == other.re and self.im == other.im

    def __repr__(self) -> str:
        return f"CxHomPoly(re={format_poly(self.re)!r}, im={format_poly(self.im)!r})"


class GradedPoly:
    """Finite sum of homogeneous components; absent degrees are zero."""

    __slots__ = ("_comps",)

    def __init__(self, components: Mapping[int, HomPoly] | Iterable[HomPoly] = ()):
        items = components.items() if isinstance(components, Mapping) else (
            (p.degree, p) for p in components
        )
        comps: dict[int, HomPoly] = {}
        for d, p in items:
            if p.degree != d:
                raise DomainError(f"component stored at degree {d} has degree {p.degree}")
            if d in comps:
                p = comps[d] + p
            comps[d] = p
        self._comps = {d: p for d, p in sorted(comps.items()) if not p.is_zero()}

    def __getitem__(self, n: int) -> HomPoly:
        """Degree-``n`` component ``[.]_n``, zero when absent."""
        p = self._comps.get(n)
        return p if p is not None else HomPoly.zero(n)

    def degrees(self) -> list[int]:
        return list(self._comps)

    def items(self):
        return self._comps.items()

    def max_degree(self) -> int:
        return max(self._comps, default=-1)

    def min_degree(self) -> int:
        return min(self._comps, default=-1)

    def is_zero(self) -> bool:
        return not self._comps

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedPoly):
            return self._comps == other._comps
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._comps.items()))

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        comps = dict(self._comps)
        for d, p in other._comps.items():
            comps[d] = comps[d] + p if d in comps else p
        return GradedPoly(comps)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly({d: -p for d, p in self._comps.items()})

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def scale(self, c) -> "GradedPoly":
        return GradedPoly({d: p * c for d, p in self._comps.items()})

    def mul(self, other: "GradedPoly", max_degree: int | None = None) -> "GradedPoly":
        """Product with components above ``max_degree`` discarded."""
        comps: dict[int, HomPoly] = {}
        for d1, p in self._comps.items():
            for d2, q in other._comps.items():
                d = d1 + d2
                if max_degree is not None and d > max_degree:
                    continue
                r = hp_mul(p, q)
                comps[d] = comps[d] + r if d in comps else r
        return GradedPoly(comps)

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            return self.mul(other)
        return self.scale(other)

    def component_of_product(self, other: "GradedPoly", n: int) -> HomPoly:
        """``[self * other]_n`` without forming the full product."""
        out = HomPoly.zero(n)
        for d1, p in self._comps.items():
            q = other._comps.get(n - d1)
            if q is not None:
                out = out + hp_mul(p, q)
        return out

    def truncate(self, max_degree: int, min_degree: int = 0) -> "GradedPoly":
        """``[self]_{min_degree <= max_degree}``."""
        return GradedPoly(
            {d: p for d, p in self._comps.items() if min_degree <= d <= max_degree}
        )

    def derive(self, var: str) -> GradedPoly:
        return GradedPoly(
            {d - 1: derive(p, var) for d, p in self._comps.items() if d > 0}
        )

    def __call__(self, x, y):
        return sum((p(x, y) for p in self._comps.values()), Q(0))

    def __repr__(self) -> str:
        body = ", ".join(f"{d}: {format_poly(p)}" for d, p in self._comps.items())
        return f"GradedPoly({{{body}}})"
