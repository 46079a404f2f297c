"""JSON jet documents and report serialisation.

A jet document looks like::

    {"m": 5,
     "terms": [{"i": 6, "j": 0, "c": "1/1"}, {"i": 4, "j": 2, "c": "3"}],
     "declared_order": 6}

``c`` is an exact rational written as ``"p/q"`` or ``"p"``; floats are
rejected.  Without ``declared_order`` the document describes an exact
polynomial.  Polynomials in reports use the same ``{i, j, c}`` records.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from harmjet.errors import DomainError, JetParseError
from harmjet.jetflow import Jet, ObstructionReport, StarJet, s_of_m
from harmjet.polyring import GradedPoly, HomPoly
from harmjet.rational import Q, QType

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(s: str) -> QType:
    if not isinstance(s, str):
        raise JetParseError(f"coefficient must be a string 'p/q', got {s!r}")
    mo = _RATIONAL.match(s)
    if not mo:
        raise JetParseError(f"malformed rational {s!r}")
    num, den = int(mo.group(1)), int(mo.group(2) or 1)
    if den == 0:
        raise JetParseError(f"zero denominator in {s!r}")
    return Q(num, den)


def format_rational(c) -> str:
    c = Q(c)
    return f"{c.numerator}/{c.denominator}"


def _line_of(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _term_lines(text: str) -> list[int]:
    """Line number of each object in the ``terms`` array (best effort)."""
    mo = re.search(r'"terms"\s*:\s*\[', text)
    if not mo:
        return []
    dec = json.JSONDecoder()
    pos, lines = mo.end(), []
    while True:
        while pos < len(text) and text[pos] in " \t\r\n,":
            pos += 1
        if pos >= len(text) or text[pos] == "]":
            return lines
        try:
            _, end = dec.raw_decode(text, pos)
        except json.JSONDecodeError:
            return lines
        lines.append(_line_of(text, pos))
        pos = end


def loads_jet(text: str) -> Jet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise JetParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise JetParseError("jet document must be a JSON object")
    m = doc.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        raise JetParseError(f"'m' must be an integer >= 2, got {m!r}")
    terms = doc.get("terms", [])
    if not isinstance(terms, list):
        raise JetParseError("'terms' must be a list")
    lines = _term_lines(text)
    seen: dict[tuple[int, int], int] = {}
    coeffs: dict[tuple[int, int], QType] = {}
    for idx, t in enumerate(terms):
        where = f"term {idx}" + (f" (line {lines[idx]})" if idx < len(lines) else "")
        if not isinstance(t, dict) or set(t) - {"i", "j", "c"} or not {"i", "j", "c"} <= set(t):
            raise JetParseError(f"{where}: expected an object with keys i, j, c")
        i, j = t["i"], t["j"]
        if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in (i, j)):
            raise JetParseError(f"{where}: exponents must be nonnegative integers")
        if i + j <= m:
            raise JetParseError(f"{where}: degree {i + j} is not above m = {m}")
        if (i, j) in seen:
            raise JetParseError(f"{where}: duplicate monomial x^{i} y^{j} (first at term {seen[(i, j)]})")
        seen[(i, j)] = idx
        try:
            coeffs[(i, j)] = parse_rational(t["c"])
        except JetParseError as e:
            raise JetParseError(f"{where}: {e}") from None
    order = doc.get("declared_order")
    if order is not None:
        if not isinstance(order, int) or isinstance(order, bool):
            raise JetParseError("'declared_order' must be an integer")
        top = max((i + j for i, j in coeffs), default=m)
        if order < top:
            raise JetParseError(f"declared_order {order} is below the top term degree {top}")
        if order < m:
            raise JetParseError(f"declared_order {order} is below m = {m}")
    try:
        return Jet.from_terms(m, coeffs, order)
    except DomainError as e:
        raise JetParseError(str(e)) from None


def parse_jet(path) -> Jet:
    return loads_jet(Path(path).read_text())


def poly_records(p: HomPoly) -> list[dict]:
    return [{"i": i, "j": j, "c": format_rational(c)} for i, j, c in p.terms()]


def graded_records(g: GradedPoly) -> list[dict]:
    return [rec for _, p in g.items() for rec in poly_records(p)]


def jet_document(f: Jet) -> dict:
    doc = {"m": f.m, "terms": graded_records(f.tail)}
    if f.order is not None:
        doc["declared_order"] = f.order
    return doc


def dumps_jet(f: Jet) -> str:
    return json.dumps(jet_document(f), indent=1)


def verdict_document(f: Jet, report: ObstructionReport | None, verdict: str | None = None) -> dict:
    """Machine-readable verdict; ``report=None`` when the jet was too short."""
    from harmjet.analysis import codim

    m = f.m
    doc = {
        "m": m,
        "order": f.order,
        "verdict": verdict if verdict is not None else report.verdict,
        "first_failure": report.first_failure if report else None,
        "residuals": (
            {str(k): poly_records(r) for k, r in report.residuals.items()} if report else {}
        ),
        "conditional": list(report.conditional) if report else [],
        "s_m": s_of_m(m),
    }
    if m >= 5:
        doc["codim"] = codim(m)
    return doc


def star_document(T: StarJet) -> dict:
    names = (("T11", "T12"), ("T21", "T22"))
    return {
        "max_degree": T.max_degree,
        "entries": {
            names[r][c]: graded_records(T.entries[r][c]) for r in range(2) for c in range(2)
        },
    }
