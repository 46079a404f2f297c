"""Command-line front end.

Exit codes: 0 success / equivalent, 1 runtime or input error, 2 usage,
3 not equivalent, 4 jet too short.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from harmjet import analysis, geometry, jetflow, linalg, theta
from harmjet.documents import (
    graded_records,
    jet_document,
    parse_jet,
    parse_rational,
    poly_records,
    star_document,
    verdict_document,
)
from harmjet.errors import DomainError, JetParseError, JetTooShortError
from harmjet.polyring import GradedPoly, HomPoly, format_poly, irr_basis

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_NOT_EQUIVALENT = 3
EXIT_TOO_SHORT = 4

UNDETERMINED_TOO_SHORT = "undetermined_jet_too_short"


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        print(json.dumps(doc, indent=1))
    else:
        print(text)


def _verdict_exit(verdict: str) -> int:
    return EXIT_NOT_EQUIVALENT if verdict == jetflow.NOT_EQUIVALENT else EXIT_OK


def _records_text(recs: list[dict]) -> str:
    if not recs:
        return "0"
    n = recs[0]["i"] + recs[0]["j"]
    return format_poly(HomPoly.from_terms(n, {(r["i"], r["j"]): parse_rational(r["c"]) for r in recs}))


def _report_text(doc: dict) -> str:
    lines = [f"m = {doc['m']}, order = {doc['order']}, s(m) = {doc['s_m']}"]
    if "codim" in doc:
        lines.append(f"codim = {doc['codim']}")
    lines.append(f"verdict: {doc['verdict']}")
    if doc["first_failure"] is not None:
        lines.append(f"first failure at k = {doc['first_failure']}")
    for k, recs in doc["residuals"].items():
        tag = " (conditional)" if int(k) in doc.get("conditional", []) else ""
        lines.append(f"  residual_{k}{tag} = {_records_text(recs)}")
    return "\n".join(lines)


def _obstruct_jet(args, f: jetflow.Jet) -> int:
    m = f.m
    need = 2 * m - 4
    if m >= 5 and not f.known_through(need):
        doc = verdict_document(f, None, UNDETERMINED_TOO_SHORT)
        doc["required_order"] = need
        _emit(args, doc, _report_text(doc) + f"\njet too short: need order >= {need}")
        return EXIT_TOO_SHORT
    rep = jetflow.obstruction(f)
    doc = verdict_document(f, rep)
    _emit(args, doc, _report_text(doc))
    return _verdict_exit(rep.verdict)


def cmd_obstruct(args) -> int:
    return _obstruct_jet(args, parse_jet(args.input))


def cmd_metric(args) -> int:
    f = parse_jet(args.input)
    res = jetflow.run(f, args.order)
    g = geometry.metric_from_star(res.metric)
    doc = {
        "verdict": res.report.verdict,
        "first_failure": res.report.first_failure,
        "assertions": res.assertions,
        "star": star_document(res.metric),
        "metric": {
            "g11": graded_records(g.g11),
            "g12": graded_records(g.g12),
            "g22": graded_records(g.g22),
        },
    }
    lines = [f"star jet T_{args.order}, verdict {res.report.verdict}"]
    for name, e in (("g11", g.g11), ("g12", g.g12), ("g22", g.g22)):
        lines.append(f"{name}: " + (" + ".join(format_poly(p) for _, p in e.items()) or "0"))
    lines.append("assertions A_k: " + " ".join("T" if a else "F" for a in res.assertions))
    _emit(args, doc, "\n".join(lines))
    return _verdict_exit(res.report.verdict)


def cmd_theta(args) -> int:
    op = theta.build_theta(args.m, args.k)
    rep = theta.rank_report(op)
    table = theta.irr_inclusion_table(op)
    n = op.target_degree
    missed = []
    for q, ok in table:
        if not ok:
            re_, im_ = irr_basis(n, q)
            missed.append({"q": q, "re": poly_records(re_), "im": poly_records(im_)})
    doc = {
        "m": args.m,
        "k": args.k,
        "shape": list(op.shape),
        "rank": rep.rank,
        "injective": rep.injective,
        "surjective": rep.surjective,
        "M_k": rep.M_k,
        "irr_in_image": {str(q): ok for q, ok in table},
        "missed": missed,
    }
    lines = [
        f"Theta_{args.k} for m = {args.m}: shape {op.shape[0]}x{op.shape[1]}, rank {rep.rank}",
        f"injective: {rep.injective}, surjective: {rep.surjective}, M(k) = {rep.M_k}",
    ]
    for q, ok in table:
        lines.append(f"  Irr^{q}_{n} {'in image' if ok else 'MISSED'}")
    for mis in missed:
        re_, _ = irr_basis(n, mis["q"])
        lines.append(f"missed direction: {format_poly(re_)}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_fstar(args) -> int:
    f = jetflow.make_fstar(args.m, parse_rational(args.C))
    rep = jetflow.obstruction(f)
    doc = verdict_document(f, rep)
    doc["jet"] = jet_document(f)
    _emit(args, doc, _report_text(doc))
    return _verdict_exit(rep.verdict)


def cmd_submersion(args) -> int:
    m = args.m
    h = GradedPoly() if args.seed is None else analysis.random_h(m, random.Random(args.seed))
    jac = analysis.phi_jacobian(m, h)
    rank = linalg.rank(jac.matrix)
    expected = jac.shape[0]
    doc = {
        "m": m,
        "seed": args.seed,
        "shape": list(jac.shape),
        "rank": rank,
        "expected_rank": expected,
        "submersion": rank == expected,
    }
    _emit(args, doc, f"phi-Jacobian {jac.shape[0]}x{jac.shape[1]} at "
          f"{'h = 0' if args.seed is None else f'random h (seed {args.seed})'}: "
          f"rank {rank} of {expected}; submersion: {rank == expected}")
    return EXIT_OK if rank == expected else EXIT_ERROR


def cmd_codim(args) -> int:
    c = analysis.codim(args.m)
    _emit(args, {"m": args.m, "codim": c}, str(c))
    return EXIT_OK


def cmd_residual(args) -> int:
    f = parse_jet(args.input)
    res = jetflow.run(f, args.order, check=False)
    probe = geometry.residual_decay(res.metric, f)
    sys.stdout.write(probe.to_csv())
    return EXIT_OK


def cmd_verify(args) -> int:
    from harmjet.verify import run_checks

    results = run_checks(args.seed or 0)
    doc = {name: ok for name, ok in results}
    _emit(args, doc, "\n".join(f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results))
    return EXIT_OK if all(doc.values()) else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")

    p = argparse.ArgumentParser(
        prog="harmjet",
        description="Formal equivalence of planar jets to Re(x+iy)^m.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("obstruct", parents=[common], help="verdict and cokernel residuals")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("metric", parents=[common], help="star and metric jets to degree K")
    s.add_argument("--input", required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_metric)

    s = sub.add_parser("theta", parents=[common], help="rank and image of Theta_k")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("fstar", parents=[common], help="analyse Re z^m + C (x^2+y^2)^(m-2)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--C", required=True, help="rational 'p/q'")
    s.set_defaults(func=cmd_fstar)

    s = sub.add_parser("submersion", parents=[common], help="rank of the phi-Jacobian")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_submersion)

    s = sub.add_parser("codim", parents=[common], help="codimension (m-2)(m-3)-2")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_codim)

    s = sub.add_parser("residual", parents=[common], help="CSV decay probe of |Delta_g f|")
    s.add_argument("--input", required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_residual)

    s = sub.add_parser("verify", parents=[common], help="run the invariant self-checks")
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_verify)
    return p


def _glue_values(argv: list[str]) -> list[str]:
    # let "--C -3/2" through: argparse would read "-3/2" as an option
    out, it = [], iter(argv)
    for a in it:
        if a in ("--C", "--m", "--k", "--order", "--seed"):
            v = next(it, None)
            out.append(a if v is None else f"{a}={v}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.func(args)
    except JetTooShortError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TOO_SHORT
    except JetParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
