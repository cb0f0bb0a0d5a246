"""Command line front end.

    loophom validate  FILE
    loophom report    FILE [--max-degree N] [--format json|text] [--seed-order P]
    loophom lie-basis FILE [--max-degree N] [--format json|text] [--seed-order P]
    loophom classify  FILE [--format json|text]

Exit codes: 0 success, 1 semantic violation, 2 parse error,
3 internal inconsistency (a failed cross-check).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    DescriptorParseError,
    DomainError,
    InconsistencyError,
    ValidationError,
)
from .files import load_descriptor
from .manifold import check, classify_low_rank, hyperbolicity, present, validate
from .report import DEFAULT_MAX_DEGREE, ORACLE_LIMIT, ReportConfig, basis_rows, build_report

EXIT_OK, EXIT_SEMANTIC, EXIT_PARSE, EXIT_INCONSISTENT = 0, 1, 2, 3


class _OrderError(Exception):
    pass


def _parse_order(text: str | None, r: int):
    if text is None:
        return None
    try:
        order = tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise _OrderError(f"--seed-order must list letter indices, got {text!r}") from None
    if sorted(order) != list(range(1, r + 1)):
        raise _OrderError(f"--seed-order {text!r} is not a permutation of 1..{r}")
    return order


def _emit(obj, fmt: str, text: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _cmd_validate(args, out) -> int:
    desc = load_descriptor(args.path)
    problems = check(desc)
    if problems:
        _emit({"valid": False, "violations": [
                  {"code": p.code, "message": p.message, "indices": list(p.indices)} for p in problems]},
              args.format, "invalid\n" + "\n".join(f"  {p}" for p in problems), out)
        return EXIT_SEMANTIC
    v = validate(desc)
    kind = hyperbolicity(v)
    _emit({"valid": True, "r": v.r, "total_rank": v.total_rank, "route": v.route,
           "hyperbolicity": kind},
          args.format, f"valid, r={v.r}, {kind}", out)
    return EXIT_OK


def render_report_text(doc: dict) -> str:
    lines = []
    echo = doc["input_echo"]
    val = doc["validation"]
    lines.append(f"{echo['name']}: n={echo['n']} d={echo['d']} degrees={echo['generator_degrees']}")
    lines.append(f"r = {val['r']}, total rank {val['total_rank']}, {val['hyperbolicity']}")
    if doc["presentation"] is None:
        c = doc["classification"]
        lines.append(f"classification: {c['label']}")
        if c["note"]:
            lines.append(f"  note: {c['note']}")
    else:
        pres = doc["presentation"]
        lines.append(f"presentation: {pres['text']}")
        lines.append(f"  ungraded relation: {pres['ungraded_relation']}")
        lines.append(f"  leading pair: {tuple(pres['leading_pair'])}")
        h = doc["hilbert"]
        lines.append("hilbert (loop degree: dim [routes]):")
        for m, (dim, tag) in enumerate(zip(h["dims"], h["provenance"])):
            lines.append(f"  {m:>3}: {dim} [{tag}]")
        lines.append(f"  agreement: {h['agreement']}  pbw reconstruction: {h['pbw_reconstruction']}")
        lines.append(f"lie dims: {doc['lie_dims']}")
        dec = doc["decomposition"]
        summands = ", ".join(f"S^{j}:{k}" for j, k in dec["multiplicities"].items())
        lines.append(f"decomposition (spheres up to {dec['max_sphere_dim']}): {summands}")
        for j, brs in dec["brackets"].items():
            shown = ", ".join(brs[:6]) + (", ..." if len(brs) > 6 else "")
            lines.append(f"  S^{j}: {shown}")
        moore = doc["moore"]
        lines.append(f"growth reference: {moore['growth_reference']}  populated: {moore['populated']}"
                     f"  tail converged: {moore['tail_converged']}")
        lines.append(f"  {moore['conclusion']}")
    ranks = ", ".join(f"pi_{s}:{k}" for s, k in doc["rational_ranks"].items())
    lines.append(f"rational ranks: {ranks}")
    for c in doc["caveats"]:
        lines.append(f"caveat: {c}")
    return "\n".join(lines)


def _cmd_report(args, out) -> int:
    desc = load_descriptor(args.path)
    order = _parse_order(args.seed_order, desc.r)
    cfg = ReportConfig(max_degree=args.max_degree, oracle_limit=args.oracle_limit, order=order)
    doc = build_report(desc, cfg)
    _emit(doc, args.format, render_report_text(doc), out)
    return EXIT_OK


def _cmd_lie_basis(args, out) -> int:
    desc = load_descriptor(args.path)
    v = validate(desc)
    if v.r < 3:
        msg = (f"r = {v.r}: total rank {v.total_rank} <= 4 is rationally elliptic and has no "
               "quadratic Lie basis table here; use 'classify'")
        sys.stderr.write(msg + "\n")
        return EXIT_SEMANTIC
    order = _parse_order(args.seed_order, desc.r)
    p = present(desc, order)
    rows = basis_rows(p, args.max_degree)
    text = "\n".join(
        f"{r['loop_degree']:>3}  S^{r['sphere_dim']:<3} {''.join(f'u{x}' for x in r['word']):<24} {r['bracket_text']}"
        for r in rows) or "(empty)"
    _emit({"rows": rows}, args.format, text, out)
    return EXIT_OK


def _cmd_classify(args, out) -> int:
    desc = load_descriptor(args.path)
    if desc.r > 2:
        v = validate(desc)
        _emit({"type": "hyperbolic", "label": "rationally hyperbolic", "r": v.r},
              args.format, f"rationally hyperbolic (r={v.r})", out)
        return EXIT_OK
    t = classify_low_rank(desc)
    text = t.label + (f"\n  note: {t.note}" if t.note else "")
    _emit({"type": t.kind, "label": t.label, "dims": list(t.dims), "note": t.note},
          args.format, text, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loophom", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree=False, order=False):
        p.add_argument("path")
        p.add_argument("--format", choices=("json", "text"), default="text")
        if degree:
            p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
        if order:
            p.add_argument("--seed-order", default=None,
                           help="letter order as a permutation, e.g. 2,1,3")

    common(sub.add_parser("validate", help="check a descriptor file"))
    rep = sub.add_parser("report", help="full loop homology and homotopy report")
    common(rep, degree=True, order=True)
    rep.add_argument("--oracle-limit", type=int, default=ORACLE_LIMIT,
                     help="highest degree checked by the ideal-slice oracle")
    common(sub.add_parser("lie-basis", help="standard Lyndon basis table"), degree=True, order=True)
    common(sub.add_parser("classify", help="low-rank classification"))
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handlers = {
        "validate": _cmd_validate,
        "report": _cmd_report,
        "lie-basis": _cmd_lie_basis,
        "classify": _cmd_classify,
    }
    if getattr(args, "max_degree", 0) < 0:
        sys.stderr.write("error: --max-degree must be >= 0\n")
        return EXIT_PARSE
    try:
        return handlers[args.command](args, out)
    except (DescriptorParseError, _OrderError) as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        sys.stderr.write(f"cannot read input: {exc}\n")
        return EXIT_PARSE
    except ValidationError as exc:
        sys.stderr.write("invalid descriptor:\n" + "\n".join(f"  {v}" for v in exc.violations) + "\n")
        return EXIT_SEMANTIC
    except InconsistencyError as exc:
        where = f" (degree {exc.degree})" if exc.degree is not None else ""
        sys.stderr.write(f"inconsistency{where}: {exc}\n")
        return EXIT_INCONSISTENT
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
