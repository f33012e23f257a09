"""Command-line front end: ``birkhoff6 {analyze,enumerate-cases,verify-propositions,sweep}``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from .classification import census_table, enumerate_case_space
from .crossval import DEFAULT_GRID, SweepConfig, parse_grid, verify_all
from .cyclotomic import CycLiteralError, format_cyc
from .model import ProblemError, parse_problem, validate_problem
from .regularity import RegularityVerdict, decide
from .sampling import DEFAULT_SEED, random_problem

EXIT_REGULAR, EXIT_IRREGULAR, EXIT_INVALID = 0, 1, 2


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_cases(text: Optional[str]) -> tuple:
    if not text:
        return tuple(range(1, 11))
    try:
        cases = tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad case list {text!r}") from None
    if not cases or any(c < 1 or c > 10 for c in cases):
        raise argparse.ArgumentTypeError("cases must lie in 1..10")
    return cases


def _grid_arg(text: str) -> tuple:
    try:
        return parse_grid(text)
    except (CycLiteralError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- analyze ------------------------------------------------------------------

def _endpoint_line(name: str, cls) -> str:
    sub = f" subcase {cls.subcase_id}" if cls.subcase_id else ""
    rel = "".join(r.value for r in cls.relations)
    return (f"endpoint {name}: Case {cls.case_id}{sub} ({rel}), "
            f"p={list(cls.theta)} q={list(cls.phi)}")


def render_verdict(v: RegularityVerdict) -> str:
    lines = [f"verdict: {'regular' if v.regular else 'irregular'}",
             _endpoint_line("a", v.case_a), _endpoint_line("b", v.case_b),
             "block determinants:"]
    for b in v.per_k_dets:
        mark = "  ZERO" if b.zero else ""
        lines.append(f"  u={b.u} k={b.k}  {format_cyc(b.exact):<40} "
                     f"float={b.approx.real:+.12g}{b.approx.imag:+.12g}j{mark}")
    failing = ", ".join(f"(u={u}, k={k})" for u, k in v.failing) or "none"
    lines.append(f"failing: {failing}")
    if v.factorization_holds is not None:
        lines.append(f"block factorization holds: {v.factorization_holds}")
    lines.append(f"float agreement: {v.float_agrees}")
    for r in v.condition_reports:
        c = r.condition
        head = f"closed form at u={r.u}: Case {c.case_id}" + (f" {c.subcase_id}" if c.subcase_id else "")
        if c.not_applicable_reason:
            lines.append(f"{head}: not applicable ({c.not_applicable_reason})")
            continue
        lines.append(f"{head}: hypotheses_met={c.hypotheses_met} "
                     f"condition_satisfied={c.condition_satisfied} agrees_with_oracle={r.agrees}")
        for f in c.forbidden_values:
            val = "undefined" if f.value is None else format_cyc(f.value)
            lines.append(f"    beta{f.slot} != {val}  [{f.parity}, {f.source}]")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
        return EXIT_INVALID
    try:
        vp = validate_problem(parse_problem(text))
    except ProblemError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    verdict = decide(vp)
    body = _dump_json(verdict.to_dict()) if args.format == "json" else render_verdict(verdict)
    _emit(body, args.out)
    return EXIT_REGULAR if verdict.regular else EXIT_IRREGULAR


# -- enumerate-cases -------------------------------------------------------------

def cmd_enumerate(args) -> int:
    census = enumerate_case_space()
    body = _dump_json(census.to_dict()) if args.format == "json" else census_table(census) + "\n"
    _emit(body, args.out)
    return 0


# -- verify-propositions -----------------------------------------------------------

def _summary(reports) -> dict:
    out = {"confirmed": 0, "refuted": 0, "not-applicable": 0}
    for r in reports:
        out[r.status] += 1
    return out


def render_reports(reports, max_witnesses: int) -> str:
    lines = []
    for r in reports:
        where = f"Case {r.case_id}" + (f" {r.subcase_id}" if r.subcase_id else "")
        par = ", ".join(f"{k} {v}" for k, v in r.parity_status().items())
        lines.append(f"{where:<12} {r.label:<34} {r.status:<14} points={r.points_tested} "
                     f"agreements={r.agreements} witnesses={len(r.witnesses)} "
                     f"skipped={r.skipped} [{par}]")
        if r.not_applicable_reason:
            lines.append(f"    {r.not_applicable_reason}")
        for w in r.witnesses[:max_witnesses]:
            lines.append(f"    witness p={w['p']} q={w['q']} betas={w['betas']} k={w['k']} "
                         f"u={w['u']} oracle={w['oracle']} stated={w['prediction']}")
    s = _summary(reports)
    lines.append(f"summary: confirmed={s['confirmed']} refuted={s['refuted']} "
                 f"not-applicable={s['not-applicable']}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    sweep = SweepConfig.from_env(grid=args.grid, cases=args.cases,
                                 include_special=not args.no_special)
    reports = verify_all(sweep)
    if args.format == "json":
        body = _dump_json({
            "grid": [format_cyc(g) for g in sweep.grid],
            "cases": list(sweep.cases),
            "reports": [r.to_dict(args.max_witnesses) for r in reports],
            "summary": _summary(reports),
        })
    else:
        body = render_reports(reports, args.max_witnesses)
    _emit(body, args.out)
    return 0


# -- sweep --------------------------------------------------------------------------

def run_sweep(seed: int, count: int, cases: Sequence[int], max_q: int) -> dict:
    """Decide ``count`` random problems whose endpoint a falls in ``cases``."""
    rng = random.Random(seed)
    rows = []
    attempts = 0
    while len(rows) < count and attempts < 200 * count:
        attempts += 1
        spec = random_problem(rng, max_q)
        v = decide(validate_problem(spec), birkhoff=False)
        if v.case_a.case_id not in cases:
            continue
        rows.append({
            "index": len(rows),
            "case_a": v.case_a.case_id, "subcase_a": v.case_a.subcase_id,
            "case_b": v.case_b.case_id, "subcase_b": v.case_b.subcase_id,
            "verdict": "regular" if v.regular else "irregular",
            "failing": [[u, k] for u, k in v.failing],
            "closed_form_agrees": [r.agrees for r in v.condition_reports],
        })
    regular = sum(1 for r in rows if r["verdict"] == "regular")
    disagree = sum(1 for r in rows for a in r["closed_form_agrees"] if a is False)
    return {"seed": seed, "count": len(rows), "regular": regular,
            "irregular": len(rows) - regular, "closed_form_disagreements": disagree,
            "problems": rows}


def cmd_sweep(args) -> int:
    res = run_sweep(args.seed, args.count, args.cases, args.max_q)
    if args.format == "json":
        body = _dump_json(res)
    else:
        lines = [f"seed={res['seed']} problems={res['count']} regular={res['regular']} "
                 f"irregular={res['irregular']} closed_form_disagreements="
                 f"{res['closed_form_disagreements']}"]
        for r in res["problems"]:
            sa = r["subcase_a"] or r["case_a"]
            sb = r["subcase_b"] or r["case_b"]
            fail = " ".join(f"({u},{k})" for u, k in r["failing"]) or "-"
            lines.append(f"  #{r['index']:<4} a=Case {sa:<5} b=Case {sb:<5} {r['verdict']:<9} "
                         f"failing={fail} closed_form_agrees={r['closed_form_agrees']}")
        body = "\n".join(lines) + "\n"
    _emit(body, args.out)
    return 0


# -- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = argparse.ArgumentParser(
        prog="birkhoff6",
        description="Birkhoff regularity of sixth-order problems with lambda-linear boundary conditions.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="decide regularity of a problem file")
    a.add_argument("--input", required=True, metavar="PATH")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate-cases", parents=[common], help="relation census and subcases")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify-propositions", parents=[common],
                       help="cross-validate the closed forms against the direct determinant")
    v.add_argument("--cases", type=_parse_cases, default=_parse_cases(None), metavar="LIST")
    v.add_argument("--grid", type=_grid_arg, default=DEFAULT_GRID, metavar="V1,V2,...")
    v.add_argument("--no-special", action="store_true", help="omit lemma-specific beta values")
    v.add_argument("--max-witnesses", type=int, default=5, metavar="N",
                   help="witnesses printed per formula (counts are always complete)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="decide seeded random problems")
    s.add_argument("--cases", type=_parse_cases, default=_parse_cases(None), metavar="LIST")
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--max-q", type=int, default=5, choices=range(6), metavar="Q")
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
