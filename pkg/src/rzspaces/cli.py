"""Command line: ``rzspaces {report,census,selfcheck,enumerate-np,sigma-solve}``.

Exit codes: 0 success, 1 usage or validation error, 2 formula disagreement
(or a failed check), 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import census as C
from .acceptance import MUTATIONS, run_all, warm_up
from .components import component_group
from .dimension import full_report
from .errors import BudgetExceeded, CensusAssertion, RZError
from .newton import enumerate_symmetric, parse_newton, split_polarized

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_window(text: str) -> tuple:
    """``"k"`` means ``(-k, k)``; ``"lo:hi"`` is taken literally."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
        else:
            k = int(text)
            if k < 0:
                raise ValueError
            lo, hi = -k, k
    except ValueError:
        raise UsageError(f"bad window {text!r}; use k or lo:hi") from None
    if not lo <= 0 <= hi:
        raise UsageError(f"window ({lo},{hi}) must satisfy lo <= 0 <= hi")
    return lo, hi


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _report(args) -> int:
    np_ = parse_newton(args.np)
    rep = full_report(np_)
    cg = component_group(np_)
    n0, middle, n1 = split_polarized(np_)
    data = {
        "np": np_.to_text(), "height": np_.height(), "h": np_.h, "l": len(np_),
        **rep.to_dict(), "component_group": cg.to_dict(),
        "split": {"N0": n0.to_text(), "middle": middle, "N1": n1.to_text()},
    }
    if args.format == "json":
        out = json.dumps(data, sort_keys=True, indent=1)
    elif args.format == "csv":
        flat = {k: v for k, v in data.items() if not isinstance(v, dict)}
        flat["pi0"] = cg.pi0()
        flat.update({f"split_{k}": v for k, v in data["split"].items()})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
        out = buf.getvalue().rstrip("\n")
    else:
        out = "\n".join([
            f"polygon    {np_!r}",
            f"height     {np_.height()}  (h = {np_.h}, l = {len(np_)})",
            f"m          {rep.m}",
            f"defect     {rep.defect}",
            f"dim        {rep.dim_eq3} | {rep.dim_eq4} | {rep.dim_eq5}  "
            f"({'agree' if rep.agree else 'DISAGREE'})",
            f"pi0        {cg.pi0()}",
            f"split      N0 = {n0.to_text() or '-'}, middle = {'yes' if middle else 'no'}, "
            f"N1 = {n1.to_text() or '-'}",
        ])
    _emit(out, args.output)
    return EXIT_OK if rep.agree else EXIT_DISAGREE


def _census(args) -> int:
    np_ = parse_newton(args.np)
    window = parse_window(args.window)
    budget = C.resolve_budget(args.budget)
    try:
        recs = C.enumerate_census(np_, args.p, args.r, window, budget=budget)
    except BudgetExceeded as exc:
        print(f"budget exceeded: estimate {exc.estimate} > budget {exc.budget}", file=sys.stderr)
        return EXIT_BUDGET
    meta = C.census_metadata(np_, args.p, args.r, window, budget)
    try:
        report = C.verify_census(recs)
    except CensusAssertion as exc:
        print(f"census check failed: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    if args.format == "csv":
        out = C.records_to_csv(recs, meta).rstrip("\n")
    elif args.format == "json":
        out = C.records_to_json(recs, meta, report)
    else:
        lines = [f"# {k}: {v}" for k, v in meta.items()]
        lines.append(f"{'kappa':>6} {'a':>3} {'vol':>5} {'a0':>3} {'a1':>3}  basis")
        for rec in recs:
            lines.append(f"{rec.kappa:>6} {rec.a_inv:>3} {rec.rel_volume:>5} {rec.a0:>3} "
                         f"{rec.a1:>3}  {rec.basis_hex() or '-'}")
        hist = ", ".join(f"{k}:{v}" for k, v in sorted(report.kappa_histogram.items()))
        lines.append(f"{report.n_records} records; kappa histogram {{{hist}}}; all checks pass")
        out = "\n".join(lines)
    _emit(out, args.output)
    return EXIT_OK


def _selfcheck(args) -> int:
    kw = {"max_height": args.max_height, "budget": args.budget}
    if args.mutate:
        kw["defect_fn"] = MUTATIONS[args.mutate]
    if args.only:
        kw["only"] = {int(x) for x in args.only.split(",")}
    print(f"kernel warm-up {warm_up():.2f}s (not counted against limits)")
    results = run_all(**kw)
    for res in results:
        print(res.line())
    failed = [r.number for r in results if not r.passed]
    if failed:
        print(f"failed criteria: {', '.join(map(str, failed))}")
        return EXIT_DISAGREE
    print(f"all {len(results)} criteria pass")
    return EXIT_OK


def _enumerate(args) -> int:
    polys = enumerate_symmetric(args.h)
    if args.format == "json":
        out = json.dumps([p.to_dict() for p in polys])
    else:
        out = "\n".join(p.to_text() for p in polys)
    _emit(out, args.output)
    return EXIT_OK


def _sigma_solve(args) -> int:
    from .sigmalin import SigmaSystem, brute_solutions, triangularize
    try:
        with open(args.system) as fh:
            sys_ = SigmaSystem.from_json(fh.read())
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read system: {exc}") from None
    tri = triangularize(sys_)
    data = {"triangular": tri.to_dict()}
    if args.brute:
        before = brute_solutions(sys_, args.brute)
        after = brute_solutions(tri, args.brute)
        data["solutions"] = sorted(list(s) for s in after)
        data["solution_sets_equal"] = before == after
        if before != after:
            _emit(json.dumps(data), args.output)
            return EXIT_DISAGREE
    _emit(json.dumps(data, indent=1), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rzspaces", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt=("text", "json", "csv")):
        p.add_argument("--format", choices=fmt, default="text")
        p.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")

    p = sub.add_parser("report", help="dimension, component group and split of a polygon")
    p.add_argument("--np", required=True, help='polygon as "m:n,m:n,..."')
    common(p)
    p.set_defaults(func=_report)

    p = sub.add_parser("census", help="enumerate Dieudonne lattices self-dual up to scalar")
    p.add_argument("--np", required=True)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--window", default="1", help="k for (-k,k), or lo:hi")
    p.add_argument("--budget", type=int, default=None, help="default 10^7 or $RZ_BUDGET")
    common(p)
    p.set_defaults(func=_census)

    p = sub.add_parser("selfcheck", help="run acceptance criteria 1-8")
    p.add_argument("--max-height", type=int, default=20)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--mutate", choices=sorted(MUTATIONS), default=None,
                   help="inject a known-wrong formula; the run must fail")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    p.set_defaults(func=_selfcheck)

    p = sub.add_parser("enumerate-np", help="list symmetric polygons of height 2h")
    p.add_argument("--h", type=int, required=True)
    common(p, ("text", "json"))
    p.set_defaults(func=_enumerate)

    p = sub.add_parser("sigma-solve", help="triangularize a sigma-linear system (JSON file)")
    p.add_argument("system")
    p.add_argument("--brute", type=int, default=0, metavar="S",
                   help="also compare brute-force solutions over F_{q^S}")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=_sigma_solve)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "p", 3) < 3 or getattr(args, "r", 1) < 1:
            raise UsageError("need an odd prime p and r >= 1")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RZError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
