"""Command line front end.

    tcover construct NAME [params]        canonical JSON on stdout
    tcover solve FILE --tau|--nu          certificate JSON on stdout
    tcover verify FILE --CLAIM ...        per-claim report, exit 0 iff all pass
    tcover reproduce [--suite core]       table on stdout, JSON via --json

Exit codes: 0 success, 1 claim failure, 2 usage or parse error, 3 solver
budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from tcover import constructions as cons
from tcover.geometry import affine_family, projective_plane, truncated_plane
from tcover.hypercore import (
    CrossFamily,
    DocumentError,
    PartitionedHypergraph,
    VacuousHypergraphError,
    check_partition,
    dumps,
    dumps_json,
    is_cross_intersecting,
    is_intersecting,
    label,
    load_any,
    parse_label,
)
from tcover.reproduce import exit_code, format_table, report_document, run_suite
from tcover.solver import SolveBudget, Unresolved, check_evasive, nu_exact, tau_exact, verify_cover

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNRESOLVED = 0, 1, 2, 3

CONSTRUCTIONS = (
    "grid", "affine", "base", "compose", "merge", "pentagon",
    "four-square", "witness", "plane", "truncated-plane",
)


class UsageError(Exception):
    pass


def _budget(args) -> SolveBudget:
    try:
        return SolveBudget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"construct {args.name} needs --{n}")
    return [getattr(args, n) for n in names]


def _read(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return load_any(text)


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _family(args) -> CrossFamily:
    kind = args.family or "grid"
    if kind == "grid":
        (a,) = _need(args, "a")
        return cons.grid_family(a)
    (q,) = _need(args, "q")
    return affine_family(q)


def cmd_construct(args) -> int:
    budget = _budget(args)
    name = args.name
    if name == "grid":
        (a,) = _need(args, "a")
        out = cons.grid_family(a)
    elif name == "affine":
        (q,) = _need(args, "q")
        out = affine_family(q)
    elif name == "base":
        (b,) = _need(args, "b")
        out = cons.base_intersecting(b)
    elif name == "pentagon":
        out = cons.pentagon_example()
    elif name == "four-square":
        out = cons.four_square_example()
    elif name == "plane":
        (q,) = _need(args, "q")
        out = projective_plane(q).to_hypergraph()
    elif name == "truncated-plane":
        out = truncated_plane(args.q or 3)
    elif name == "compose":
        family = _family(args)
        if args.input:
            f = _read(args.input)
            if isinstance(f, CrossFamily):
                raise UsageError("compose --input must be a hypergraph document")
        else:
            (b,) = _need(args, "b")
            f = cons.base_intersecting(b)
        out = cons.compose(family, f, budget=budget)
    elif name == "merge":
        if not args.input or args.sides is None:
            raise UsageError("construct merge needs --input and --sides")
        p = _read(args.input)
        if not isinstance(p, PartitionedHypergraph):
            raise UsageError("merge needs a document with sides and profile")
        out = cons.merge_sides(p, _int_list(args.sides))
    elif name == "witness":
        a, b = _need(args, "a", "b")
        report = cons.witness(a, b, budget=budget, cap=args.cap, verify=not args.no_verify)
        rep_text = dumps_json(report.to_dict())
        if args.report:
            Path(args.report).write_text(rep_text)
        else:
            sys.stderr.write(rep_text)
        if report.result is not None:
            sys.stdout.write(dumps(report.result))
        if report.status == "failed":
            return EXIT_FAIL
        if report.status in ("unresolved", "not-materialized"):
            return EXIT_UNRESOLVED
        return EXIT_OK
    else:
        raise UsageError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_solve(args) -> int:
    obj = _read(args.input)
    if isinstance(obj, CrossFamily):
        obj = obj.union()
    budget = _budget(args)
    cert = nu_exact(obj, budget) if args.nu else tau_exact(obj, budget)
    sys.stdout.write(dumps_json(cert.to_dict(timings=args.timings)))
    return EXIT_OK if cert.optimal else EXIT_UNRESOLVED


def _load_claims(args) -> dict:
    claims = {}
    if args.claims:
        try:
            data = json.loads(Path(args.claims).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read claims file: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("claims file must hold a JSON object")
        claims.update(data)
    for flag in ("intersecting", "partition", "cross_intersecting", "evasive"):
        if getattr(args, flag):
            claims.setdefault(flag.replace("_", "-"), True)
    if args.cover is not None:
        claims["cover-certificate"] = [s for s in args.cover.split(",") if s]
    if args.profile is not None:
        claims["partition"] = _int_list(args.profile)
    known = {"intersecting", "partition", "cover-certificate", "evasive", "cross-intersecting"}
    unknown = sorted(set(claims) - known)
    if unknown:
        raise UsageError(f"unknown claim {unknown[0]!r}")
    if not claims:
        raise UsageError("no claims given")
    return claims


def cmd_verify(args) -> int:
    claims = _load_claims(args)
    obj = _read(args.input)
    budget = _budget(args)
    results = []
    for claim in sorted(claims):
        value = claims[claim]
        ok, detail = _verify_one(claim, value, obj, budget)
        results.append((claim, ok, detail))
    for claim, ok, detail in results:
        status = {True: "pass", False: "fail", None: "unresolved"}[ok]
        print(f"{claim:<20} {status:<10} {detail}")
    if any(ok is False for _, ok, _ in results):
        return EXIT_FAIL
    if any(ok is None for _, ok, _ in results):
        return EXIT_UNRESOLVED
    return EXIT_OK


def _verify_one(claim: str, value, obj, budget):
    family = obj if isinstance(obj, CrossFamily) else None
    hyper = family.union() if family else obj
    if claim in ("evasive", "cross-intersecting"):
        if family is None:
            raise UsageError(f"--{claim} needs a family document")
        if claim == "cross-intersecting":
            return is_cross_intersecting(family), f"{len(family)} members"
        try:
            rep = check_evasive(family, budget)
        except Unresolved as exc:
            return None, str(exc)
        return rep.is_evasive, json.dumps(rep.to_dict(), sort_keys=True)
    if claim == "intersecting":
        try:
            return is_intersecting(hyper), f"{len(hyper.edges)} edges"
        except VacuousHypergraphError as exc:
            return False, str(exc)
    if claim == "partition":
        if not isinstance(hyper, PartitionedHypergraph):
            return False, "document has no sides/profile"
        if isinstance(value, list):
            hyper = PartitionedHypergraph(base=hyper.base, sides=hyper.sides, profile=value)
        res = check_partition(hyper)
        return res.ok, res.reason or f"profile {list(hyper.profile)}"
    if claim == "cover-certificate":
        try:
            cover = [parse_label(s) for s in value]
            ok = verify_cover(hyper, cover)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad cover: {exc}") from None
        return ok, f"{len(cover)} vertices {[label(v) for v in cover]}"
    raise UsageError(f"unknown claim {claim!r}")


def cmd_reproduce(args) -> int:
    rows = run_suite(args.suite, _budget(args))
    print(format_table(rows))
    if args.json:
        Path(args.json).write_text(dumps_json(report_document(rows, args.suite, args.timings)))
    return exit_code(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcover",
        description="Build and verify intersecting partitioned hypergraphs with large cover number.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def budget_flags(p):
        p.add_argument("--max-nodes", type=int, default=50_000_000)
        p.add_argument("--max-seconds", type=float, default=300.0)

    p = sub.add_parser("construct", help="build a named construction")
    p.add_argument("name", help=", ".join(CONSTRUCTIONS))
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--family", choices=("grid", "affine"))
    p.add_argument("--input", help="hypergraph document (compose F, merge source)")
    p.add_argument("--sides", help="comma-separated side indices for merge")
    p.add_argument("--cap", type=int, default=cons.DEFAULT_EDGE_CAP)
    p.add_argument("--no-verify", action="store_true", help="witness: skip the exact tau solve")
    p.add_argument("--report", help="witness: write the report here instead of stderr")
    budget_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", help="exact tau or nu with certificate")
    p.add_argument("input", help="document path or - for stdin")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--tau", action="store_true")
    which.add_argument("--nu", action="store_true")
    p.add_argument("--timings", action="store_true", help="include elapsed seconds")
    budget_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check claims about a document")
    p.add_argument("input", help="document path or - for stdin")
    p.add_argument("--claims", help="JSON object of claims")
    p.add_argument("--intersecting", action="store_true")
    p.add_argument("--partition", action="store_true")
    p.add_argument("--profile", help="partition: override the document profile, e.g. 2,2")
    p.add_argument("--cross-intersecting", action="store_true")
    p.add_argument("--evasive", action="store_true")
    p.add_argument("--cover", help="comma-separated vertex labels to check as a cover")
    budget_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="recompute the published values")
    p.add_argument("--suite", choices=("core", "extended"), default="core")
    p.add_argument("--json", help="write the machine-readable report here")
    p.add_argument("--timings", action="store_true", help="include runtimes in the JSON")
    budget_flags(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tcover: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, OSError) as exc:
        print(f"tcover: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (cons.PreconditionError, ValueError) as exc:
        print(f"tcover: refused: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
