"""essdim command line: ``report`` a group, or ``verify`` a suite.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import EssDimError
from .group import ORDER_CAP
from .groupspec import build_group, parse_group_spec
from .lattice import set_threads
from .report import build_report
from .verify import SUITES, run_suite


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="essdim", description="Essential dimension of finite p-groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="chain profile, ed and a minimal faithful representation")
    rep.add_argument("spec", help='group spec, e.g. "extraspecial(3,1,p)" or "perm 4: (1 2 3 4), (1 3)"')
    rep.add_argument("--json", action="store_true", help="emit the report as JSON")
    rep.add_argument("--roots", type=int, metavar="R", help="k contains a primitive p^R-th root of unity")
    rep.add_argument("--prime", type=int, help="expected prime; checked against the group order")
    rep.add_argument("--timings", action="store_true", help="include stage timings")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", help="one of: " + ", ".join(SUITES))
    ver.add_argument("--json", action="store_true", help="emit per-case results as JSON")

    for p in (rep, ver):
        p.add_argument("--threads", type=int, default=1, help="worker threads for lattice descent")
        p.add_argument("--max-order", type=int, default=None, metavar="N", help="refuse or skip groups above order N")
        p.add_argument("--quiet", action="store_true", help="print only the essential result")
    return parser


def _report(args) -> int:
    max_order = args.max_order or ORDER_CAP
    spec = parse_group_spec(args.spec)
    G = build_group(spec, max_order=max_order)
    if args.prime is not None and G.order > 1 and args.prime != G.p:
        raise EssDimError(f"--prime {args.prime} does not match the group prime {G.p}")
    if args.roots is not None and args.roots < 1:
        raise EssDimError("--roots must be at least 1")
    rep = build_report(G, args.spec, r=args.roots, timings=args.timings)
    if args.json:
        sys.stdout.write(rep.to_json())
    elif args.quiet:
        print(rep.ed)
    else:
        sys.stdout.write(rep.render())
    return 0


def _verify(args) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
        return 2
    t = time.perf_counter()
    res = run_suite(args.suite, args.max_order)
    elapsed = time.perf_counter() - t
    if args.json:
        payload = {
            "suite": res.suite,
            "passed": res.passed,
            "skipped": res.skipped,
            "cases": [{"name": c.name, "expected": c.expected, "actual": c.actual, "passed": c.passed}
                      for c in res.cases],
        }
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for c in res.cases:
            if args.quiet and c.passed:
                continue
            mark = "ok  " if c.passed else "FAIL"
            print(f"{mark} {c.name}: expected {c.expected}, got {c.actual}")
        for s in res.skipped:
            if not args.quiet:
                print(f"skip {s} (above --max-order)")
        n_bad = len(res.failures)
        print(f"{res.suite}: {len(res.cases) - n_bad}/{len(res.cases)} passed in {elapsed:.1f}s")
    return 0 if res.passed else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    set_threads(args.threads)
    try:
        if args.command == "report":
            return _report(args)
        return _verify(args)
    except EssDimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
