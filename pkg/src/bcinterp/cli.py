"""Command-line front end.

Exit codes: 0 when everything verified, 1 on a mismatch, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .arith.serialize import to_json, to_text
from .arith.specialize import IllFormedSpec, parse_spec, substitute
from .combinatorics import Partition, PartitionError, partitions_upto

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_timeout(text: str | None):
    """``90``, ``90s``, ``5m``, ``1h`` -> seconds."""
    if text is None:
        return None
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([smh]?)\s*", text)
    if not m or float(m.group(1)) <= 0:
        raise UsageError(f"malformed timeout {text!r} (expected e.g. 30s, 5m, 1h)")
    return float(m.group(1)) * {"": 1, "s": 1, "m": 60, "h": 3600}[m.group(2)]


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except PartitionError as exc:
        raise UsageError(str(exc)) from None


def _method(text: str):
    """``solve``, ``comb``, ``branch`` or ``integral`` / ``integral(k)``."""
    m = re.fullmatch(r"(solve|comb|branch|integral)(?:\((\d+)\))?", text.strip())
    if not m or (m.group(2) is not None and m.group(1) != "integral"):
        raise UsageError(f"unknown method {text!r}")
    return m.group(1), None if m.group(2) is None else int(m.group(2))


def _emit(value, fmt: str, spec=None):
    if spec is not None:
        value = substitute(value, spec)
    return to_json(value) if fmt == "json" else to_text(value)


# -- compute -------------------------------------------------------------------------

def cmd_compute(args) -> int:
    from .interp import build, norm_H
    from .macdonald import macdonald_p

    mu = _partition(args.mu)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    if len(mu) > args.n:
        raise UsageError(f"partition {mu} has more than n={args.n} parts")
    spec = _spec(args.spec)
    if args.what == "pstar":
        route, k = _method(args.method)
        if route == "integral":
            k = args.k if k is None else k
            if k is None:
                raise UsageError("the integral method needs --k or integral(k)")
            if k < 0:
                raise UsageError("k must be nonnegative")
        value = build(mu, args.n, route, k).value
    elif args.what == "macdonald":
        value = macdonald_p(mu, args.n)
    else:
        value = norm_H(mu, args.n)
    print(_emit(value, args.format, spec))
    return EXIT_OK


def _spec(text):
    if text is None:
        return None
    try:
        return parse_spec(text)
    except IllFormedSpec as exc:
        raise UsageError(str(exc)) from None


# -- verify --------------------------------------------------------------------------

def _ints(text: str | None, what: str):
    if text is None:
        return None
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--{what} expects comma-separated integers, got {text!r}") from None


def cmd_verify(args) -> int:
    from .verify import SUITES, Grid, default_workers, expand, run_cases

    timeout = parse_timeout(args.timeout)
    suites = SUITES if args.suite == "all" else (args.suite,)
    grid = Grid()
    ns = _ints(args.n, "n")
    if ns is not None:
        if any(n < 1 for n in ns):
            raise UsageError("--n values must be positive")
        grid.ns = ns
    ks = _ints(args.k, "k")
    if ks is not None:
        if any(k < 0 for k in ks):
            raise UsageError("--k values must be nonnegative")
        grid.ks = ks
    if args.max_weight is not None:
        if args.max_weight < 0:
            raise UsageError("--max-weight must be nonnegative")
        grid.max_weight = args.max_weight
    if args.m is not None:
        if args.m < 1:
            raise UsageError("--m must be positive")
        grid.m = args.m
    if args.points < 1:
        raise UsageError("--points must be positive")
    grid.seed, grid.points = args.seed, args.points
    workers = args.workers if args.workers is not None else default_workers()
    if workers < 1:
        raise UsageError("--workers must be positive")
    cases = [c for s in suites for c in expand(s, grid)]
    results = run_cases(cases, workers, timeout)
    failed = 0
    for r in results:
        line = f"{r.status:7} {r.case.suite:18} {r.case.cid}"
        if r.detail:
            line += f"  [{r.detail}]"
        if args.times:
            line += f"  ({r.seconds:.2f}s)"
        print(line)
        failed += not r.ok
    print(f"{len(results) - failed}/{len(results)} passed")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


# -- refute --------------------------------------------------------------------------

def cmd_refute(args) -> int:
    from .refute import InsufficientProbes, recheck, refute

    if args.d < 1:
        raise UsageError("--d must be at least 1")
    if args.deg < 1:
        raise UsageError("--deg must be at least 1")
    try:
        cert = refute(args.d, args.deg, args.probes)
    except InsufficientProbes as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(cert.to_json())
    else:
        print(cert.sketch())
        print(cert.to_json())
    return EXIT_OK if cert.valid and recheck(cert) else EXIT_MISMATCH


# -- golden files --------------------------------------------------------------------

def golden_values(max_weight: int = 2, max_n: int = 2):
    """Deterministic reference values keyed by file name."""
    from .interp import norm_H, pstar
    from .macdonald import macdonald_p

    out = {}
    for n in range(1, max_n + 1):
        for mu in partitions_upto(max_weight, n):
            tag = f"n{n}_mu{mu.key().replace(',', '-')}"
            out[f"pstar_{tag}.json"] = pstar(mu, n)
            out[f"normH_{tag}.json"] = norm_H(mu, n)
            out[f"macdonald_{tag}.json"] = macdonald_p(mu, n)
    return out


def cmd_golden(args) -> int:
    from .arith.serialize import from_json_obj, to_json_obj

    root = Path(args.dir)
    values = golden_values(args.max_weight, args.max_n)
    if args.action == "write":
        root.mkdir(parents=True, exist_ok=True)
        for name, value in sorted(values.items()):
            (root / name).write_text(json.dumps(to_json_obj(value), sort_keys=True, indent=1) + "\n")
        print(f"wrote {len(values)} files to {root}")
        return EXIT_OK
    if not root.is_dir():
        raise UsageError(f"no golden directory at {root}")
    bad = 0
    for name, value in sorted(values.items()):
        path = root / name
        if not path.exists():
            print(f"MISSING {name}")
            bad += 1
            continue
        stored = from_json_obj(json.loads(path.read_text()))
        status = "PASS" if stored == value else "FAIL"
        bad += status != "PASS"
        print(f"{status:7} {name}")
    print(f"{len(values) - bad}/{len(values)} golden files match")
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .verify import SUITES

    parser = argparse.ArgumentParser(prog="bcinterp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print a polynomial in canonical form")
    p.add_argument("what", choices=("pstar", "macdonald", "norm-h"))
    p.add_argument("--mu", required=True, help="partition, e.g. 2,1 (0 for empty)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", default="comb", help="solve, comb, branch or integral(k)")
    p.add_argument("--k", type=int, help="t = q^(2k+1) for the integral method")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--spec", help="numeric values, e.g. q=1/4,t=1/9,s=5")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--n", help="comma-separated values of n")
    p.add_argument("--m", type=int, help="second size for the Cauchy suites")
    p.add_argument("--k", help="comma-separated values of k")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--points", type=int, default=5, help="random specializations per case")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, help="default: $BCINTERP_WORKERS or the CPU count")
    p.add_argument("--timeout", help="wall-clock limit, e.g. 90s or 10m")
    p.add_argument("--times", action="store_true", help="append per-case timings")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("refute", help="emit a q-difference equation refutation certificate")
    p.add_argument("what", choices=("qde",))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--probes", type=int, help="default: deg + 1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("golden", help="write or check golden files")
    p.add_argument("action", choices=("write", "check"))
    p.add_argument("--dir", default="tests/golden")
    p.add_argument("--max-weight", type=int, default=2)
    p.add_argument("--max-n", type=int, default=2)
    p.set_defaults(func=cmd_golden)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bcinterp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
