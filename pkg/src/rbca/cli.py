"""Command-line front end: ``rbca <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 budget or
horizon exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from . import blocks as B
from . import engine, pbm, repro
from .exact import BudgetExceeded
from .rules import format_rules, parse_support
from .stability import CSV_HEADER, default_workers, estimate_sigma, exact_sigma, parse_distribution

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    return default_workers()


def _manifest(args, argv, started: float) -> dict:
    flags = {k: v for k, v in vars(args).items() if k != "func"}
    return {
        "command": args.command,
        "argv": list(argv),
        "flags": flags,
        "seed": flags.get("seed"),
        "version": __version__,
        "wall_clock_seconds": round(time.perf_counter() - started, 6),
        "finished_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }


def _write_output(args, argv, started, data: bytes) -> None:
    """Write ``data`` to ``--out`` (plus a ``.manifest.json`` sidecar) or stdout."""
    if args.out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    with open(args.out, "wb") as fh:
        fh.write(data)
    with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(_manifest(args, argv, started), fh, indent=2, default=str)
        fh.write("\n")


def _distribution(text: str):
    try:
        return parse_distribution(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _support(text: str):
    try:
        s = parse_support(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not s:
        raise UsageError("empty support")
    return s


# --- commands -------------------------------------------------------------------------


def cmd_simulate(args, argv, started) -> int:
    if args.n < 2 or args.steps < 0:
        raise UsageError("need --n >= 2 and --steps >= 0")
    rng = np.random.default_rng(args.seed)
    if args.rules:
        rule_list = [int(tok) for tok in args.rules.split(",")]
    else:
        rule_list = [int(j) for j in _distribution(args.dist).sample(rng, args.n)]
    if args.init:
        cells = [int(ch) for ch in args.init]
    else:
        cells = rng.integers(0, 2, size=args.n, dtype=np.uint8)
    if len(rule_list) != args.n or len(cells) != args.n:
        raise UsageError("--rules and --init must have --n entries")
    rv = engine.RuleVector(tuple(rule_list))
    config = engine.RingConfiguration.from_cells(cells)
    rows = engine.space_time(config, rv, args.steps)
    if args.format == "pbm":
        comment = f"rbca simulate n={args.n} seed={args.seed} rules={format_rules(rv.rules)}"
        data = pbm.encode(rows, binary=args.binary, comment=comment)
    else:
        lines = ["t," + ",".join(f"c{i}" for i in range(args.n))]
        lines += [f"{t}," + ",".join(map(str, row)) for t, row in enumerate(rows)]
        data = ("\n".join(lines) + "\n").encode("utf-8")
    summary = engine.run_until_cycle(config, rv, args.max_steps, with_times=False)
    _write_output(args, argv, started, data)
    line = (f"preperiod={summary.preperiod} period={summary.period} "
            f"stable_fraction={summary.stable_fraction:.6f}")
    print(line, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_estimate(args, argv, started) -> int:
    if args.samples < 1 or args.n < 2:
        raise UsageError("need --samples >= 1 and --n >= 2")
    dist = _distribution(args.dist)
    est = estimate_sigma(args.n, dist, args.samples, args.max_steps, args.seed, _threads(args))
    _write_output(args, argv, started, f"{CSV_HEADER}\n{est.csv_row()}\n".encode())
    return EXIT_OK


def cmd_exact(args, argv, started) -> int:
    if args.support:
        s = _support(args.support)
    else:
        dist = _distribution(args.dist)
        if not dist.is_uniform_on_support():
            raise UsageError("exact enumeration needs rules uniform on their support")
        s = dist.support
    try:
        est = exact_sigma(args.n, s, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = f"{CSV_HEADER}\n{est.csv_row()}\n"
    text += f"exact={est.exact}"
    if est.dyadic():
        text += f" dyadic={est.dyadic()}"
    _write_output(args, argv, started, (text + "\n").encode())
    return EXIT_OK


def _block_spec(args) -> B.BlockSpec:
    try:
        phi = tuple(int(tok) for tok in args.phi.split(","))
        if args.family:
            forbid = [item for item in (args.forbid or "").split(",") if item]
            return B.BlockSpec.family(phi, args.family, forbid, args.center)
        if not args.b:
            raise UsageError("give --b or --family")
        return B.BlockSpec.single(phi, B.parse_word(args.b), args.center)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_blocks(args, argv, started) -> int:
    if args.action == "verify":
        spec = _block_spec(args)
        verdict = B.analyze_block(spec, args.max_layers)
        print(verdict.describe())
        if len(spec.b_states) > 1:
            rec = B.member_recurrence(spec)
            print("recurrence=" + ",".join(str(t) for t in sorted(set(rec.values()))))
        return EXIT_OK if verdict.kind is not B.BlockKind.NEITHER else EXIT_FAIL
    s = _support(args.support)
    if args.absorbing:
        if args.pmax < 3:
            raise UsageError("absorbing search needs --pmax >= 3")
        found = B.search_absorbing(s, args.pmax, args.constant_center, limit=args.limit)
    else:
        if args.pmax < 1:
            raise UsageError("--pmax must be >= 1")
        found = B.search_impermeable(s, args.pmax, limit=args.limit)
    if not found:
        print(f"no witness up to p={args.pmax}")
        return EXIT_OK
    for spec in found:
        print(B.analyze_block(spec).describe())
    return EXIT_OK


def cmd_classify(args, argv, started) -> int:
    verdict = B.theorem1_classify(_support(args.support))
    print(verdict.describe())
    return EXIT_OK


def cmd_repro(args, argv, started) -> int:
    if args.suite not in repro.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(repro.SUITES)}")
    kwargs = {}
    if args.suite in ("sigma100", "walls"):
        kwargs["workers"] = _threads(args)
    res = repro.run_suite(args.suite, **kwargs)
    for line in res.lines:
        print(line)
    print(f"{'PASS' if res.passed else 'FAIL'} {res.name} (criterion {res.criterion})")
    return EXIT_OK if res.passed else EXIT_FAIL


# --- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbca", description="Random Boolean cellular automata.")
    parser.add_argument("--version", action="version", version=f"rbca {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="space-time diagram of one ring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dist", default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--rules", help="explicit comma-separated rule vector")
    p.add_argument("--init", help="explicit initial configuration, e.g. 1000")
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("pbm", "csv"), default="pbm")
    p.add_argument("--binary", action="store_true", help="P4 instead of P1")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", help="Monte Carlo sigma_N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dist", default="uniform")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("exact", help="exhaustive sigma_N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dist", default="uniform")
    p.add_argument("--support")
    p.add_argument("--budget", type=int, default=1 << 31)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("blocks", help="verify or search blocks")
    bsub = p.add_subparsers(dest="action", required=True)
    v = bsub.add_parser("verify")
    v.add_argument("--phi", required=True)
    v.add_argument("--b")
    v.add_argument("--center", type=int)
    v.add_argument("--family", help="word pattern with wildcards, e.g. 001101010110????")
    v.add_argument("--forbid", help="e.g. xz=11,yw=11")
    v.add_argument("--max-layers", type=int, default=1 << 16)
    v.set_defaults(func=cmd_blocks)
    s = bsub.add_parser("search")
    s.add_argument("--support", required=True)
    s.add_argument("--pmax", type=int, default=6)
    s.add_argument("--absorbing", action="store_true")
    s.add_argument("--constant-center", action="store_true")
    s.add_argument("--limit", type=int, default=1)
    s.set_defaults(func=cmd_blocks)

    p = sub.add_parser("classify", help="sigma_* status of a support")
    p.add_argument("--support", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("repro", help="run one reproduction suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return args.func(args, argv, started)
    except UsageError as exc:
        print(f"rbca: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, engine.CycleNotFound, B.LayerCycleNotFound) as exc:
        print(f"rbca: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"rbca: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
