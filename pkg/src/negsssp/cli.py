"""Command line entry point: ``negsssp {solve,ldd,gen,verify,bench}``.

Vertex ids and arc ids on the command line and in every output are 1-based,
matching the DIMACS files. All randomness comes from ``--seed`` (default 0),
so two runs with the same arguments print the same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .context import ExecutionContext
from .errors import NegSSSPError, ParseError
from .io import MODES, GeneratorSpec, bench, format_table, generate, parse_dimacs, parse_result, \
    write_dimacs, write_result
from .ldd import LddParams, low_diam_decomposition
from .rng import Rng
from .solver import solve
from .sssp import NegativeCycle
from .verify import verify_negative_cycle, verify_tree

EXIT_TREE, EXIT_CYCLE, EXIT_ERROR = 0, 1, 2

DEFAULT_FAMILIES = [
    {"name": "hidden-64", "n": 64, "m": 256, "lo": -100, "hi": 100, "mode": "hidden"},
    {"name": "hidden-128", "n": 128, "m": 512, "lo": -100, "hi": 100, "mode": "hidden"},
    {"name": "planted-32", "n": 32, "m": 96, "lo": -8, "hi": 15, "mode": "planted"},
]
TIMING_COLUMNS = ("solver_seconds", "bf_seconds")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_graph(path: str):
    return parse_dimacs(_read(path))


def _source(arg, declared, n: int) -> int:
    if arg is not None:
        s = arg - 1
    elif declared is not None:
        s = declared
    else:
        s = 0
    if not 0 <= s < n:
        raise ParseError(f"source {s + 1} out of range 1..{n}")
    return s


def cmd_solve(args) -> int:
    g, declared = _load_graph(args.input)
    s = _source(args.source, declared, g.n)
    kw = {}
    if args.budget_factor is not None:
        kw["budget_factor"] = args.budget_factor
    if args.attempts is not None:
        kw["mc_attempts_factor"] = args.attempts
    ctx = ExecutionContext.seeded(args.seed, **kw)
    res = solve(g, s, ctx)
    sys.stdout.write(write_result(res))
    return EXIT_CYCLE if res.cycle is not None else EXIT_TREE


def cmd_ldd(args) -> int:
    g, _ = _load_graph(args.input)
    params = LddParams(D=args.diameter, global_n=max(2, g.n))
    res = low_diam_decomposition(g, params, Rng(args.seed))
    out = [str(e + 1) for e in sorted(res.removed)]
    st = res.stats
    for key in ("calls", "max_depth", "premature", "boundary", "max_participation"):
        out.append(f"c {key} {st[key]}")
    out.append(f"c removed {len(res.removed)} of {g.m}")
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def cmd_gen(args) -> int:
    spec = GeneratorSpec(args.n, args.m, args.lo, args.hi, args.mode, args.seed)
    g = generate(spec)
    comment = f"gen n={spec.n} m={spec.m} w=[{spec.lo},{spec.hi}] mode={spec.mode} seed={spec.seed}"
    sys.stdout.write(write_dimacs(g, comment=comment))
    return 0


def cmd_verify(args) -> int:
    g, _ = _load_graph(args.input)
    got = parse_result(_read(args.result), g)
    if isinstance(got, NegativeCycle):
        bad = verify_negative_cycle(g, got)
        what = "cycle"
    else:
        bad = verify_tree(g, got)
        what = "tree"
    if bad:
        for line in bad:
            print(f"violation: {line}")
        return 1
    print(f"ok {what}")
    return 0


def _bench_one(job):
    fam, seed = job
    return bench([fam], seed)[0]


def cmd_bench(args) -> int:
    if args.families:
        families = json.loads(_read(args.families))
    else:
        families = DEFAULT_FAMILIES
    jobs = [(dict(fam, seed=fam.get("seed", args.seed + i)), args.seed)
            for i, fam in enumerate(families)]
    if args.parallel > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    if not args.timing:
        rows = [{k: v for k, v in r.items() if k not in TIMING_COLUMNS} for r in rows]
    sys.stdout.write(format_table(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="negsssp",
                                description="Shortest paths with negative integer weights.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="shortest path tree or negative cycle")
    sp.add_argument("--input", required=True, help="DIMACS sp file, '-' for stdin")
    sp.add_argument("--source", type=int, help="1-based source (default: 's' line, else 1)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget-factor", type=int)
    sp.add_argument("--attempts", type=int, help="Monte-Carlo attempts per log2(n)")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("ldd", help="low-diameter decomposition of a nonnegative graph")
    sp.add_argument("--input", required=True)
    sp.add_argument("--diameter", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_ldd)

    sp = sub.add_parser("gen", help="random instance in DIMACS format")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--lo", type=int, default=-8)
    sp.add_argument("--hi", type=int, default=15)
    sp.add_argument("--mode", choices=MODES, default="hidden")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="check a solve result against its graph")
    sp.add_argument("--input", required=True)
    sp.add_argument("--result", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="solver against Bellman-Ford on generated families")
    sp.add_argument("--families", help="JSON list of families (default: built-in set)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--parallel", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include wall-clock columns")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NegSSSPError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
