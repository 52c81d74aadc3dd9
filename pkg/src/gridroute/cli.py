"""Command-line interface: ``gridroute {route,verify,bench,perm}``.

Exit codes: 0 success, 1 verification failure, 2 malformed input or
configuration, 3 permutation that is not a bijection.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bench import VerificationFailed, plot_benchmark, run_benchmark, write_csv
from .core import Grid, verify_schedule
from .exceptions import InvalidPermutation, InvalidSpec
from .families import RNG_NAME, generate, parse_family
from .grid import ALGORITHMS, route
from .io import FormatError, read_permutation, read_schedule, write_permutation, write_schedule
from .validation import check_grid

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_PERM = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _grid_arg(text: str) -> Grid:
    try:
        return check_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _list_arg(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _load_perm(path, grid: Grid | None):
    pi = read_permutation(path)
    if grid is not None and pi.grid != grid:
        raise FormatError(f"{path} describes a {pi.grid.m}x{pi.grid.n} grid, but --grid is {grid.m}x{grid.n}")
    return pi


def _zero_based(v) -> tuple[int, int]:
    return (v[0] - 1, v[1] - 1)


def cmd_route(args) -> int:
    try:
        pi = _load_perm(args.perm, args.grid)
    except FormatError as exc:
        return _fail(EXIT_INPUT, str(exc))
    except InvalidPermutation as exc:
        return _fail(EXIT_PERM, f"{args.perm}: {exc}")
    result = route(
        pi.grid,
        pi,
        algorithm=args.algo,
        use_transpose=not args.no_transpose,
        naive_fallback=not args.no_fallback,
        compact=args.compact,
    )
    check = verify_schedule(pi.grid, pi, result.schedule)
    if not check:
        return _fail(
            EXIT_VERIFY,
            f"internal error: schedule sends token {_zero_based(check.failing_vertex)} "
            f"to {_zero_based(check.reached)}",
        )
    if args.out:
        write_schedule(args.out, pi.grid, result.schedule, result.algorithm)
    print(
        f"algorithm={result.algorithm} depth={result.depth} swaps={result.size} "
        f"time_us={int(round(result.elapsed * 1e6))}"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        pi = _load_perm(args.perm, args.grid)
        grid, schedule = read_schedule(args.schedule)
    except FormatError as exc:
        return _fail(EXIT_INPUT, str(exc))
    except InvalidPermutation as exc:
        return _fail(EXIT_PERM, f"{args.perm}: {exc}")
    if grid != pi.grid:
        return _fail(EXIT_INPUT, "schedule and permutation describe different grids")
    try:
        check = verify_schedule(grid, pi, schedule)
    except ValueError as exc:
        print(f"FAIL: {exc}")
        return EXIT_VERIFY
    if check:
        print(f"ok depth={schedule.depth} swaps={schedule.size}")
        return EXIT_OK
    v = check.failing_vertex
    print(
        f"FAIL: token starting at {_zero_based(v)} ends at {_zero_based(check.reached)}, "
        f"expected {_zero_based(pi[v])}"
    )
    return EXIT_VERIFY


def _bench_config(args) -> dict:
    cfg: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise _InputError(f"cannot load config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise _InputError("config must be a JSON object")
    for key in ("grids", "families", "algos"):
        value = getattr(args, key)
        if value is not None:
            cfg[key] = _list_arg(value)
        elif isinstance(cfg.get(key), str):
            cfg[key] = _list_arg(cfg[key])
    for key in ("trials", "seed", "out", "plot"):
        value = getattr(args, key)
        if value is not None:
            cfg[key] = value
    cfg.setdefault("algos", ["local", "naive", "ats"])
    cfg.setdefault("seed", 0)
    missing = [k for k in ("grids", "families", "trials", "out") if cfg.get(k) in (None, [])]
    if missing:
        raise _InputError(f"missing benchmark setting(s): {', '.join(missing)}")
    try:
        cfg["grids"] = [check_grid(g) for g in cfg["grids"]]
        cfg["families"] = [parse_family(f) for f in cfg["families"]]
        cfg["trials"] = int(cfg["trials"])
        cfg["seed"] = int(cfg["seed"])
    except (ValueError, TypeError, InvalidSpec) as exc:
        raise _InputError(str(exc)) from None
    if cfg["trials"] < 1:
        raise _InputError("trials must be at least 1")
    bad = [a for a in cfg["algos"] if a not in ALGORITHMS]
    if bad:
        raise _InputError(f"unknown algorithm(s) {bad}; expected {list(ALGORITHMS)}")
    return cfg


def cmd_bench(args) -> int:
    try:
        cfg = _bench_config(args)
        for grid in cfg["grids"]:
            for family in cfg["families"]:
                family.validate(grid)
    except (_InputError, InvalidSpec) as exc:
        return _fail(EXIT_INPUT, str(exc))
    try:
        rows = run_benchmark(
            cfg["grids"],
            cfg["families"],
            cfg["trials"],
            cfg["seed"],
            cfg["algos"],
            compact=False,
        )
    except VerificationFailed as exc:
        return _fail(EXIT_VERIFY, str(exc))
    write_csv(cfg["out"], rows)
    print(f"wrote {len(rows)} rows to {cfg['out']} (rng={RNG_NAME}, seed base={cfg['seed']})")
    if cfg.get("plot"):
        for path in plot_benchmark(rows, cfg["plot"]):
            print(f"wrote {path}")
    return EXIT_OK


def cmd_perm(args) -> int:
    try:
        spec = parse_family(args.family, args.seed)
        pi = generate(args.grid, spec)
    except InvalidSpec as exc:
        return _fail(EXIT_INPUT, str(exc))
    write_permutation(args.out, pi)
    print(f"wrote {spec.name} permutation of {args.grid.m}x{args.grid.n} (seed {args.seed}) to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridroute", description="Swap-network routing on grid coupling graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("route", help="route one permutation file and write its schedule")
    p.add_argument("--grid", type=_grid_arg, required=True, help="grid dimensions, e.g. 8x8")
    p.add_argument("--perm", required=True, help="permutation JSON file")
    p.add_argument("--algo", choices=ALGORITHMS, default="local")
    p.add_argument("--no-transpose", action="store_true", help="skip the row-column-row orientation")
    p.add_argument("--no-fallback", action="store_true", help="do not fall back to the naive router")
    p.add_argument("--compact", action="store_true", help="hoist swaps into earlier layers")
    p.add_argument("--out", help="schedule JSON file to write")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("verify", help="check that a schedule realizes a permutation")
    p.add_argument("--grid", type=_grid_arg, required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--schedule", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a benchmark sweep and write CSV (and optional SVG plots)")
    p.add_argument("--config", help="JSON file with any of grids, families, trials, seed, algos, out, plot")
    p.add_argument("--grids", help="comma-separated, e.g. 4x4,8x8")
    p.add_argument("--families", help="comma-separated, e.g. uniform,block_local:2x2,overlapping_block:3x3:1")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--algos", help=f"comma-separated subset of {','.join(ALGORITHMS)}")
    p.add_argument("--out", help="CSV file to write")
    p.add_argument("--plot", help="directory for depth.svg and time.svg")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("perm", help="write a seeded random permutation file")
    p.add_argument("--grid", type=_grid_arg, required=True)
    p.add_argument("--family", default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_perm)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
