"""Benchmark sweeps: route many seeded instances and tabulate depth and timing."""

from __future__ import annotations

import csv
import io
import os
import statistics
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

from .core import Grid, compact_schedule, verify_schedule
from .families import FamilySpec, generate
from .grid import route
from .io import atomic_write_text
from .svgplot import line_chart

CSV_HEADER = ("grid_m", "grid_n", "family", "seed", "algorithm", "depth", "depth_compacted", "swaps", "time_us")


class VerificationFailed(RuntimeError):
    """A router produced a schedule that does not realize its permutation."""


@dataclass(frozen=True, order=True)
class BenchmarkRow:
    grid_m: int
    grid_n: int
    family: str
    seed: int
    algorithm: str
    depth: int
    depth_compacted: int
    swaps: int
    time_us: int


assert tuple(f.name for f in fields(BenchmarkRow)) == CSV_HEADER


def run_instance(grid: Grid, family: FamilySpec, algorithms: Sequence[str], **options) -> list[BenchmarkRow]:
    """Route one generated permutation with each algorithm; every schedule is verified first."""
    pi = generate(grid, family)
    rows = []
    for algo in algorithms:
        result = route(grid, pi, algorithm=algo, **options)
        check = verify_schedule(grid, pi, result.schedule)
        if not check:
            raise VerificationFailed(
                f"{algo} on {grid.m}x{grid.n} {family.name} seed {family.seed}: "
                f"token from {check.failing_vertex} ended at {check.reached}"
            )
        rows.append(
            BenchmarkRow(
                grid.m,
                grid.n,
                family.name,
                family.seed,
                algo,
                result.depth,
                compact_schedule(result.schedule).depth,
                result.size,
                int(round(result.elapsed * 1e6)),
            )
        )
    return rows


def _run_task(task):
    grid, family, algorithms, options = task
    return run_instance(grid, family, algorithms, **options)


def worker_count(n_tasks: int) -> int:
    """Workers to use: ``GRIDROUTE_THREADS`` if set, else the CPU count, never more than the tasks."""
    env = os.environ.get("GRIDROUTE_THREADS")
    try:
        cap = int(env) if env else (os.cpu_count() or 1)
    except ValueError:
        raise ValueError(f"GRIDROUTE_THREADS must be an integer, got {env!r}") from None
    return max(1, min(cap, n_tasks))


def run_benchmark(
    grids: Iterable[Grid],
    families: Iterable[FamilySpec],
    trials: int,
    seed: int,
    algorithms: Sequence[str],
    workers: int | None = None,
    **options,
) -> list[BenchmarkRow]:
    """One row per (grid, family, seed, algorithm); trial ``t`` uses seed ``seed + t``.

    Rows come back sorted, so the output does not depend on ``workers``
    (apart from ``time_us``).
    """
    tasks = [
        (grid, family.with_seed(seed + t), tuple(algorithms), options)
        for grid in grids
        for family in families
        for t in range(trials)
    ]
    for grid, family, _, _ in tasks:
        family.validate(grid)
    if workers is None:
        workers = worker_count(len(tasks))
    if workers <= 1:
        chunks = [_run_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_task, tasks))
    return sorted(row for chunk in chunks for row in chunk)


def rows_to_csv(rows: Iterable[BenchmarkRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(astuple(row))
    return buf.getvalue()


def write_csv(path, rows: Iterable[BenchmarkRow]) -> None:
    atomic_write_text(path, rows_to_csv(rows))


def read_csv(path) -> list[BenchmarkRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        out = []
        for rec in reader:
            out.append(
                BenchmarkRow(
                    int(rec["grid_m"]),
                    int(rec["grid_n"]),
                    rec["family"],
                    int(rec["seed"]),
                    rec["algorithm"],
                    int(rec["depth"]),
                    int(rec["depth_compacted"]),
                    int(rec["swaps"]),
                    int(rec["time_us"]),
                )
            )
    return out


def medians(rows: Iterable[BenchmarkRow], metric: str) -> dict[tuple[str, str], dict[tuple[int, int], float]]:
    """``{(algorithm, family): {(m, n): median of metric}}``."""
    groups: dict = defaultdict(lambda: defaultdict(list))
    for row in rows:
        groups[(row.algorithm, row.family)][(row.grid_m, row.grid_n)].append(getattr(row, metric))
    return {key: {g: statistics.median(v) for g, v in sorted(by_grid.items())} for key, by_grid in groups.items()}


def plot_benchmark(rows: Sequence[BenchmarkRow], outdir) -> list[Path]:
    """Write ``depth.svg`` and ``time.svg`` (median per grid size, one line per algorithm/family)."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    sizes = sorted({(r.grid_m, r.grid_n) for r in rows}, key=lambda g: (g[0] * g[1], g))
    xticks = [(float(m * n), f"{m}x{n}") for m, n in sizes]
    written = []
    for metric, fname, title, ylabel, scale in (
        ("depth", "depth.svg", "Depth of computed swap networks", "median depth (layers)", 1.0),
        ("time_us", "time.svg", "Time spent on finding swap networks", "median time (ms)", 1e-3),
    ):
        series = {
            f"{algo} / {family}": [(float(m * n), v * scale) for (m, n), v in by_grid.items()]
            for (algo, family), by_grid in sorted(medians(rows, metric).items())
        }
        svg = line_chart(series, title=title, xlabel="grid size (vertices)", ylabel=ylabel, xticks=xticks)
        path = outdir / fname
        atomic_write_text(path, svg)
        written.append(path)
    return written
