"""Acceptance criteria. Each test emits one PASS/FAIL line with its measured values."""

import itertools
import math
import statistics
import time
from collections import Counter

import numpy as np
import pytest

from gridroute import (
    Grid,
    Permutation,
    build_column_graph,
    mcbbm,
    naive_grid_route,
    route,
    token_swap,
    verify_schedule,
)
from gridroute.core import apply_schedule, transpose
from gridroute.families import FamilySpec, generate
from gridroute.grid import doubling_search, grid_route_rounds, local_sigmas, naive_sigmas
from oracles import DepthOracle, SwapOracle, all_permutations, brute_bottleneck

ALGOS = ("local", "naive", "ats")


def verdict(report, ok: bool, label: str, detail: str) -> None:
    report(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")


def uniform(m, n, seed):
    g = Grid(m, n)
    return g, generate(g, FamilySpec("uniform", seed=seed))


def random_instances(count, max_side, seed):
    rng = np.random.default_rng(seed)
    for k in range(count):
        m, n = (int(x) for x in rng.integers(1, max_side + 1, size=2))
        yield uniform(m, n, 100_000 + k)


# ---------------------------------------------------------------- correctness


def test_c01_exhaustive_small(report):
    start = time.perf_counter()
    failures = checked = 0
    for g in (Grid(2, 2), Grid(2, 3)):
        for pi in all_permutations(g):
            for algo in ALGOS:
                checked += 1
                failures += not verify_schedule(g, pi, route(g, pi, algorithm=algo).schedule)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and checked == 3 * (24 + 720) and elapsed < 10
    verdict(report, ok, "C1 exhaustive 2x2+2x3", f"{checked} schedules, {failures} failures, {elapsed:.1f}s (< 10s)")
    assert ok


@pytest.fixture(scope="module")
def randomized_runs():
    """1000 seeded uniform instances on each grid, all three algorithms; shared by C2 to C4."""
    start = time.perf_counter()
    runs = []
    for side in (3, 4, 8, 16):
        for seed in range(1000):
            g, pi = uniform(side, side, seed)
            results = {algo: route(g, pi, algorithm=algo) for algo in ALGOS}
            ok = all(verify_schedule(g, pi, r.schedule) for r in results.values())
            naive_depth = naive_grid_route(g, pi).depth
            runs.append((g, seed, ok, results, naive_depth))
    return runs, time.perf_counter() - start


def test_c02_randomized(report, randomized_runs):
    runs, elapsed = randomized_runs
    failures = [(g.shape, seed) for g, seed, ok, _, _ in runs if not ok]
    ok = not failures and len(runs) == 4000 and elapsed < 120
    verdict(report, ok, "C2 randomized 1000 seeds x {3,4,8,16}^2", f"{len(runs) * 3} schedules, {len(failures)} failures, {elapsed:.1f}s (< 120s)")
    assert ok


def test_c03_depth_bound(report, randomized_runs):
    runs, _ = randomized_runs
    extra = list(random_instances(500, 16, seed=3))
    violations = checked = 0
    for g, _, _, results, _ in runs:
        bound = min(2 * g.m + g.n, 2 * g.n + g.m)
        for algo in ("local", "naive"):
            checked += 1
            violations += results[algo].depth_uncompacted > bound
    for g, pi in extra:
        bound = min(2 * g.m + g.n, 2 * g.n + g.m)
        for algo in ("local", "naive"):
            checked += 1
            violations += route(g, pi, algorithm=algo).depth_uncompacted > bound
    ok = violations == 0
    verdict(report, ok, "C3 depth <= min(2m+n, 2n+m)", f"{checked} routes (square and rectangular), {violations} violations")
    assert ok


def test_c04_fallback_dominance(report, randomized_runs):
    runs, _ = randomized_runs
    violations = sum(results["local"].depth > naive_depth for _, _, _, results, naive_depth in runs)
    extra = 0
    for g, pi in random_instances(500, 16, seed=4):
        extra += route(g, pi).depth > naive_grid_route(g, pi).depth
    ok = violations == 0 and extra == 0
    verdict(report, ok, "C4 fallback dominance", f"{len(runs) + 500} instances, {violations + extra} with route depth > naive depth")
    assert ok


# ---------------------------------------------------------------- structure


def rows_after_round1_distinct(g, pi, sigmas) -> bool:
    """Apply round 1 for real and inspect each row's destination columns."""
    r1, _, _ = grid_route_rounds(g, pi, sigmas)
    placed = apply_schedule(g, r1)
    per_row = [[] for _ in range(g.m + 1)]
    for v in g.vertices():
        per_row[placed[v][0]].append(pi[v][1])
    return all(len(set(cols)) == len(cols) == g.n for cols in per_row[1:])


def test_c05_hall_property(report):
    violations = checked = 0
    for g, pi in itertools.chain(random_instances(500, 16, seed=5), (uniform(8, 8, s) for s in range(100))):
        for gg, pp in ((g, pi), transpose(g, pi)):
            for make in (local_sigmas, naive_sigmas):
                checked += 1
                violations += not rows_after_round1_distinct(gg, pp, make(gg, pp))
    ok = violations == 0
    verdict(report, ok, "C5 Hall property after round 1", f"{checked} round-1 placements, {violations} violations")
    assert ok


def test_c06_decomposition(report):
    violations = 0
    for g, pi in random_instances(500, 16, seed=6):
        graph = build_column_graph(g, pi, 1, g.m)
        pms = doubling_search(graph, g.m)
        perfect = all(sorted(e.left for e in pm) == sorted(e.right for e in pm) == list(range(1, g.n + 1)) for pm in pms)
        partition = Counter(e for pm in pms for e in pm) == Counter(graph.edges) and len(graph.edges) == g.size
        violations += not (len(pms) == g.m and perfect and partition)
    ok = violations == 0
    verdict(report, ok, "C6 doubling search decomposition", f"500 instances up to 16x16, {violations} violations")
    assert ok


def _brute_bottlenecks(mats: np.ndarray) -> np.ndarray:
    k = mats.shape[1]
    best = None
    for p in itertools.permutations(range(k)):
        worst = mats[:, np.arange(k), list(p)].max(axis=1)
        best = worst if best is None else np.minimum(best, worst)
    return best


def test_c07_mcbbm_optimality(report):
    start = time.perf_counter()
    mismatches = checked = 0
    for k in (2, 3):
        # every matrix with entries 0..4, enumerated as base-5 digits
        codes = np.arange(5 ** (k * k))
        mats = np.stack([(codes // 5**d) % 5 for d in range(k * k)], axis=1).reshape(-1, k, k)
        expected = _brute_bottlenecks(mats).tolist()
        for w, want in zip(mats.tolist(), expected):
            checked += 1
            mismatches += mcbbm(w).bottleneck != want
    rng = np.random.default_rng(7)
    for _ in range(100):
        w = rng.integers(0, 50, size=(6, 6)).tolist()
        checked += 1
        mismatches += mcbbm(w).bottleneck != brute_bottleneck(w)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 30
    verdict(report, ok, "C7 MCBBM equals brute force", f"{checked} matrices, {mismatches} mismatches, {elapsed:.1f}s (< 30s)")
    assert ok


# ---------------------------------------------------------------- baselines and trends


def test_c08_ats_approximation(report):
    violations = lower = checked = 0
    worst = 0.0
    instances = [(Grid(2, 2), pi) for pi in all_permutations(Grid(2, 2))]
    rng = np.random.default_rng(8)
    g23 = Grid(2, 3)
    instances += [(g23, Permutation.from_indices(g23, rng.permutation(6).tolist())) for _ in range(200)]
    oracles = {g: SwapOracle(g) for g in (Grid(2, 2), g23)}
    for g, pi in instances:
        checked += 1
        swaps = len(token_swap(g, pi))
        opt = oracles[g](pi)
        violations += swaps > 4 * opt
        lower += swaps < math.ceil(sum(Grid.distance(v, pi[v]) for v in g.vertices()) / 2)
        if opt:
            worst = max(worst, swaps / opt)
    ok = violations == 0 and lower == 0
    verdict(report, ok, "C8 ATS <= 4 x serial optimum", f"{checked} instances, {violations} over 4x, {lower} below ceil(sum d/2), worst ratio {worst:.2f}")
    assert ok


def median_depths(family, side=8, seeds=range(20)):
    g = Grid(side, side)
    local, ats = [], []
    for s in seeds:
        pi = generate(g, family.with_seed(s))
        local.append(route(g, pi).depth)
        ats.append(route(g, pi, algorithm="ats").depth)
    return statistics.median(local), statistics.median(ats)


def test_c09_depth_trend_uniform(report):
    local, ats = median_depths(FamilySpec("uniform"))
    ok = local <= ats
    verdict(report, ok, "C9 8x8 uniform median depth local <= ATS", f"local {local}, ATS {ats}")
    assert ok


def _median_times(side, seeds, **options):
    g = Grid(side, side)
    local, ats = [], []
    for s in seeds:
        pi = generate(g, FamilySpec("uniform", seed=s))
        local.append(route(g, pi, **options).elapsed)
        ats.append(route(g, pi, algorithm="ats").elapsed)
    return statistics.median(local), statistics.median(ats)


def test_c10_time_trend(report):
    start = time.perf_counter()
    local, ats = _median_times(16, range(20))
    ratio = ats / local
    # informational: the other router configurations and the larger grid
    alg1, ats1 = _median_times(16, range(20), naive_fallback=False)
    one, ats2 = _median_times(16, range(20), naive_fallback=False, use_transpose=False)
    big_local, big_ats = _median_times(32, range(5))
    elapsed = time.perf_counter() - start
    report(
        f"       16x16 both orientations, no fallback: ATS/local {ats1 / alg1:.2f}x; "
        f"one orientation: {ats2 / one:.2f}x; 32x32 default: {big_ats / big_local:.2f}x (informational)"
    )
    ok = local < ats and ratio >= 2 and elapsed < 300
    verdict(
        report,
        ok,
        "C10 16x16 median time local < ATS, speedup >= 2x",
        f"local {local * 1e3:.1f} ms, ATS {ats * 1e3:.1f} ms, speedup {ratio:.2f}x, {elapsed:.0f}s (< 300s)",
    )
    assert ok


def test_c11_block_local_comparable(report):
    local, ats = median_depths(FamilySpec("block_local", 2, 2))
    ok = local <= 1.2 * ats
    verdict(report, ok, "C11 8x8 block_local 2x2 median local <= 1.2 x ATS", f"local {local}, ATS {ats}")
    assert ok


def test_c12_optimality_spot_check(report):
    g = Grid(2, 2)
    opt = DepthOracle(g)
    excess = Counter()
    violations = 0
    for pi in all_permutations(g):
        d, best = route(g, pi).depth, opt(pi)
        excess[d - best] += 1
        violations += d > best + 1
    ok = violations == 0
    dist = ", ".join(f"+{k}: {v}" for k, v in sorted(excess.items()))
    verdict(report, ok, "C12 2x2 local depth <= BFS optimum + 1", f"24 permutations, excess over optimum {{{dist}}}")
    assert ok
