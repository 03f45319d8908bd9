"""Solvers: triangulation baseline, greedy merging, randomized local search,
and an exhaustive oracle for tiny inputs.

The workhorse is :func:`local_search`: triangulate, merge greedily to a
fixpoint, then alternate perturbation (re-triangulate the current partition
and apply random flips) with more greedy merging, restarting from a fresh
randomized triangulation when progress stalls. All randomness flows from one
seed, so a single-worker run is exactly reproducible.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from convexpart import kernels
from convexpart.errors import InfeasibleSolution, TooLarge
from convexpart.geometry import Point, convex_hull
from convexpart.instances import Instance
from convexpart.rng import SplitMix64
from convexpart.subdivision import EdgeSet, Subdivision, build_subdivision
from convexpart.triangulation import (
    flip_edge,
    insert_segment,
    random_flips,
    retriangulate_all,
    triangulate,
    triangulation_edges,
)
from convexpart.verify import ScoreReport, score, verify

STRATEGIES = ("triangulate-only", "greedy", "local-search", "exact")


@dataclass
class SolverConfig:
    seed: int = 0
    time_limit: float = 60.0
    restarts: int = 4
    passes_per_restart: int = 3  # 0 = greedy to fixpoint only, no perturbation
    perturbation_strength: int | None = None  # None = max(1, n // 20) flips
    strategy: str = "local-search"
    workers: int = 1
    exact_limit: int = 7
    use_collinear_seed: bool = True
    degree_order: bool = False  # scan high-degree edges first instead of shuffling

    def validated(self) -> "SolverConfig":
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.restarts < 1 or self.workers < 1:
            raise ValueError("restarts and workers must be at least 1")
        if self.passes_per_restart < 0 or self.exact_limit < 3:
            raise ValueError("bad passes_per_restart or exact_limit")
        return self


@dataclass
class SolveResult:
    solution: EdgeSet
    score_report: ScoreReport
    iterations: int
    wall_time: float
    best_found_at: float
    history: list[tuple[float, float]] = field(default_factory=list)


# ------------------------------------------------------------ greedy merging


def _kernel_pass(sub: Subdivision, order: np.ndarray) -> int:
    removed = kernels.greedy_pass(
        sub.px, sub.py, sub.origin, sub.nxt, sub.prv, sub.face_of,
        sub.face_alive, sub.face_bounded, sub.face_he, sub.edge_alive,
        sub.degree, sub.vertex_he, order)
    sub.m_alive -= removed
    sub.f_bounded -= removed
    return removed


def _greedy_fixpoint(sub: Subdivision, rng: SplitMix64,
                     degree_order: bool = False) -> int:
    """Merge passes until one removes nothing. Leaves free lists stale;
    callers that mutate the subdivision afterwards must rebuild_free_lists."""
    total = 0
    while True:
        slots = sub.alive_edge_slots()
        if degree_order:
            slots.sort(key=lambda k: (-(int(sub.degree[sub.eu[k]])
                                        + int(sub.degree[sub.ev[k]])),
                                      int(sub.eu[k]), int(sub.ev[k])))
        else:
            rng.shuffle(slots)
        removed = _kernel_pass(sub, np.asarray(slots, dtype=np.int64))
        total += removed
        if removed == 0:
            return total


def greedy_reduce(instance: Instance, start: EdgeSet, seed: int = 0,
                  degree_order: bool = False) -> EdgeSet:
    """Remove mergeable edges in seeded random passes until none remains."""
    report = verify(instance, start)
    if not report.feasible:
        raise InfeasibleSolution(
            f"greedy_reduce needs a feasible start: {sorted(report.kinds())}",
            report=report)
    sub = build_subdivision(instance.points, start, validate=False)
    _greedy_fixpoint(sub, SplitMix64(seed), degree_order)
    return sub.edge_set()


# ------------------------------------------------------------ collinear seed


def collinear_chains(points: list[Point]) -> list[list[tuple[int, int]]]:
    """Maximal axis-parallel runs of >= 3 points, as consecutive-pair chains,
    longest first."""
    by_x: dict[int, list[Point]] = {}
    by_y: dict[int, list[Point]] = {}
    for p in points:
        by_x.setdefault(p.x, []).append(p)
        by_y.setdefault(p.y, []).append(p)
    chains: list[list[tuple[int, int]]] = []
    for group in by_x.values():
        if len(group) >= 3:
            group.sort(key=lambda p: p.y)
            chains.append([(group[i].index, group[i + 1].index)
                           for i in range(len(group) - 1)])
    for group in by_y.values():
        if len(group) >= 3:
            group.sort(key=lambda p: p.x)
            chains.append([(group[i].index, group[i + 1].index)
                           for i in range(len(group) - 1)])
    chains.sort(key=lambda ch: (-len(ch), ch))
    return chains


def _protected_greedy(sub: Subdivision, protected: set[tuple[int, int]]) -> None:
    """Deterministic merge passes that never touch ``protected`` edges."""
    while True:
        removed = 0
        for u, v in sorted(sub.edge_pairs()):
            if (u, v) in protected or not sub.has_edge(u, v):
                continue
            if sub.merge_preview(u, v).removable:
                sub.remove_edge(u, v)
                removed += 1
        if not removed:
            return


def collinear_seed(instance: Instance) -> EdgeSet:
    """Starting partition that keeps long axis-parallel runs as chains.

    Triangulates, forces every chain edge in (skipping chains blocked by
    already-inserted perpendicular ones), then merges everything else
    deterministically while protecting the chain edges. On instances without
    3 collinear points this is just a triangulation.
    """
    points = instance.points
    pairs = triangulation_edges(points)
    chains = collinear_chains(points)
    if not chains:
        return EdgeSet(sorted(pairs))
    sub = build_subdivision(points, pairs, validate=False)
    protected: set[tuple[int, int]] = set()
    for chain in chains:
        for a, b in chain:
            key = (a, b) if a < b else (b, a)
            if insert_segment(sub, a, b, protected=frozenset(protected)):
                protected.add(key)
    hull = convex_hull(points)
    for a, b in hull.boundary_pairs():
        protected.add((a, b) if a < b else (b, a))
    _protected_greedy(sub, protected)
    return sub.edge_set()


# -------------------------------------------------------------- local search


def _canonical(edges: EdgeSet) -> list[tuple[int, int]]:
    return edges.canonical()


def _better(cand: tuple[int, list], best: tuple[int, list] | None) -> bool:
    # Fewer edges wins (score is a decreasing function of m); ties go to the
    # lexicographically smallest canonical edge list so runs are reproducible.
    if best is None:
        return True
    return cand[0] < best[0] or (cand[0] == best[0] and cand[1] < best[1])


def _run_restart(instance: Instance, tri_pairs: list[tuple[int, int]],
                 mode: str, rseed: int, config: SolverConfig,
                 budget: float) -> tuple[tuple[int, list], int, list[tuple[float, int]]]:
    """One restart: returns (best (m, edges), passes done, improvement log).

    ``mode`` picks the starting partition: "plain" replays greedy_reduce on
    the base triangulation, "seeded" starts from collinear_seed, "flipped"
    randomizes the triangulation first. The log holds (elapsed-within-restart,
    m) pairs for best-so-far updates so the caller can reconstruct an anytime
    history.
    """
    t0 = time.perf_counter()
    rng = SplitMix64(rseed)
    n = instance.n
    strength = config.perturbation_strength or max(1, n // 20)
    if mode == "seeded":
        start = collinear_seed(instance)
        sub = build_subdivision(instance.points, start, validate=False)
    else:
        sub = build_subdivision(instance.points, tri_pairs, validate=False)
        if mode == "flipped":
            random_flips(sub, rng, n)
    _greedy_fixpoint(sub, rng, config.degree_order)
    best = (sub.m_alive, _canonical(sub.edge_set()))
    log = [(time.perf_counter() - t0, best[0])]
    passes = 1
    stagnant = 0
    while stagnant < config.passes_per_restart:
        if time.perf_counter() - t0 >= budget:
            break
        sub.rebuild_free_lists()
        retriangulate_all(sub)
        random_flips(sub, rng, strength)
        _greedy_fixpoint(sub, rng, config.degree_order)
        passes += 1
        cand = (sub.m_alive, _canonical(sub.edge_set()))
        if _better(cand, best):
            best = cand
            log.append((time.perf_counter() - t0, best[0]))
            stagnant = 0
        else:
            stagnant += 1
    return best, passes, log


def local_search(instance: Instance, config: SolverConfig | None = None) -> SolveResult:
    config = (config or SolverConfig()).validated()
    t0 = time.perf_counter()
    tri_pairs = triangulation_edges(instance.points)
    has_chains = bool(collinear_chains(instance.points))
    root = SplitMix64(config.seed)
    restart_seeds = [root.next_u64() for _ in range(config.restarts)]
    plans: list[tuple[str, int]] = []
    for r in range(config.restarts):
        if r == 0:
            # Replays greedy_reduce(triangulate, seed) exactly, so the final
            # result can never fall below that baseline.
            plans.append(("plain", config.seed))
        elif r == 1 and config.use_collinear_seed and has_chains:
            plans.append(("seeded", restart_seeds[r]))
        else:
            plans.append(("flipped", restart_seeds[r]))

    best: tuple[int, list] | None = None
    best_at = 0.0
    iterations = 0
    history: list[tuple[float, float]] = []
    hull = convex_hull(instance.points)
    denom = 3 * (instance.n - 1) - hull.point_count

    def absorb(result, offset: float):
        nonlocal best, best_at, iterations
        cand, passes, log = result
        iterations += passes
        cur = best[0] if best is not None else None
        for dt, m in log:
            if cur is None or m < cur:
                history.append((offset + dt, (denom - m) / denom))
                cur = m
        if _better(cand, best):
            best = cand
            best_at = offset + log[-1][0]

    if config.workers > 1:
        remaining = config.time_limit - (time.perf_counter() - t0)
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futs = [pool.submit(_run_restart, instance, tri_pairs, mode,
                                rseed, config, remaining)
                    for mode, rseed in plans]
            for fut in futs:
                absorb(fut.result(), time.perf_counter() - t0)
    else:
        for mode, rseed in plans:
            elapsed = time.perf_counter() - t0
            if elapsed >= config.time_limit and best is not None:
                break
            absorb(_run_restart(instance, tri_pairs, mode, rseed, config,
                                config.time_limit - elapsed), elapsed)

    solution = EdgeSet(best[1])
    return SolveResult(solution=solution,
                       score_report=score(instance, solution),
                       iterations=iterations,
                       wall_time=time.perf_counter() - t0,
                       best_found_at=best_at,
                       history=history)


# -------------------------------------------------------------- exact oracle


def _flip_neighbors(instance: Instance, tri: frozenset,
                    hull_edges: frozenset) -> list[frozenset]:
    sub = build_subdivision(instance.points, sorted(tri), validate=False)
    out = []
    for u, v in sorted(tri - hull_edges):
        flipped = flip_edge(sub, u, v)
        if flipped is None:
            continue
        a, b = flipped
        key = (a, b) if a < b else (b, a)
        out.append(frozenset(tri - {(u, v)} | {key}))
        flip_edge(sub, a, b)  # flip back; convexity is symmetric
    return out


def exact_oracle(instance: Instance, exact_limit: int = 7) -> SolveResult:
    """Provably minimum face count, for tiny n.

    Walks the whole flip graph of triangulations (memoized on edge sets);
    for each triangulation tries every subset of its non-hull edges, keeping
    the feasible ones. Any convex partition is such a subset of some
    triangulation, so the minimum over all of them is the global optimum.
    """
    n = instance.n
    if n > exact_limit:
        raise TooLarge(f"exact oracle capped at n <= {exact_limit}, got {n}")
    t0 = time.perf_counter()
    hull = convex_hull(instance.points)
    hull_edges = frozenset((a, b) if a < b else (b, a)
                           for a, b in hull.boundary_pairs())
    start = frozenset(triangulation_edges(instance.points))
    queue = [start]
    seen_tris = {start}
    seen_subsets: set[frozenset] = set()
    best: tuple[int, list] | None = None
    best_at = 0.0
    checks = 0
    while queue:
        tri = queue.pop()
        inner = sorted(tri - hull_edges)
        for mask in range(1 << len(inner)):
            kept = frozenset(e for i, e in enumerate(inner) if mask >> i & 1)
            full = kept | hull_edges
            if full in seen_subsets:
                continue
            seen_subsets.add(full)
            checks += 1
            report = verify(instance, sorted(full), assume_planar=True)
            if report.feasible:
                cand = (len(full), sorted(full))
                if _better(cand, best):
                    best = cand
                    best_at = time.perf_counter() - t0
        for nb in _flip_neighbors(instance, tri, hull_edges):
            if nb not in seen_tris:
                seen_tris.add(nb)
                queue.append(nb)
    solution = EdgeSet(best[1])
    return SolveResult(solution=solution,
                       score_report=score(instance, solution),
                       iterations=checks,
                       wall_time=time.perf_counter() - t0,
                       best_found_at=best_at,
                       history=[])


# ----------------------------------------------------------------- dispatch


def solve(instance: Instance, config: SolverConfig | None = None) -> SolveResult:
    config = (config or SolverConfig()).validated()
    t0 = time.perf_counter()
    if config.strategy == "triangulate-only":
        solution = triangulate(instance)
        return SolveResult(solution=solution,
                           score_report=score(instance, solution),
                           iterations=1, wall_time=time.perf_counter() - t0,
                           best_found_at=0.0, history=[])
    if config.strategy == "greedy":
        solution = greedy_reduce(instance, triangulate(instance), config.seed,
                                 config.degree_order)
        return SolveResult(solution=solution,
                           score_report=score(instance, solution),
                           iterations=1, wall_time=time.perf_counter() - t0,
                           best_found_at=time.perf_counter() - t0,
                           history=[])
    if config.strategy == "exact":
        return exact_oracle(instance, config.exact_limit)
    return local_search(instance, config)
