#!/usr/bin/env python3
"""Compiled extension vs pure-Python kernels: parity check plus timings.

Feeds identical workloads through ``convexpart._kernels`` (Cython) and
``convexpart._kernels_py``, asserts both backends return the same answers,
and prints a timing table. The workloads mirror real call sites: scalar
predicate calls, the verifier's crossing/incidence scans over one instance's
triangulation, rotation-system construction, and greedy merge passes run to
fixpoint.

Usage: python3 benchmarks/bench_kernels.py [--n 2000] [--seed 0] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from convexpart import build_subdivision, gen_uniform, triangulate
from convexpart import _kernels_py as pure

try:
    from convexpart import _kernels as compiled
except ImportError:
    compiled = None


def best_of(repeat, fn, *args):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def scalar_orient(impl, px, py, triples):
    f = impl.orient
    acc = 0
    for i, j, k in triples:
        acc += f(px[i], py[i], px[j], py[j], px[k], py[k])
    return acc


def scalar_cross(impl, px, py, quads):
    f = impl.segments_cross
    acc = 0
    for a, b, c, d in quads:
        acc += f(px[a], py[a], px[b], py[b], px[c], py[c], px[d], py[d])
    return acc


def greedy_fixpoint(impl, sub):
    removed = 0
    while True:
        order = np.asarray(sub.alive_edge_slots(), dtype=np.int64)
        got = impl.greedy_pass(
            sub.px, sub.py, sub.origin, sub.nxt, sub.prv, sub.face_of,
            sub.face_alive, sub.face_bounded, sub.face_he, sub.edge_alive,
            sub.degree, sub.vertex_he, order)
        removed += got
        if got == 0:
            return removed


def pair_set(rows):
    return {tuple(map(int, r)) for r in rows}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000, help="instance size")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3, help="best-of timing runs")
    args = ap.parse_args()

    inst = gen_uniform(args.n, 10**6, args.seed)
    tri = triangulate(inst)
    px = np.array([p.x for p in inst.points], dtype=np.int64)
    py = np.array([p.y for p in inst.points], dtype=np.int64)
    pairs = tri.canonical()
    eu = np.array([u for u, _ in pairs], dtype=np.int64)
    ev = np.array([v for _, v in pairs], dtype=np.int64)

    rng = np.random.default_rng(args.seed)
    triples = rng.integers(0, args.n, size=(50_000, 3))
    quads = rng.integers(0, args.n, size=(50_000, 4))
    # a lightly corrupted triangulation: near-planar, but with real crossings
    # to exercise hit reporting (random long chords would cross ~everything
    # and the quadratic hit list would swamp the timing)
    soup_eu = eu.copy()
    soup_ev = ev.copy()
    for k in rng.choice(len(pairs), size=max(2, len(pairs) // 50), replace=False):
        soup_ev[k] = (soup_ev[k] + int(rng.integers(1, args.n))) % args.n
    keep = soup_eu != soup_ev
    soup_eu, soup_ev = soup_eu[keep], soup_ev[keep]

    backends = [("python", pure)]
    if compiled is not None:
        backends.insert(0, (compiled.IMPLEMENTATION, compiled))
    else:
        print("compiled extension not built; timing the fallback only\n")

    rows = []
    answers: dict[str, list] = {}
    for label, impl in backends:
        times = {}
        got: list = []

        t, v = best_of(args.repeat, scalar_orient, impl, px, py, triples)
        times["orient x50k"] = t
        got.append(v)

        t, v = best_of(args.repeat, scalar_cross, impl, px, py, quads)
        times["segments_cross x50k"] = t
        got.append(v)

        t, v = best_of(args.repeat, impl.find_crossings, px, py, soup_eu, soup_ev)
        times["find_crossings (soup)"] = t
        got.append(pair_set(v))

        t, v = best_of(args.repeat, impl.find_crossings, px, py, eu, ev)
        times["find_crossings (tri)"] = t
        got.append(pair_set(v))

        t, v = best_of(args.repeat, impl.find_points_on_edges, px, py, eu, ev)
        times["find_points_on_edges"] = t
        got.append(pair_set(v))

        t, v = best_of(args.repeat, impl.sort_rotations, px, py, eu, ev)
        times["sort_rotations"] = t
        got.append((v[0].tolist(), v[1].tolist()))

        subs = [build_subdivision(inst.points, tri, validate=False)
                for _ in range(args.repeat)]
        best = float("inf")
        for sub in subs:
            t0 = time.perf_counter()
            greedy_fixpoint(impl, sub)
            best = min(best, time.perf_counter() - t0)
        times["greedy_pass fixpoint"] = best
        got.append(subs[0].edge_pairs())

        rows.append((label, times))
        answers[label] = got

    if len(answers) == 2:
        a, b = answers.values()
        names = ["orient", "segments_cross", "find_crossings soup",
                 "find_crossings tri", "find_points_on_edges",
                 "sort_rotations", "greedy fixpoint"]
        for name, x, y in zip(names, a, b):
            assert x == y, f"backend mismatch in {name}"
        print(f"parity: all {len(names)} kernels agree across backends\n")

    kernels = list(rows[0][1])
    width = max(len(k) for k in kernels)
    header = f"{'kernel':<{width}}" + "".join(f"{lbl:>12}" for lbl, _ in rows)
    if len(rows) == 2:
        header += f"{'speedup':>10}"
    print(f"n={args.n} seed={args.seed} edges={len(pairs)} "
          f"(best of {args.repeat})")
    print(header)
    print("-" * len(header))
    for k in kernels:
        line = f"{k:<{width}}"
        for _, times in rows:
            line += f"{times[k] * 1e3:>10.2f}ms"
        if len(rows) == 2:
            line += f"{rows[1][1][k] / rows[0][1][k]:>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
