"""Independent reference implementations used to cross-check the package.

Everything here is written against different machinery than the library:
supporting-line tests instead of a sorted chain for the hull, Fraction
parametrics instead of orientation case analysis for segment intersection,
and rotation-system face tracing instead of the half-edge structure for
feasibility.  Slow is fine -- these only ever run on small inputs.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from itertools import combinations

XY = tuple[int, int]


def _cross(o: XY, a: XY, b: XY) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _strictly_between(p: XY, q: XY, x: XY) -> bool:
    """x strictly inside the open segment p-q (collinearity assumed checked)."""
    if _cross(p, q, x) != 0:
        return False
    dot = (x[0] - p[0]) * (q[0] - p[0]) + (x[1] - p[1]) * (q[1] - p[1])
    length2 = (q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2
    return 0 < dot < length2


def segments_conflict(p: XY, q: XY, r: XY, s: XY) -> bool:
    """Closed segments p-q and r-s share a point that is not a common endpoint.

    Solved parametrically over Fractions rather than by orientation cases.
    Coincident endpoints count as "common" (distinct input points never share
    coordinates in a valid instance).
    """
    d1 = (q[0] - p[0], q[1] - p[1])
    d2 = (s[0] - r[0], s[1] - r[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    w = (r[0] - p[0], r[1] - p[1])
    if den != 0:
        t = Fraction(w[0] * d2[1] - w[1] * d2[0], den)
        u = Fraction(w[0] * d1[1] - w[1] * d1[0], den)
        if 0 <= t <= 1 and 0 <= u <= 1:
            return not (t in (0, 1) and u in (0, 1))
        return False
    if w[0] * d1[1] - w[1] * d1[0] != 0:
        return False  # parallel, different lines
    # Same supporting line: compare 1D intervals on the dominant axis.
    axis = 0 if d1[0] != 0 else 1
    a1, b1 = sorted((p[axis], q[axis]))
    a2, b2 = sorted((r[axis], s[axis]))
    lo, hi = max(a1, a2), min(b1, b2)
    if lo > hi:
        return False
    if lo == hi:
        # Single contact point; it is an interval end of both, i.e. a shared
        # endpoint, unless one segment degenerates (excluded upstream).
        return False
    return True


def hull_boundary_pairs(pts: list[XY]) -> set[tuple[int, int]]:
    """Consecutive pairs along the hull boundary, collinear points included.

    (i, j) is a boundary pair iff every point lies on one closed side of the
    line through i and j and no point sits strictly between them.
    """
    out: set[tuple[int, int]] = set()
    for i, j in combinations(range(len(pts)), 2):
        pos = neg = False
        blocked = False
        for k in range(len(pts)):
            if k == i or k == j:
                continue
            s = _cross(pts[i], pts[j], pts[k])
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            elif _strictly_between(pts[i], pts[j], pts[k]):
                blocked = True
                break
        if not blocked and not (pos and neg):
            out.add((i, j))
    return out


def hull_boundary_points(pts: list[XY]) -> set[int]:
    members: set[int] = set()
    for (i, j) in hull_boundary_pairs(pts):
        members.add(i)
        members.add(j)
    return members


def _angle_cmp(d1: XY, d2: XY) -> int:
    h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
    h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
    if h1 != h2:
        return h1 - h2
    cr = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def trace_faces(pts: list[XY], edges: list[tuple[int, int]]) -> list[list[int]]:
    """Face cycles of a plane graph, one per face, via rotation systems.

    Bounded faces come out counterclockwise, the outer face clockwise.
    The edge set must already be planar (checked elsewhere).
    """
    nbr: dict[int, list[int]] = {}
    for (u, v) in edges:
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    for v, around in nbr.items():
        around.sort(key=functools.cmp_to_key(
            lambda a, b, v=v: _angle_cmp(
                (pts[a][0] - pts[v][0], pts[a][1] - pts[v][1]),
                (pts[b][0] - pts[v][0], pts[b][1] - pts[v][1]))))
    pos = {(v, w): k for v, around in nbr.items() for k, w in enumerate(around)}
    faces = []
    seen: set[tuple[int, int]] = set()
    for (u0, v0) in pos:
        if (u0, v0) in seen:
            continue
        cycle = []
        u, v = u0, v0
        while (u, v) not in seen:
            seen.add((u, v))
            cycle.append(u)
            around = nbr[v]
            u, v = v, around[(pos[(v, u)] - 1) % len(around)]
        faces.append(cycle)
    return faces


def _signed_area2(pts: list[XY], cycle: list[int]) -> int:
    s = 0
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        s += pts[a][0] * pts[b][1] - pts[b][0] * pts[a][1]
    return s


def feasibility_oracle(pts: list[XY],
                       edges: list[tuple[int, int]]) -> tuple[bool, int | None]:
    """(feasible, bounded face count) for a candidate partition edge set."""
    n = len(pts)
    norm = set()
    for (u, v) in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            return False, None
        key = (u, v) if u < v else (v, u)
        if key in norm:
            return False, None
        norm.add(key)
    pairs = sorted(norm)
    for (e, f) in combinations(pairs, 2):
        if segments_conflict(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]]):
            return False, None
    for i in range(n):
        for (u, v) in pairs:
            if i not in (u, v) and _strictly_between(pts[u], pts[v], pts[i]):
                return False, None
    if not hull_boundary_pairs(pts) <= norm:
        return False, None
    # Connectivity over every input point (isolated points break it too).
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v) in pairs:
        parent[find(u)] = find(v)
    if len({find(i) for i in range(n)}) != 1:
        return False, None
    faces = trace_faces(pts, pairs)
    bounded = [c for c in faces if _signed_area2(pts, c) > 0]
    if len(bounded) != len(faces) - 1:
        return False, None
    if len(bounded) != len(pairs) - n + 1:  # Euler cross-check
        return False, None
    for cycle in bounded:
        if len(set(cycle)) != len(cycle):
            return False, None
        k = len(cycle)
        for t in range(k):
            a, b, c = cycle[t - 1], cycle[t], cycle[(t + 1) % k]
            if _cross(pts[a], pts[b], pts[c]) < 0:
                return False, None
    return True, len(bounded)


def score_oracle(pts: list[XY], edges: list[tuple[int, int]]) -> Fraction:
    """Score of a feasible partition, recomputed from scratch."""
    ok, _ = feasibility_oracle(pts, edges)
    assert ok, "score_oracle wants a feasible edge set"
    n = len(pts)
    c = len(hull_boundary_points(pts))
    m = len({(u, v) if u < v else (v, u) for (u, v) in edges})
    return Fraction(3 * (n - 1) - c - m, 3 * (n - 1) - c)


def min_faces_bruteforce(pts: list[XY]) -> int:
    """Minimum bounded-face count over every subset of candidate segments.

    Exponential; intended for n <= 6 or so. Candidate segments are all pairs
    not blocked by a third point sitting on them.
    """
    n = len(pts)
    cand = [(i, j) for i, j in combinations(range(n), 2)
            if not any(k not in (i, j)
                       and _strictly_between(pts[i], pts[j], pts[k])
                       for k in range(n))]
    idx = {e: k for k, e in enumerate(cand)}
    conflict = [0] * len(cand)
    for a, b in combinations(range(len(cand)), 2):
        (u, v), (r, s) = cand[a], cand[b]
        if segments_conflict(pts[u], pts[v], pts[r], pts[s]):
            conflict[a] |= 1 << b
            conflict[b] |= 1 << a
    hull_mask = 0
    for e in hull_boundary_pairs(pts):
        hull_mask |= 1 << idx[e]
    best: int | None = None
    for mask in range(1 << len(cand)):
        if mask & hull_mask != hull_mask:
            continue
        chosen = [k for k in range(len(cand)) if mask >> k & 1]
        if any(conflict[k] & mask for k in chosen):
            continue
        ok, f = feasibility_oracle(pts, [cand[k] for k in chosen])
        if ok and (best is None or f < best):
            best = f
    assert best is not None, "no feasible subset; instance must be degenerate"
    return best
