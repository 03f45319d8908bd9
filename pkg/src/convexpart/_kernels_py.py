"""Pure-Python implementations of the hot kernels.

This module mirrors the compiled extension (``convexpart._kernels``) exactly
and is selected at import time when the extension is unavailable or when
``CONVEXPART_PURE_PYTHON=1`` is set. All arithmetic goes through Python
integers, so every predicate is exact for arbitrary coordinate magnitudes.

Kernel surface
--------------
orient                -- sign of a 2D cross product
segments_cross        -- proper intersection of two open segments
find_crossings        -- all properly crossing edge pairs (grid-bucketed)
find_points_on_edges  -- points covered by edge interiors (grid-bucketed)
sort_rotations        -- half-edge next/prev links from CCW rotations
greedy_pass           -- one randomized convexity-preserving merge pass

The compiled module must produce bit-identical results; ``tests/test_kernels``
checks the two against each other.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

IMPLEMENTATION = "python"


def orient(ax, ay, bx, by, cx, cy):
    """Sign of (b - a) x (c - a): +1 left turn, -1 right turn, 0 collinear."""
    v = (int(bx) - int(ax)) * (int(cy) - int(ay)) - (int(by) - int(ay)) * (int(cx) - int(ax))
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def segments_cross(ax, ay, bx, by, cx, cy, dx, dy):
    """True iff segments a-b and c-d share a point interior to at least one.

    Proper crossings and collinear overlaps of positive length count; contact
    limited to shared endpoints or an endpoint touching the other segment's
    interior does not make the pair *cross* (the latter is reported by the
    point-on-edge scan instead when the endpoint is an input point).
    """
    ax, ay, bx, by = int(ax), int(ay), int(bx), int(by)
    cx, cy, dx, dy = int(cx), int(cy), int(dx), int(dy)
    d1 = orient(cx, cy, dx, dy, ax, ay)
    d2 = orient(cx, cy, dx, dy, bx, by)
    if d1 == 0 and d2 == 0:
        # Same supporting line: crossing means 1D overlap of positive length.
        if ax != bx:
            lo1, hi1 = (ax, bx) if ax < bx else (bx, ax)
            lo2, hi2 = (cx, dx) if cx < dx else (dx, cx)
        else:
            lo1, hi1 = (ay, by) if ay < by else (by, ay)
            lo2, hi2 = (cy, dy) if cy < dy else (dy, cy)
        return max(lo1, lo2) < min(hi1, hi2)
    d3 = orient(ax, ay, bx, by, cx, cy)
    d4 = orient(ax, ay, bx, by, dx, dy)
    return d1 * d2 < 0 and d3 * d4 < 0


def _on_open_segment(qx, qy, ax, ay, bx, by):
    if orient(ax, ay, bx, by, qx, qy) != 0:
        return False
    if ax != bx:
        return min(ax, bx) < qx < max(ax, bx)
    return min(ay, by) < qy < max(ay, by)


def _grid(minc, maxc, cells):
    span = maxc - minc
    return span // cells + 1


def find_crossings(px, py, eu, ev, cap=0):
    """All pairs (i, j), i < j, of edges whose segments cross per segments_cross.

    ``cap`` > 0 stops the scan early once that many pairs were collected.
    Pair order is an implementation detail; callers sort. Uses a uniform grid
    over edge bounding boxes; a pair is tested only in the lexicographically
    smallest cell both boxes cover, so each pair is reported once.
    """
    m = len(eu)
    out = []
    if m < 2:
        return out
    A = [(int(px[int(eu[k])]), int(py[int(eu[k])]), int(px[int(ev[k])]), int(py[int(ev[k])]))
         for k in range(m)]
    minx = min(min(a[0], a[2]) for a in A)
    maxx = max(max(a[0], a[2]) for a in A)
    miny = min(min(a[1], a[3]) for a in A)
    maxy = max(max(a[1], a[3]) for a in A)
    g = int(m ** 0.5) + 1
    cw = _grid(minx, maxx, g)
    ch = _grid(miny, maxy, g)
    rx0 = [0] * m
    ry0 = [0] * m
    buckets = {}
    for k in range(m):
        ax, ay, bx, by = A[k]
        x0 = (min(ax, bx) - minx) // cw
        x1 = (max(ax, bx) - minx) // cw
        y0 = (min(ay, by) - miny) // ch
        y1 = (max(ay, by) - miny) // ch
        rx0[k] = x0
        ry0[k] = y0
        for cx_ in range(x0, x1 + 1):
            for cy_ in range(y0, y1 + 1):
                buckets.setdefault((cx_, cy_), []).append(k)
    for (cx_, cy_), lst in buckets.items():
        L = len(lst)
        for i in range(L - 1):
            e = lst[i]
            eax, eay, ebx, eby = A[e]
            for j in range(i + 1, L):
                f = lst[j]
                if max(rx0[e], rx0[f]) != cx_ or max(ry0[e], ry0[f]) != cy_:
                    continue
                fax, fay, fbx, fby = A[f]
                if segments_cross(eax, eay, ebx, eby, fax, fay, fbx, fby):
                    out.append((e, f))
                    if cap and len(out) >= cap:
                        return out
    return out


def find_points_on_edges(px, py, eu, ev, cap=0):
    """All pairs (point_index, edge_index) with the point interior to the edge."""
    n = len(px)
    m = len(eu)
    out = []
    if n == 0 or m == 0:
        return out
    X = [int(px[i]) for i in range(n)]
    Y = [int(py[i]) for i in range(n)]
    minx, maxx = min(X), max(X)
    miny, maxy = min(Y), max(Y)
    g = int(n ** 0.5) + 1
    cw = _grid(minx, maxx, g)
    ch = _grid(miny, maxy, g)
    buckets = {}
    for i in range(n):
        buckets.setdefault(((X[i] - minx) // cw, (Y[i] - miny) // ch), []).append(i)
    for k in range(m):
        u = int(eu[k])
        v = int(ev[k])
        ax, ay, bx, by = X[u], Y[u], X[v], Y[v]
        x0 = (min(ax, bx) - minx) // cw
        x1 = (max(ax, bx) - minx) // cw
        y0 = (min(ay, by) - miny) // ch
        y1 = (max(ay, by) - miny) // ch
        for cx_ in range(x0, x1 + 1):
            for cy_ in range(y0, y1 + 1):
                for i in buckets.get((cx_, cy_), ()):
                    if i == u or i == v:
                        continue
                    if _on_open_segment(X[i], Y[i], ax, ay, bx, by):
                        out.append((i, k))
                        if cap and len(out) >= cap:
                            return out
    return out


def _direction_key(dx, dy):
    # Total order by CCW angle from the positive x axis. Axis directions get
    # their own classes so no division is needed for them; within an open
    # quadrant-pair dy/dx is strictly increasing with angle.
    if dy == 0:
        return (0, Fraction(0)) if dx > 0 else (4, Fraction(0))
    if dx == 0:
        return (2, Fraction(0)) if dy > 0 else (6, Fraction(0))
    if dy > 0:
        return (1 if dx > 0 else 3, Fraction(dy, dx))
    return (5 if dx < 0 else 7, Fraction(dy, dx))


def sort_rotations(px, py, eu, ev):
    """Half-edge links from the CCW rotation system of a plane edge set.

    Half-edge 2k runs eu[k] -> ev[k] and 2k+1 is its twin. Returns (nxt, prv)
    int64 arrays chaining the face cycles so that bounded faces wind CCW
    (interior on the left): the successor of a half-edge into v is the
    clockwise rotation-neighbour of its twin around v.
    """
    m = len(eu)
    H = 2 * m
    nxt = np.empty(H, dtype=np.int64)
    prv = np.empty(H, dtype=np.int64)
    outgoing = {}
    for k in range(m):
        outgoing.setdefault(int(eu[k]), []).append(2 * k)
        outgoing.setdefault(int(ev[k]), []).append(2 * k + 1)
    X = px
    Y = py
    for v, lst in outgoing.items():
        vx = int(X[v])
        vy = int(Y[v])

        def key(g):
            w = int(ev[g >> 1]) if g % 2 == 0 else int(eu[g >> 1])
            return _direction_key(int(X[w]) - vx, int(Y[w]) - vy)

        lst.sort(key=key)
        for i, g in enumerate(lst):
            t = g ^ 1
            nh = lst[i - 1]
            nxt[t] = nh
            prv[nh] = t
    return nxt, prv


def greedy_pass(px, py, origin, nxt, prv, face_of, face_alive, face_bounded,
                face_he, edge_alive, degree, vertex_he, order):
    """One merge pass over ``order`` (an array of undirected edge slots).

    An edge is removed when its two incident faces are distinct and bounded
    and the merged face stays convex: at both endpoints the junction formed
    by the surviving neighbours must not turn right, and neither junction may
    fold back on itself (which would leave a full-angle spike). Mutates the
    half-edge arrays in place and returns the number of edges removed.
    """
    removed = 0
    for k in order:
        k = int(k)
        if not edge_alive[k]:
            continue
        h = 2 * k
        t = h + 1
        fh = int(face_of[h])
        ft = int(face_of[t])
        if fh == ft:
            continue
        if not (face_bounded[fh] and face_bounded[ft]):
            continue
        u = int(origin[h])
        v = int(origin[t])
        pt_ = int(prv[t])
        nh = int(nxt[h])
        a = int(origin[pt_])
        b = int(origin[nh ^ 1])
        if a == b:
            continue
        vx = int(px[v])
        vy = int(py[v])
        if ((vx - int(px[a])) * (int(py[b]) - int(py[a]))
                - (vy - int(py[a])) * (int(px[b]) - int(px[a]))) < 0:
            continue
        ph = int(prv[h])
        nt = int(nxt[t])
        a2 = int(origin[ph])
        b2 = int(origin[nt ^ 1])
        if a2 == b2:
            continue
        ux = int(px[u])
        uy = int(py[u])
        if ((ux - int(px[a2])) * (int(py[b2]) - int(py[a2]))
                - (uy - int(py[a2])) * (int(px[b2]) - int(px[a2]))) < 0:
            continue
        nxt[ph] = nt
        prv[nt] = ph
        nxt[pt_] = nh
        prv[nh] = pt_
        g = nt
        while True:
            face_of[g] = fh
            if g == pt_:
                break
            g = int(nxt[g])
        face_alive[ft] = 0
        face_he[fh] = nh
        edge_alive[k] = 0
        degree[u] -= 1
        degree[v] -= 1
        if vertex_he[u] == h:
            vertex_he[u] = nt
        if vertex_he[v] == t:
            vertex_he[v] = nh
        removed += 1
    return removed
