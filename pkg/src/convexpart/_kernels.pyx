# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; must match convexpart._kernels_py bit for bit.

Coordinates are bounded by |x|,|y| < 2**31, so differences fit in 64 bits and
cross products in 128; every predicate here is exact. Grid offsets are always
non-negative, so C truncating division agrees with Python floor division.
"""

import numpy as np

cimport numpy as cnp

cdef extern from *:
    ctypedef long long int128 "__int128"

IMPLEMENTATION = "compiled"


cdef inline int _sign128(int128 v) nogil:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


cdef inline int _orient(long long ax, long long ay, long long bx, long long by,
                        long long cx, long long cy) nogil:
    return _sign128(<int128>(bx - ax) * <int128>(cy - ay)
                    - <int128>(by - ay) * <int128>(cx - ax))


def orient(ax, ay, bx, by, cx, cy):
    """Sign of (b - a) x (c - a): +1 left turn, -1 right turn, 0 collinear."""
    return _orient(ax, ay, bx, by, cx, cy)


cdef inline long long _imin(long long a, long long b) nogil:
    return a if a < b else b


cdef inline long long _imax(long long a, long long b) nogil:
    return a if a > b else b


cdef inline bint _cross_segs(long long ax, long long ay, long long bx, long long by,
                             long long cx, long long cy, long long dx, long long dy) nogil:
    cdef int d1 = _orient(cx, cy, dx, dy, ax, ay)
    cdef int d2 = _orient(cx, cy, dx, dy, bx, by)
    cdef int d3, d4
    cdef long long lo1, hi1, lo2, hi2
    if d1 == 0 and d2 == 0:
        if ax != bx:
            lo1 = _imin(ax, bx); hi1 = _imax(ax, bx)
            lo2 = _imin(cx, dx); hi2 = _imax(cx, dx)
        else:
            lo1 = _imin(ay, by); hi1 = _imax(ay, by)
            lo2 = _imin(cy, dy); hi2 = _imax(cy, dy)
        return _imax(lo1, lo2) < _imin(hi1, hi2)
    d3 = _orient(ax, ay, bx, by, cx, cy)
    d4 = _orient(ax, ay, bx, by, dx, dy)
    return d1 * d2 < 0 and d3 * d4 < 0


def segments_cross(ax, ay, bx, by, cx, cy, dx, dy):
    """True iff segments a-b and c-d share a point interior to at least one."""
    return bool(_cross_segs(ax, ay, bx, by, cx, cy, dx, dy))


cdef inline bint _on_open(long long qx, long long qy, long long ax, long long ay,
                          long long bx, long long by) nogil:
    if _orient(ax, ay, bx, by, qx, qy) != 0:
        return False
    if ax != bx:
        return _imin(ax, bx) < qx < _imax(ax, bx)
    return _imin(ay, by) < qy < _imax(ay, by)


def find_crossings(px, py, eu, ev, cap=0):
    """All pairs (i, j), i < j, of edges whose segments cross.

    Same pair set as the pure version; pair order is an implementation
    detail and differs (cell iteration order), so callers must not rely on
    it, and ``cap`` > 0 may keep a different subset.
    """
    cdef cnp.int64_t[:] PX = np.ascontiguousarray(px, dtype=np.int64)
    cdef cnp.int64_t[:] PY = np.ascontiguousarray(py, dtype=np.int64)
    cdef cnp.int64_t[:] EU = np.ascontiguousarray(eu, dtype=np.int64)
    cdef cnp.int64_t[:] EV = np.ascontiguousarray(ev, dtype=np.int64)
    cdef Py_ssize_t m = EU.shape[0]
    out = []
    if m < 2:
        return out

    cdef cnp.int64_t[:] A0 = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] A1 = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] B0 = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] B1 = np.empty(m, dtype=np.int64)
    cdef Py_ssize_t k
    cdef long long minx, maxx, miny, maxy
    for k in range(m):
        A0[k] = PX[EU[k]]; A1[k] = PY[EU[k]]
        B0[k] = PX[EV[k]]; B1[k] = PY[EV[k]]
    minx = A0[0]; maxx = A0[0]; miny = A1[0]; maxy = A1[0]
    for k in range(m):
        minx = _imin(minx, _imin(A0[k], B0[k]))
        maxx = _imax(maxx, _imax(A0[k], B0[k]))
        miny = _imin(miny, _imin(A1[k], B1[k]))
        maxy = _imax(maxy, _imax(A1[k], B1[k]))
    cdef long long g = <long long>(m ** 0.5) + 1
    cdef long long cw = (maxx - minx) // g + 1
    cdef long long ch = (maxy - miny) // g + 1

    # CSR buckets over the g x g cell grid covered by each edge's bbox.
    cdef cnp.int64_t[:] rx0 = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] ry0 = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] rx1 = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] ry1 = np.empty(m, dtype=np.int64)
    cdef Py_ssize_t ncells = <Py_ssize_t>(g * g)
    cdef cnp.int64_t[:] counts = np.zeros(ncells + 1, dtype=np.int64)
    cdef long long x0, x1, y0, y1, cx_, cy_
    cdef Py_ssize_t total = 0
    for k in range(m):
        x0 = (_imin(A0[k], B0[k]) - minx) // cw
        x1 = (_imax(A0[k], B0[k]) - minx) // cw
        y0 = (_imin(A1[k], B1[k]) - miny) // ch
        y1 = (_imax(A1[k], B1[k]) - miny) // ch
        rx0[k] = x0; ry0[k] = y0; rx1[k] = x1; ry1[k] = y1
        total += <Py_ssize_t>((x1 - x0 + 1) * (y1 - y0 + 1))
    cdef cnp.int64_t[:] entries = np.empty(total, dtype=np.int64)
    for k in range(m):
        for cx_ in range(rx0[k], rx1[k] + 1):
            for cy_ in range(ry0[k], ry1[k] + 1):
                counts[cx_ * g + cy_ + 1] += 1
    cdef Py_ssize_t c
    for c in range(1, ncells + 1):
        counts[c] += counts[c - 1]
    cdef cnp.int64_t[:] cursor = np.empty(ncells, dtype=np.int64)
    for c in range(ncells):
        cursor[c] = counts[c]
    for k in range(m):
        for cx_ in range(rx0[k], rx1[k] + 1):
            for cy_ in range(ry0[k], ry1[k] + 1):
                c = <Py_ssize_t>(cx_ * g + cy_)
                entries[cursor[c]] = k
                cursor[c] += 1

    cdef Py_ssize_t i, j, lo, hi, e, f
    cdef int capn = cap
    for c in range(ncells):
        lo = counts[c]
        hi = counts[c + 1]
        cx_ = c // g
        cy_ = c - cx_ * g
        for i in range(lo, hi - 1):
            e = entries[i]
            for j in range(i + 1, hi):
                f = entries[j]
                if _imax(rx0[e], rx0[f]) != cx_ or _imax(ry0[e], ry0[f]) != cy_:
                    continue
                if _cross_segs(A0[e], A1[e], B0[e], B1[e],
                               A0[f], A1[f], B0[f], B1[f]):
                    if e < f:
                        out.append((e, f))
                    else:
                        out.append((f, e))
                    if capn and len(out) >= capn:
                        return out
    return out


def find_points_on_edges(px, py, eu, ev, cap=0):
    """All pairs (point_index, edge_index) with the point interior to the edge."""
    cdef cnp.int64_t[:] PX = np.ascontiguousarray(px, dtype=np.int64)
    cdef cnp.int64_t[:] PY = np.ascontiguousarray(py, dtype=np.int64)
    cdef cnp.int64_t[:] EU = np.ascontiguousarray(eu, dtype=np.int64)
    cdef cnp.int64_t[:] EV = np.ascontiguousarray(ev, dtype=np.int64)
    cdef Py_ssize_t n = PX.shape[0]
    cdef Py_ssize_t m = EU.shape[0]
    out = []
    if n == 0 or m == 0:
        return out
    cdef long long minx = PX[0], maxx = PX[0], miny = PY[0], maxy = PY[0]
    cdef Py_ssize_t i, k
    for i in range(n):
        minx = _imin(minx, PX[i]); maxx = _imax(maxx, PX[i])
        miny = _imin(miny, PY[i]); maxy = _imax(maxy, PY[i])
    cdef long long g = <long long>(n ** 0.5) + 1
    cdef long long cw = (maxx - minx) // g + 1
    cdef long long ch = (maxy - miny) // g + 1
    cdef Py_ssize_t ncells = <Py_ssize_t>(g * g)
    cdef cnp.int64_t[:] counts = np.zeros(ncells + 1, dtype=np.int64)
    cdef Py_ssize_t c
    for i in range(n):
        c = <Py_ssize_t>(((PX[i] - minx) // cw) * g + (PY[i] - miny) // ch)
        counts[c + 1] += 1
    for c in range(1, ncells + 1):
        counts[c] += counts[c - 1]
    cdef cnp.int64_t[:] cursor = np.empty(ncells, dtype=np.int64)
    for c in range(ncells):
        cursor[c] = counts[c]
    cdef cnp.int64_t[:] entries = np.empty(n, dtype=np.int64)
    for i in range(n):
        c = <Py_ssize_t>(((PX[i] - minx) // cw) * g + (PY[i] - miny) // ch)
        entries[cursor[c]] = i
        cursor[c] += 1

    cdef long long u, v, ax, ay, bx, by, x0, x1, y0, y1, cx_, cy_
    cdef Py_ssize_t lo, hi, t
    cdef int capn = cap
    for k in range(m):
        u = EU[k]; v = EV[k]
        ax = PX[u]; ay = PY[u]; bx = PX[v]; by = PY[v]
        x0 = (_imin(ax, bx) - minx) // cw
        x1 = (_imax(ax, bx) - minx) // cw
        y0 = (_imin(ay, by) - miny) // ch
        y1 = (_imax(ay, by) - miny) // ch
        for cx_ in range(x0, x1 + 1):
            for cy_ in range(y0, y1 + 1):
                c = <Py_ssize_t>(cx_ * g + cy_)
                lo = counts[c]; hi = counts[c + 1]
                for t in range(lo, hi):
                    i = entries[t]
                    if i == u or i == v:
                        continue
                    if _on_open(PX[i], PY[i], ax, ay, bx, by):
                        out.append((i, k))
                        if capn and len(out) >= capn:
                            return out
    return out


cdef inline int _dir_class(long long dx, long long dy) nogil:
    if dy == 0:
        return 0 if dx > 0 else 4
    if dx == 0:
        return 2 if dy > 0 else 6
    if dy > 0:
        return 1 if dx > 0 else 3
    return 5 if dx < 0 else 7


cdef inline bint _dir_less(int c1, long long dx1, long long dy1,
                           int c2, long long dx2, long long dy2) nogil:
    # Strictly smaller CCW angle from +x. Within one class dx has constant
    # sign, so cross-multiplied slope comparison needs no sign juggling.
    cdef int128 cross
    if c1 != c2:
        return c1 < c2
    cross = <int128>dx1 * <int128>dy2 - <int128>dy1 * <int128>dx2
    return cross > 0


def sort_rotations(px, py, eu, ev):
    """Half-edge links from the CCW rotation system of a plane edge set."""
    cdef cnp.int64_t[:] PX = np.ascontiguousarray(px, dtype=np.int64)
    cdef cnp.int64_t[:] PY = np.ascontiguousarray(py, dtype=np.int64)
    cdef cnp.int64_t[:] EU = np.ascontiguousarray(eu, dtype=np.int64)
    cdef cnp.int64_t[:] EV = np.ascontiguousarray(ev, dtype=np.int64)
    cdef Py_ssize_t m = EU.shape[0]
    cdef Py_ssize_t H = 2 * m
    cdef Py_ssize_t n = PX.shape[0]
    nxt_arr = np.empty(H, dtype=np.int64)
    prv_arr = np.empty(H, dtype=np.int64)
    cdef cnp.int64_t[:] nxt = nxt_arr
    cdef cnp.int64_t[:] prv = prv_arr

    # Group outgoing half-edges by origin (CSR, ascending half-edge id —
    # the same pre-sort order as the pure version, and the sort is stable).
    cdef cnp.int64_t[:] counts = np.zeros(n + 1, dtype=np.int64)
    cdef Py_ssize_t k, g
    for k in range(m):
        counts[EU[k] + 1] += 1
        counts[EV[k] + 1] += 1
    cdef Py_ssize_t v
    for v in range(1, n + 1):
        counts[v] += counts[v - 1]
    cdef cnp.int64_t[:] cursor = np.empty(n, dtype=np.int64)
    for v in range(n):
        cursor[v] = counts[v]
    cdef cnp.int64_t[:] entries = np.empty(H, dtype=np.int64)
    for k in range(m):
        entries[cursor[EU[k]]] = 2 * k
        cursor[EU[k]] += 1
        entries[cursor[EV[k]]] = 2 * k + 1
        cursor[EV[k]] += 1

    # Per-half-edge direction (from its origin).
    cdef cnp.int64_t[:] dxs = np.empty(H, dtype=np.int64)
    cdef cnp.int64_t[:] dys = np.empty(H, dtype=np.int64)
    cdef cnp.int8_t[:] cls = np.empty(H, dtype=np.int8)
    cdef long long dx, dy
    for k in range(m):
        dx = PX[EV[k]] - PX[EU[k]]
        dy = PY[EV[k]] - PY[EU[k]]
        dxs[2 * k] = dx; dys[2 * k] = dy
        cls[2 * k] = _dir_class(dx, dy)
        dxs[2 * k + 1] = -dx; dys[2 * k + 1] = -dy
        cls[2 * k + 1] = _dir_class(-dx, -dy)

    cdef cnp.int64_t[:] buf = np.empty(H, dtype=np.int64)
    cdef Py_ssize_t lo, hi, width, a0, a1, b1, ia, ib, w, i, t, nh
    cdef cnp.int64_t ga, gb
    for v in range(n):
        lo = counts[v]
        hi = counts[v + 1]
        if hi - lo > 1:
            # Bottom-up stable merge sort of entries[lo:hi] by CCW angle.
            width = 1
            while width < hi - lo:
                a0 = lo
                while a0 < hi:
                    a1 = a0 + width
                    if a1 > hi:
                        a1 = hi
                    b1 = a1 + width
                    if b1 > hi:
                        b1 = hi
                    ia = a0; ib = a1; w = a0
                    while ia < a1 and ib < b1:
                        ga = entries[ia]; gb = entries[ib]
                        if _dir_less(cls[gb], dxs[gb], dys[gb],
                                     cls[ga], dxs[ga], dys[ga]):
                            buf[w] = gb; ib += 1
                        else:
                            buf[w] = ga; ia += 1
                        w += 1
                    while ia < a1:
                        buf[w] = entries[ia]; ia += 1; w += 1
                    while ib < b1:
                        buf[w] = entries[ib]; ib += 1; w += 1
                    a0 = b1
                for i in range(lo, hi):
                    entries[i] = buf[i]
                width *= 2
        for i in range(lo, hi):
            g = entries[i]
            t = g ^ 1
            nh = entries[i - 1] if i > lo else entries[hi - 1]
            nxt[t] = nh
            prv[nh] = t
    return nxt_arr, prv_arr


def greedy_pass(px, py, origin, nxt, prv, face_of, face_alive, face_bounded,
                face_he, edge_alive, degree, vertex_he, order):
    """One merge pass over ``order``; mutates the arrays, returns removals."""
    cdef cnp.int64_t[:] PX = px
    cdef cnp.int64_t[:] PY = py
    cdef cnp.int64_t[:] ORI = origin
    cdef cnp.int64_t[:] NXT = nxt
    cdef cnp.int64_t[:] PRV = prv
    cdef cnp.int64_t[:] FOF = face_of
    cdef cnp.uint8_t[:] FAL = face_alive
    cdef cnp.uint8_t[:] FBD = face_bounded
    cdef cnp.int64_t[:] FHE = face_he
    cdef cnp.uint8_t[:] EAL = edge_alive
    cdef cnp.int64_t[:] DEG = degree
    cdef cnp.int64_t[:] VHE = vertex_he
    cdef cnp.int64_t[:] ORD = np.ascontiguousarray(order, dtype=np.int64)

    cdef Py_ssize_t idx, k
    cdef long long h, t, fh, ft, u, v, pt_, nh, a, b, ph, nt, a2, b2, g
    cdef long long vx, vy, ux, uy
    cdef int removed = 0
    for idx in range(ORD.shape[0]):
        k = ORD[idx]
        if not EAL[k]:
            continue
        h = 2 * k
        t = h + 1
        fh = FOF[h]
        ft = FOF[t]
        if fh == ft:
            continue
        if not (FBD[fh] and FBD[ft]):
            continue
        u = ORI[h]
        v = ORI[t]
        pt_ = PRV[t]
        nh = NXT[h]
        a = ORI[pt_]
        b = ORI[nh ^ 1]
        if a == b:
            continue
        vx = PX[v]
        vy = PY[v]
        if (<int128>(vx - PX[a]) * <int128>(PY[b] - PY[a])
                - <int128>(vy - PY[a]) * <int128>(PX[b] - PX[a])) < 0:
            continue
        ph = PRV[h]
        nt = NXT[t]
        a2 = ORI[ph]
        b2 = ORI[nt ^ 1]
        if a2 == b2:
            continue
        ux = PX[u]
        uy = PY[u]
        if (<int128>(ux - PX[a2]) * <int128>(PY[b2] - PY[a2])
                - <int128>(uy - PY[a2]) * <int128>(PX[b2] - PX[a2])) < 0:
            continue
        NXT[ph] = nt
        PRV[nt] = ph
        NXT[pt_] = nh
        PRV[nh] = pt_
        g = nt
        while True:
            FOF[g] = fh
            if g == pt_:
                break
            g = NXT[g]
        FAL[ft] = 0
        FHE[fh] = nh
        EAL[k] = 0
        DEG[u] -= 1
        DEG[v] -= 1
        if VHE[u] == h:
            VHE[u] = nt
        if VHE[v] == t:
            VHE[v] = nh
        removed += 1
    return removed
