"""Triangulations and the incremental operations the solvers lean on.

The base triangulation is a lexicographic plane sweep: each point links to
its predecessor and to every hull point that becomes visible, with strict
turn tests so runs of collinear points chain up instead of being skipped.
That handles degenerate inputs natively and yields exactly
3(n-1) - c edges (c = points on the hull boundary).

On top of that: ear-clipping for simple polygon faces, convex-face
retriangulation, constrained segment insertion via channel removal, and
Lawson flips for perturbing a triangulation.
"""

from __future__ import annotations

from convexpart.errors import ConvexPartError, DegenerateHull
from convexpart.geometry import LEFT, RIGHT, Point, all_collinear, orientation
from convexpart.kernels import segments_cross
from convexpart.rng import SplitMix64
from convexpart.subdivision import EdgeSet, Subdivision


def triangulation_edges(points) -> list[tuple[int, int]]:
    """Edge pairs of the sweep triangulation, sorted."""
    pts = sorted(points, key=lambda p: (p.x, p.y))
    if all_collinear(pts):
        raise DegenerateHull(
            f"cannot triangulate {len(pts)} collinear point(s)")
    edges: set[tuple[int, int]] = set()

    def add(p: Point, q: Point) -> None:
        edges.add((p.index, q.index) if p.index < q.index else (q.index, p.index))

    first = pts[0]
    lower = [first]
    upper = [first]
    last = first
    for p in pts[1:]:
        add(p, last)
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], p) == RIGHT:
            add(p, lower[-2])
            lower.pop()
        lower.append(p)
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], p) == LEFT:
            add(p, upper[-2])
            upper.pop()
        upper.append(p)
        last = p
    return sorted(edges)


def triangulate(instance) -> EdgeSet:
    """Triangulation of an instance as an EdgeSet (canonically ordered)."""
    return EdgeSet(triangulation_edges(instance.points))


def _in_closed_triangle(a: Point, b: Point, c: Point, q: Point) -> bool:
    # a, b, c counterclockwise
    return (orientation(a, b, q) >= 0 and orientation(b, c, q) >= 0
            and orientation(c, a, q) >= 0)


def polygon_diagonals(pts: list[Point]) -> list[tuple[int, int]]:
    """Diagonals triangulating a simple CCW polygon, by ear clipping.

    Vertices may be collinear (interior angles of exactly pi) but must be
    pairwise distinct, and no vertex may lie on an open side -- both hold for
    face cycles of a valid subdivision. Returns (index, index) pairs.
    """
    ids = list(range(len(pts)))
    diags: list[tuple[int, int]] = []
    while len(ids) > 3:
        k = len(ids)
        clipped = False
        for i in range(k):
            u = pts[ids[i - 1]]
            v = pts[ids[i]]
            w = pts[ids[(i + 1) % k]]
            if orientation(u, v, w) != LEFT:
                continue
            blocked = False
            for j in range(k):
                if j == i or j == (i - 1) % k or j == (i + 1) % k:
                    continue
                if _in_closed_triangle(u, v, w, pts[ids[j]]):
                    blocked = True
                    break
            if blocked:
                continue
            diags.append((u.index, w.index))
            del ids[i]
            clipped = True
            break
        if not clipped:
            raise ConvexPartError("ear clipping stalled: polygon is not simple")
    return diags


def _in_circumdisk(ax, ay, bx, by, cx, cy, dx, dy) -> bool:
    """True iff d lies strictly inside the circle through a, b, c.

    Exact in Python integers; the orientation of a, b, c may be either way.
    """
    adx = ax - dx
    ady = ay - dy
    bdx = bx - dx
    bdy = by - dy
    cdx = cx - dx
    cdy = cy - dy
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = (adx * (bdy * cd - cdy * bd)
           - ady * (bdx * cd - cdx * bd)
           + ad * (bdx * cdy - cdx * bdy))
    cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return det > 0 if cross > 0 else det < 0


def _face_points(sub: Subdivision, fid: int) -> list[Point]:
    return [Point(i, int(sub.px[i]), int(sub.py[i]))
            for i in sub.face_vertices(fid)]


def retriangulate_face(sub: Subdivision, fid: int) -> int:
    """Split a convex bounded face into triangles; returns diagonals added.

    Runs the sweep on the face's own vertices -- unlike fanning from one
    corner, that stays valid when the corner's neighbours are collinear
    boundary points.
    """
    pts = _face_points(sub, fid)
    if len(pts) <= 3:
        return 0
    boundary = {(a.index, b.index) if a.index < b.index else (b.index, a.index)
                for a, b in zip(pts, pts[1:] + pts[:1])}
    added = 0
    for (u, v) in triangulation_edges(pts):
        if (u, v) not in boundary:
            sub.insert_edge(u, v)
            added += 1
    return added


def retriangulate_all(sub: Subdivision) -> int:
    """Retriangulate every bounded face; returns total diagonals added."""
    added = 0
    for fid in sub.bounded_face_ids():
        added += retriangulate_face(sub, fid)
    return added


def _apex_beats(sub: Subdivision, i0: int, i1: int, cur: int, cand: int) -> bool:
    """True if ``cand`` should replace ``cur`` as the apex over base i0-i1."""
    if cand == i0 or cand == i1 or sub._orient(i0, i1, cand) == 0:
        return False
    if cur == i0 or cur == i1 or sub._orient(i0, i1, cur) == 0:
        return True
    return _in_circumdisk(
        int(sub.px[i0]), int(sub.py[i0]), int(sub.px[i1]), int(sub.py[i1]),
        int(sub.px[cur]), int(sub.py[cur]),
        int(sub.px[cand]), int(sub.py[cand]))


def _fill_channel_side(sub: Subdivision, chain: list[int]) -> None:
    """Retriangulate one side of a reinserted segment's channel.

    ``chain`` lists the side's boundary vertices in crossing order, from one
    endpoint of the segment to the other.  The walk may visit a vertex twice
    -- the channel pinches around any surviving edge both of whose triangles
    were crossed -- so the sides are not reliably simple polygons and ear
    clipping the face cycle is out.  Splitting on the apex whose circumcircle
    over the base holds no later candidate stays valid anyway: a vertex
    inside the base triangle would also be inside that circle, so each chosen
    triangle is empty and its sides are either surviving boundary edges or
    fresh diagonals of the cavity.
    """
    if len(chain) < 3:
        return
    stack = [(0, len(chain) - 1)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        c = lo + 1
        for i in range(lo + 2, hi):
            if _apex_beats(sub, chain[lo], chain[hi], chain[c], chain[i]):
                c = i
        if (chain[c] in (chain[lo], chain[hi])
                or sub._orient(chain[lo], chain[hi], chain[c]) == 0):
            raise ConvexPartError("channel fill found no usable apex")
        stack.append((lo, c))
        stack.append((c, hi))
        for p, q in ((chain[lo], chain[c]), (chain[c], chain[hi])):
            if not sub.has_edge(p, q):
                sub.insert_edge(p, q)


def insert_segment(sub: Subdivision, a: int, b: int,
                   protected: frozenset | set = frozenset()) -> bool:
    """Force edge a-b into a triangulated subdivision.

    Walks the triangles crossed by the open segment, removes the crossing
    edges, inserts a-b, and refills the two channel sides with triangles.
    The open segment must contain no input point. If a crossing edge is
    listed in ``protected`` (normalized pairs), returns False and leaves the
    subdivision untouched; returns True once a-b is present.
    """
    if sub.has_edge(a, b):
        return True
    ax, ay = int(sub.px[a]), int(sub.py[a])
    bx, by = int(sub.px[b]), int(sub.py[b])
    g = sub._wedge_half_edge(a, bx - ax, by - ay)
    cur = int(sub.face_of[g])
    entry = -1
    crossed: list[int] = []
    guard = 2 * sub.edge_slots + 2
    for _ in range(guard):
        if b in sub.face_vertices(cur):
            break
        exit_h = -1
        for h in sub.face_half_edges(cur):
            if h == entry:
                continue
            o = int(sub.origin[h])
            d = int(sub.origin[h ^ 1])
            if o == a or d == a:
                continue
            if segments_cross(ax, ay, bx, by,
                              int(sub.px[o]), int(sub.py[o]),
                              int(sub.px[d]), int(sub.py[d])):
                exit_h = h
                break
        if exit_h < 0:
            raise ConvexPartError(
                f"channel walk from {a} to {b} found no exit edge")
        k = exit_h >> 1
        u, v = int(sub.eu[k]), int(sub.ev[k])
        if ((u, v) if u < v else (v, u)) in protected:
            return False
        nxt_face = int(sub.face_of[exit_h ^ 1])
        if not sub.face_bounded[nxt_face]:
            return False
        crossed.append(k)
        entry = exit_h ^ 1
        cur = nxt_face
    else:
        raise ConvexPartError("channel walk did not terminate")

    upper: list[int] = [a]
    lower: list[int] = [a]
    for k in crossed:
        u, v = int(sub.eu[k]), int(sub.ev[k])
        if sub._orient(a, b, u) != LEFT:
            u, v = v, u
        if upper[-1] != u:
            upper.append(u)
        if lower[-1] != v:
            lower.append(v)
    upper.append(b)
    lower.append(b)
    for k in crossed:
        sub._remove_edge_raw(k)
    sub.insert_edge(a, b)
    _fill_channel_side(sub, upper)
    _fill_channel_side(sub, lower)
    return True


def flip_edge(sub: Subdivision, u: int, v: int):
    """Lawson flip of edge u-v; returns the new pair, or None if the edge is
    not the diagonal of a strictly convex quadrilateral of two triangles."""
    k = sub.edge_slot(u, v)
    h = 2 * k
    t = h + 1
    fh = int(sub.face_of[h])
    ft = int(sub.face_of[t])
    if fh == ft or not (sub.face_bounded[fh] and sub.face_bounded[ft]):
        return None
    if int(sub.nxt[int(sub.nxt[int(sub.nxt[h])])]) != h:
        return None
    if int(sub.nxt[int(sub.nxt[int(sub.nxt[t])])]) != t:
        return None
    u_ = int(sub.origin[h])
    v_ = int(sub.origin[t])
    al = int(sub.origin[int(sub.prv[h])])
    ar = int(sub.origin[int(sub.prv[t])])
    if sub._orient(al, u_, ar) != LEFT or sub._orient(ar, v_, al) != LEFT:
        return None
    sub._remove_edge_raw(k)
    sub.insert_edge(al, ar)
    return (al, ar) if al < ar else (ar, al)


def random_flips(sub: Subdivision, stream: SplitMix64, attempts: int) -> int:
    """Attempt ``attempts`` random Lawson flips; returns how many succeeded."""
    slots = sub.alive_edge_slots()
    if not slots:
        return 0
    done = 0
    for _ in range(attempts):
        k = slots[stream.below(len(slots))]
        if not sub.edge_alive[k]:
            continue
        if flip_edge(sub, int(sub.eu[k]), int(sub.ev[k])) is not None:
            done += 1
    return done
