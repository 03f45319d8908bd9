"""Exact planar geometry over integer coordinates.

Conventions used throughout the package:

* Coordinates are integers (|x|, |y| < 2**31 for instances, but everything
  here is exact for arbitrary Python integers -- no floats, no epsilons).
* ``orientation(p, q, r)`` is the sign of the cross product
  (q - p) x (r - p): ``LEFT`` (+1) when r lies left of the directed line
  p->q, ``RIGHT`` (-1) when right, ``COLLINEAR`` (0) on the line.
* Polygons and hulls are reported counterclockwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from convexpart.errors import DegenerateHull

LEFT = 1
COLLINEAR = 0
RIGHT = -1


@dataclass(frozen=True)
class Point:
    """An input point: immutable, hashable, compared by (index, x, y)."""

    index: int
    x: int
    y: int


def orient_xy(ax: int, ay: int, bx: int, by: int, cx: int, cy: int) -> int:
    """Orientation of (c relative to the directed line a->b) on raw coordinates."""
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if v > 0:
        return LEFT
    if v < 0:
        return RIGHT
    return COLLINEAR


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of (q - p) x (r - p); satisfies orientation(p,q,r) == -orientation(p,r,q)."""
    return orient_xy(p.x, p.y, q.x, q.y, r.x, r.y)


def point_on_open_segment(q: Point, a: Point, b: Point) -> bool:
    """True iff q lies strictly between a and b on the segment a-b."""
    if orient_xy(a.x, a.y, b.x, b.y, q.x, q.y) != COLLINEAR:
        return False
    if a.x != b.x:
        return min(a.x, b.x) < q.x < max(a.x, b.x)
    return min(a.y, b.y) < q.y < max(a.y, b.y)


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff segments a-b and c-d intersect beyond shared endpoints.

    Proper transversal crossings count, as do collinear overlaps of positive
    length. Meeting only at a common endpoint, or an endpoint merely touching
    the other segment's interior, does not.
    """
    d1 = orientation(c, d, a)
    d2 = orientation(c, d, b)
    if d1 == COLLINEAR and d2 == COLLINEAR:
        if a.x != b.x:
            lo1, hi1 = sorted((a.x, b.x))
            lo2, hi2 = sorted((c.x, d.x))
        else:
            lo1, hi1 = sorted((a.y, b.y))
            lo2, hi2 = sorted((c.y, d.y))
        return max(lo1, lo2) < min(hi1, hi2)
    d3 = orientation(a, b, c)
    d4 = orientation(a, b, d)
    return d1 * d2 < 0 and d3 * d4 < 0


def angle_at_most_pi(prev: Point, apex: Point, nxt: Point) -> bool:
    """Interior angle test for a CCW face walk ``... -> prev -> apex -> nxt -> ...``.

    The angle at ``apex`` is at most pi exactly when the walk does not turn
    right there; a straight continuation (collinear, exactly pi) is allowed.
    """
    return orientation(prev, apex, nxt) != RIGHT


def all_collinear(points: Sequence[Point]) -> bool:
    """True when fewer than 3 points or all points lie on one line."""
    if len(points) < 3:
        return True
    a = points[0]
    b = next((p for p in points[1:] if (p.x, p.y) != (a.x, a.y)), None)
    if b is None:
        return True
    return all(orientation(a, b, p) == COLLINEAR for p in points[1:])


@dataclass(frozen=True)
class Hull:
    """Convex hull of an instance.

    ``corners`` lists the strict corner vertices in CCW order; ``boundary``
    lists *every* point on the hull boundary in CCW order, including points
    interior to hull edges. ``point_count`` is the boundary-point count c used
    by the scoring rule.
    """

    corners: list[int]
    boundary: list[int]

    @property
    def point_count(self) -> int:
        return len(self.boundary)

    def boundary_pairs(self) -> list[tuple[int, int]]:
        """Consecutive boundary edges as sorted index pairs."""
        b = self.boundary
        return [tuple(sorted((b[i], b[(i + 1) % len(b)]))) for i in range(len(b))]


def _half_chain(pts: list[Point], strict_pop: bool) -> list[Point]:
    # Monotone chain; with strict_pop=True collinear points survive on the
    # chain (boundary mode), otherwise they are popped (corner mode).
    chain: list[Point] = []
    for p in pts:
        while len(chain) >= 2:
            turn = orientation(chain[-2], chain[-1], p)
            if turn < 0 or (not strict_pop and turn == 0):
                chain.pop()
            else:
                break
        chain.append(p)
    return chain


def convex_hull(points: Sequence[Point]) -> Hull:
    """Andrew's monotone chain, run twice: once for corners, once for the
    full boundary with collinear points kept.

    Points must have pairwise distinct coordinates. Raises DegenerateHull
    when the hull has no interior (n < 3 or all collinear).
    """
    if all_collinear(points):
        raise DegenerateHull(f"hull of {len(points)} point(s) has no interior")
    pts = sorted(points, key=lambda p: (p.x, p.y))
    rev = pts[::-1]

    lower_c = _half_chain(pts, strict_pop=False)
    upper_c = _half_chain(rev, strict_pop=False)
    corners = [p.index for p in lower_c[:-1]] + [p.index for p in upper_c[:-1]]

    lower_b = _half_chain(pts, strict_pop=True)
    upper_b = _half_chain(rev, strict_pop=True)
    boundary = [p.index for p in lower_b[:-1]] + [p.index for p in upper_b[:-1]]

    return Hull(corners=corners, boundary=boundary)
