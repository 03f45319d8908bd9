"""SVG pictures of instances and solutions, for eyeballing results.

Output is plain SVG 1.1 text, deterministic for identical inputs: points as
dots, solution edges as lines, the hull dashed, and — when the solution is
feasible — every bounded face shaded. Infeasible solutions render anyway with
the offending elements in red so the failure is visible.
"""

from __future__ import annotations

from convexpart.geometry import convex_hull
from convexpart.subdivision import EdgeSet, build_subdivision
from convexpart.verify import (
    CROSSING_EDGES,
    DUPLICATE_EDGE,
    ISOLATED_POINT,
    MISSING_HULL_EDGE,
    NON_CONVEX_FACE,
    NON_SIMPLE_FACE,
    POINT_INTERIOR_TO_FACE,
    POINT_ON_EDGE,
    FeasibilityReport,
    verify,
)

_FACE_FILLS = ("#dbeafe", "#dcfce7", "#fef9c3", "#fae8ff", "#ffedd5", "#e0f2fe")


class _Frame:
    """Integer plane -> SVG pixel coordinates (y flipped)."""

    def __init__(self, points, size: int, pad: float):
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        self.minx, self.maxx = min(xs), max(xs)
        self.miny, self.maxy = min(ys), max(ys)
        span = max(self.maxx - self.minx, self.maxy - self.miny, 1)
        self.scale = (size - 2 * pad) / span
        self.pad = pad
        self.size = size

    def x(self, v: int) -> str:
        return f"{self.pad + (v - self.minx) * self.scale:.2f}"

    def y(self, v: int) -> str:
        return f"{self.pad + (self.maxy - v) * self.scale:.2f}"


def render_svg(instance, solution: EdgeSet | None = None,
               report: FeasibilityReport | None = None,
               size: int = 720) -> str:
    pts = instance.points
    if solution is not None and report is None:
        report = verify(instance, solution)
    frame = _Frame(pts, size, pad=24.0)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'  <rect width="{size}" height="{size}" fill="white"/>',
    ]

    bad_edges: set[tuple[int, int]] = set()
    bad_points: set[int] = set()
    missing_hull: list[tuple[int, int]] = []
    if report is not None:
        for v in report.violations:
            ix = v.indices
            if v.kind == CROSSING_EDGES:
                bad_edges.add(_norm(ix[0], ix[1]))
                bad_edges.add(_norm(ix[2], ix[3]))
            elif v.kind == POINT_ON_EDGE:
                bad_points.add(ix[0])
                bad_edges.add(_norm(ix[1], ix[2]))
            elif v.kind == DUPLICATE_EDGE:
                bad_edges.add(_norm(ix[0], ix[1]))
            elif v.kind in (ISOLATED_POINT, POINT_INTERIOR_TO_FACE):
                bad_points.add(ix[0])
            elif v.kind in (NON_SIMPLE_FACE, NON_CONVEX_FACE):
                bad_points.add(ix[1])
            elif v.kind == MISSING_HULL_EDGE:
                missing_hull.append((ix[0], ix[1]))

    # Shaded faces, only when the drawing is an honest plane subdivision.
    if solution is not None and report is not None and report.feasible:
        sub = build_subdivision(pts, solution, validate=False)
        out.append('  <g stroke="none">')
        for pos, fid in enumerate(sub.bounded_face_ids()):
            ring = " ".join(f"{frame.x(pts[v].x)},{frame.y(pts[v].y)}"
                            for v in sub.face_vertices(fid))
            fill = _FACE_FILLS[pos % len(_FACE_FILLS)]
            out.append(f'    <polygon points="{ring}" fill="{fill}"/>')
        out.append('  </g>')

    # Hull outline, dashed.
    hull = convex_hull(pts)
    ring = " ".join(f"{frame.x(pts[v].x)},{frame.y(pts[v].y)}"
                    for v in hull.corners)
    out.append(f'  <polygon points="{ring}" fill="none" stroke="#94a3b8" '
               f'stroke-width="1" stroke-dasharray="6 4"/>')

    if solution is not None:
        out.append('  <g stroke="#1e293b" stroke-width="1.5">')
        for u, v in solution.canonical():
            key = _norm(u, v)
            if key in bad_edges or u >= len(pts) or v >= len(pts):
                continue
            out.append(f'    <line x1="{frame.x(pts[u].x)}" y1="{frame.y(pts[u].y)}" '
                       f'x2="{frame.x(pts[v].x)}" y2="{frame.y(pts[v].y)}"/>')
        out.append('  </g>')
        if bad_edges:
            out.append('  <g stroke="#dc2626" stroke-width="2.5">')
            for u, v in sorted(bad_edges):
                if u >= len(pts) or v >= len(pts):
                    continue
                out.append(f'    <line x1="{frame.x(pts[u].x)}" y1="{frame.y(pts[u].y)}" '
                           f'x2="{frame.x(pts[v].x)}" y2="{frame.y(pts[v].y)}"/>')
            out.append('  </g>')
        if missing_hull:
            out.append('  <g stroke="#dc2626" stroke-width="2" stroke-dasharray="3 3">')
            for u, v in missing_hull:
                out.append(f'    <line x1="{frame.x(pts[u].x)}" y1="{frame.y(pts[u].y)}" '
                           f'x2="{frame.x(pts[v].x)}" y2="{frame.y(pts[v].y)}"/>')
            out.append('  </g>')

    out.append('  <g fill="#0f172a">')
    for p in pts:
        out.append(f'    <circle cx="{frame.x(p.x)}" cy="{frame.y(p.y)}" r="2.5"/>')
    out.append('  </g>')
    if bad_points:
        out.append('  <g fill="none" stroke="#dc2626" stroke-width="2">')
        for i in sorted(bad_points):
            if i < len(pts):
                p = pts[i]
                out.append(f'    <circle cx="{frame.x(p.x)}" cy="{frame.y(p.y)}" r="6"/>')
        out.append('  </g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


def save_svg(path, instance, solution: EdgeSet | None = None,
             report: FeasibilityReport | None = None, size: int = 720) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(instance, solution, report, size=size))
