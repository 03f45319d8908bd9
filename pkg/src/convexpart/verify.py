"""Feasibility checking and exact scoring.

A solution is an edge set over the instance's points. It is feasible when it
forms a plane graph that partitions the convex hull into convex faces:

* edges reference distinct valid points, no pair repeats;
* no input point lies in an edge's interior, no two edges properly cross;
* every point has positive degree;
* every cyclically consecutive pair of hull-boundary points is joined;
* the graph is connected;
* every bounded face is simple and convex (interior angles at most pi,
  collinear boundary chains allowed);
* face count satisfies Euler's relation.

Checks run in that order and the verifier reports *all* violations found up
to the first stage whose failure makes later stages meaningless (bad indices,
or a non-plane drawing).

The score of a feasible solution is s / (3(n-1) - c) where s is the number
of edges removed relative to a triangulation: s = 3(n-1) - c - m, with c the
number of points on the hull boundary (collinear boundary points included).
Scores are exact rationals; the decimal rendering rounds half-to-even at 9
fractional digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from convexpart import kernels
from convexpart.errors import InfeasibleSolution, NameMismatch
from convexpart.geometry import LEFT, RIGHT, convex_hull, orient_xy
from convexpart.subdivision import EdgeSet, build_subdivision

BAD_INDEX = "BadIndex"
DUPLICATE_EDGE = "DuplicateEdge"
POINT_ON_EDGE = "PointOnEdge"
CROSSING_EDGES = "CrossingEdges"
ISOLATED_POINT = "IsolatedPoint"
POINT_INTERIOR_TO_FACE = "PointInteriorToFace"
MISSING_HULL_EDGE = "MissingHullEdge"
DISCONNECTED = "Disconnected"
NON_SIMPLE_FACE = "NonSimpleFace"
NON_CONVEX_FACE = "NonConvexFace"
EULER_MISMATCH = "EulerMismatch"


@dataclass(frozen=True)
class Violation:
    """One feasibility violation: a kind tag plus the offending indices."""

    kind: str
    indices: tuple

    def __str__(self):
        return f"{self.kind}{self.indices}"


@dataclass
class FeasibilityReport:
    feasible: bool
    violations: list[Violation]
    n: int
    c: int
    m: int
    f: int | None

    @property
    def counts(self) -> tuple:
        return (self.n, self.c, self.m, self.f)

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


@dataclass(frozen=True)
class ScoreReport:
    n: int
    c: int
    m: int
    f: int
    s: int
    denominator: int
    score: Fraction

    def ratio(self) -> str:
        """Unreduced '2/8'-style rendering of the score."""
        return f"{self.s}/{self.denominator}"

    def decimal(self, digits: int = 9) -> str:
        return format_decimal(self.score, digits)


def format_decimal(value: Fraction, digits: int = 9) -> str:
    """Exact decimal rendering with round-half-to-even at ``digits`` places."""
    num = value.numerator
    den = value.denominator
    sign = "-" if num < 0 else ""
    num = abs(num)
    scale = 10 ** digits
    q, r = divmod(num * scale, den)
    twice = 2 * r
    if twice > den or (twice == den and q % 2 == 1):
        q += 1
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _point_in_polygon(qx: int, qy: int, cycle: list[tuple[int, int]]) -> bool:
    # Strict interior test by crossing parity; the caller guarantees q is not
    # on the boundary, which rules out the degenerate orientation==0 case for
    # straddling edges.
    parity = 0
    k = len(cycle)
    for i in range(k):
        ax, ay = cycle[i]
        bx, by = cycle[(i + 1) % k]
        if (ay > qy) != (by > qy):
            o = orient_xy(ax, ay, bx, by, qx, qy)
            if by > ay:
                if o == LEFT:
                    parity ^= 1
            else:
                if o == RIGHT:
                    parity ^= 1
    return parity == 1


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def verify(instance, solution: EdgeSet, *, assume_planar: bool = False) -> FeasibilityReport:
    """Check a solution against the feasibility contract.

    ``assume_planar=True`` skips the quadratic-ish plane-drawing scans; it is
    for internal callers whose edge sets are plane by construction (subsets
    of a triangulation). External input always gets the full treatment.
    """
    pts = getattr(instance, "points", instance)
    n = len(pts)
    hull = convex_hull(pts)
    c = hull.point_count
    if not isinstance(solution, EdgeSet):
        solution = EdgeSet(solution)
    edges_raw = solution.edges
    m = len(edges_raw)
    violations: list[Violation] = []

    def report(f=None):
        return FeasibilityReport(feasible=not violations,
                                 violations=violations, n=n, c=c, m=m, f=f)

    # Stage 1: indices.
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    for (u, v) in edges_raw:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            violations.append(Violation(BAD_INDEX, (u, v)))
            continue
        pair = (u, v) if u < v else (v, u)
        if pair in seen:
            violations.append(Violation(DUPLICATE_EDGE, pair))
            continue
        seen.add(pair)
        pairs.append(pair)
    if violations:
        return report()
    pairs.sort()

    # Stage 2: plane drawing.
    if pairs and not assume_planar:
        px = np.array([p.x for p in pts], dtype=np.int64)
        py = np.array([p.y for p in pts], dtype=np.int64)
        eu = np.array([p[0] for p in pairs], dtype=np.int64)
        ev = np.array([p[1] for p in pairs], dtype=np.int64)
        for (i, k) in sorted(kernels.find_points_on_edges(px, py, eu, ev)):
            violations.append(Violation(POINT_ON_EDGE, (i,) + pairs[k]))
        for (j, k) in sorted(kernels.find_crossings(px, py, eu, ev)):
            violations.append(Violation(CROSSING_EDGES, pairs[j] + pairs[k]))
        if violations:
            return report()

    sub = build_subdivision(pts, pairs, validate=False)

    # Degrees, with face location for stranded points.
    isolated = [i for i in range(n) if sub.degree_of(i) == 0]
    for i in isolated:
        violations.append(Violation(ISOLATED_POINT, (i,)))
    if isolated:
        face_cycles = [(fid, [(int(sub.px[v]), int(sub.py[v]))
                              for v in sub.face_vertices(fid)])
                       for fid in sub.bounded_face_ids()]
        for i in isolated:
            qx, qy = pts[i].x, pts[i].y
            for fid, cycle in face_cycles:
                if _point_in_polygon(qx, qy, cycle):
                    violations.append(Violation(POINT_INTERIOR_TO_FACE, (i, fid)))
                    break

    # Hull boundary coverage.
    pair_set = set(pairs)
    for (a, b) in hull.boundary_pairs():
        if (a, b) not in pair_set:
            violations.append(Violation(MISSING_HULL_EDGE, (a, b)))

    # Connectivity over the points that do have edges.
    ncomp = 0
    if pairs:
        uf = _UnionFind(n)
        for (u, v) in pairs:
            uf.union(u, v)
        roots = sorted({uf.find(i) for i in range(n) if sub.degree_of(i) > 0})
        ncomp = len(roots)
        if ncomp > 1:
            violations.append(Violation(DISCONNECTED, tuple(roots)))

    # Face shape.
    for fid in sub.bounded_face_ids():
        verts = sub.face_vertices(fid)
        k = len(verts)
        if k != len(set(verts)):
            dup = next(v for i, v in enumerate(verts) if v in verts[:i])
            violations.append(Violation(NON_SIMPLE_FACE, (fid, dup)))
            continue
        for i in range(k):
            if sub._orient(verts[i - 1], verts[i], verts[(i + 1) % k]) == RIGHT:
                violations.append(Violation(NON_CONVEX_FACE, (fid, verts[i])))

    # Euler consistency (meaningful only for a single component).
    f_bounded = sub.f_bounded
    if ncomp == 1:
        n_active = n - len(isolated)
        if f_bounded != len(pairs) - n_active + 1:
            violations.append(
                Violation(EULER_MISMATCH, (f_bounded, len(pairs) - n_active + 1)))

    return report(f=f_bounded)


def score(instance, solution: EdgeSet) -> ScoreReport:
    """Score of a feasible solution; raises InfeasibleSolution otherwise."""
    rep = verify(instance, solution)
    if not rep.feasible:
        kinds = ", ".join(sorted(rep.kinds()))
        raise InfeasibleSolution(f"solution is infeasible: {kinds}", report=rep)
    return _score_from_counts(rep.n, rep.c, rep.m, rep.f)


def _score_from_counts(n: int, c: int, m: int, f: int) -> ScoreReport:
    den = 3 * (n - 1) - c
    s = den - m
    if s < 0 or f != 2 * n - 2 - c - s:
        raise AssertionError(
            f"count identity broken: n={n} c={c} m={m} f={f}")
    return ScoreReport(n=n, c=c, m=m, f=f, s=s, denominator=den,
                       score=Fraction(s, den))


@dataclass(frozen=True)
class BatchRow:
    name: str
    feasible: bool
    score: Fraction
    note: str = ""
    report: ScoreReport | None = None


@dataclass
class BatchResult:
    rows: list[BatchRow] = field(default_factory=list)

    @property
    def total(self) -> Fraction:
        return sum((r.score for r in self.rows), Fraction(0))


def batch_score(instances, solutions) -> BatchResult:
    """Score a set of solutions against a set of instances.

    ``solutions`` holds (instance_name, EdgeSet) pairs. Instances without a
    solution, and solutions that fail verification, contribute 0. A solution
    naming an unknown instance, or a second solution for the same instance,
    raises NameMismatch.
    """
    by_name: dict[str, EdgeSet] = {}
    for name, edge_set in solutions:
        if name in by_name:
            raise NameMismatch(f"two solutions for instance {name!r}")
        by_name[name] = edge_set
    known = {inst.name for inst in instances}
    for name in by_name:
        if name not in known:
            raise NameMismatch(f"solution names unknown instance {name!r}")
    result = BatchResult()
    for inst in instances:
        sol = by_name.get(inst.name)
        if sol is None:
            result.rows.append(BatchRow(inst.name, False, Fraction(0), "missing"))
            continue
        rep = verify(inst, sol)
        if not rep.feasible:
            note = "infeasible: " + ", ".join(sorted(rep.kinds()))
            result.rows.append(BatchRow(inst.name, False, Fraction(0), note))
            continue
        sr = _score_from_counts(rep.n, rep.c, rep.m, rep.f)
        result.rows.append(BatchRow(inst.name, True, sr.score, "", sr))
    return result
