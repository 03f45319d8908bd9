"""Plane subdivisions of a point set, stored as a half-edge structure.

Undirected edge slot ``k`` owns half-edges ``2k`` (eu[k] -> ev[k]) and
``2k+1`` (its twin); ``twin(h) == h ^ 1``. Face cycles follow ``nxt``/``prv``
links built from the CCW rotation system, so every bounded face winds
counterclockwise (interior on the left) and the unbounded face winds
clockwise. Everything lives in flat numpy arrays so the compiled kernels can
walk the same memory the Python code does.

Rotation identities used below: for an outgoing half-edge ``g`` at vertex v,
``rot_next(g) == prv[g] ^ 1`` is the next outgoing half-edge counterclockwise
around v, and the face lying in the wedge between ``g`` and ``rot_next(g)``
is ``face_of[g]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from convexpart import kernels
from convexpart.errors import (
    BadIndex,
    ConvexPartError,
    DuplicateEdge,
    CrossingEdges,
    NotRemovable,
    PointOnEdge,
    UnknownEdge,
)
from convexpart.geometry import RIGHT, Point, orient_xy

REASON_SAME_FACE = "SameFace"
REASON_OUTER = "BordersOuterFace"
REASON_REFLEX = "ReflexMerge"


class EdgeSet:
    """A bag of undirected edges given as (u, v) index pairs.

    Kept verbatim (order, orientation, and duplicates preserved) so the
    verifier can report exactly what it was handed. ``canonical()`` gives the
    sorted, normalized form used for hashing and byte-stable output.
    """

    __slots__ = ("edges",)

    def __init__(self, edges):
        self.edges = [(int(u), int(v)) for (u, v) in edges]

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __eq__(self, other):
        return isinstance(other, EdgeSet) and self.edges == other.edges

    def __repr__(self):
        return f"EdgeSet({len(self.edges)} edges)"

    def canonical(self) -> list[tuple[int, int]]:
        return sorted((u, v) if u < v else (v, u) for (u, v) in self.edges)


@dataclass(frozen=True)
class MergePreview:
    """Outcome of asking whether an edge can be removed: ``removable`` plus,
    when not, one of the reasons SameFace / BordersOuterFace / ReflexMerge."""

    removable: bool
    reason: str | None = None


def _extend(arr: np.ndarray, newlen: int) -> np.ndarray:
    out = np.zeros(newlen, dtype=arr.dtype)
    out[: len(arr)] = arr
    return out


class Subdivision:
    """Mutable half-edge subdivision. Build via :func:`build_subdivision`."""

    def __init__(self, points: list[Point]):
        self.n = len(points)
        self.px = np.array([p.x for p in points], dtype=np.int64)
        self.py = np.array([p.y for p in points], dtype=np.int64)
        self.eu = np.zeros(0, dtype=np.int64)
        self.ev = np.zeros(0, dtype=np.int64)
        self.edge_alive = np.zeros(0, dtype=np.uint8)
        self.origin = np.zeros(0, dtype=np.int64)
        self.nxt = np.zeros(0, dtype=np.int64)
        self.prv = np.zeros(0, dtype=np.int64)
        self.face_of = np.zeros(0, dtype=np.int64)
        self.face_he = np.zeros(0, dtype=np.int64)
        self.face_alive = np.zeros(0, dtype=np.uint8)
        self.face_bounded = np.zeros(0, dtype=np.uint8)
        self.degree = np.zeros(self.n, dtype=np.int64)
        self.vertex_he = np.full(self.n, -1, dtype=np.int64)
        self.m_alive = 0
        self.f_bounded = 0
        self.outer_count = 0
        self.edge_slots = 0
        self.face_slots = 0
        self._pair2slot: dict[tuple[int, int], int] = {}
        self._free_edges: list[int] = []
        self._free_faces: list[int] = []

    # ------------------------------------------------------------------ util

    def copy(self) -> "Subdivision":
        dup = object.__new__(Subdivision)
        dup.n = self.n
        for name in ("px", "py", "eu", "ev", "edge_alive", "origin", "nxt",
                     "prv", "face_of", "face_he", "face_alive", "face_bounded",
                     "degree", "vertex_he"):
            setattr(dup, name, getattr(self, name).copy())
        dup.m_alive = self.m_alive
        dup.f_bounded = self.f_bounded
        dup.outer_count = self.outer_count
        dup.edge_slots = self.edge_slots
        dup.face_slots = self.face_slots
        dup._pair2slot = dict(self._pair2slot)
        dup._free_edges = list(self._free_edges)
        dup._free_faces = list(self._free_faces)
        return dup

    def counts(self) -> tuple[int, int, int]:
        """(n, m, f): vertices, live edges, bounded faces."""
        return self.n, self.m_alive, self.f_bounded

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Live edges as sorted normalized pairs (read from the alive flags,
        so it stays correct after compiled greedy passes)."""
        out = []
        for k in range(self.edge_slots):
            if self.edge_alive[k]:
                u = int(self.eu[k])
                v = int(self.ev[k])
                out.append((u, v) if u < v else (v, u))
        out.sort()
        return out

    def edge_set(self) -> EdgeSet:
        return EdgeSet(self.edge_pairs())

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._pair2slot

    def edge_slot(self, u: int, v: int) -> int:
        try:
            return self._pair2slot[(u, v) if u < v else (v, u)]
        except KeyError:
            raise UnknownEdge(f"no edge ({u}, {v})") from None

    def alive_edge_slots(self) -> list[int]:
        return [k for k in range(self.edge_slots) if self.edge_alive[k]]

    def face_ids(self) -> list[int]:
        return [f for f in range(self.face_slots) if self.face_alive[f]]

    def bounded_face_ids(self) -> list[int]:
        return [f for f in range(self.face_slots)
                if self.face_alive[f] and self.face_bounded[f]]

    def is_bounded(self, fid: int) -> bool:
        return bool(self.face_bounded[fid])

    def degree_of(self, v: int) -> int:
        return int(self.degree[v])

    def _orient(self, i: int, j: int, k: int) -> int:
        return orient_xy(int(self.px[i]), int(self.py[i]),
                         int(self.px[j]), int(self.py[j]),
                         int(self.px[k]), int(self.py[k]))

    def face_half_edges(self, fid: int) -> list[int]:
        out = []
        h0 = int(self.face_he[fid])
        h = h0
        limit = 2 * self.edge_slots + 1
        while True:
            out.append(h)
            h = int(self.nxt[h])
            if h == h0:
                return out
            if len(out) > limit:
                raise ConvexPartError("corrupt face cycle")

    def face_vertices(self, fid: int) -> list[int]:
        return [int(self.origin[h]) for h in self.face_half_edges(fid)]

    def face_of_edge(self, u: int, v: int) -> tuple[int, int]:
        """(face left of u->v, face right of u->v)."""
        k = self.edge_slot(u, v)
        h = 2 * k
        if int(self.eu[k]) != u:
            h ^= 1
        return int(self.face_of[h]), int(self.face_of[h ^ 1])

    def face_is_convex(self, fid: int) -> bool:
        """True iff every interior angle of the face walk is at most pi.

        Collinear (exactly-pi) vertices pass. This is a pure angle test; a
        non-simple walk that doubles back on itself can still pass it, which
        is why the verifier checks vertex distinctness separately.
        """
        verts = self.face_vertices(fid)
        k = len(verts)
        if k < 3:
            return False
        for i in range(k):
            if self._orient(verts[i - 1], verts[i], verts[(i + 1) % k]) == RIGHT:
                return False
        return True

    # ------------------------------------------------------- slot management

    def _reserve_edges(self, cap: int) -> None:
        if cap <= len(self.eu):
            return
        newlen = max(8, 2 * len(self.eu), cap)
        self.eu = _extend(self.eu, newlen)
        self.ev = _extend(self.ev, newlen)
        self.edge_alive = _extend(self.edge_alive, newlen)
        self.origin = _extend(self.origin, 2 * newlen)
        self.nxt = _extend(self.nxt, 2 * newlen)
        self.prv = _extend(self.prv, 2 * newlen)
        self.face_of = _extend(self.face_of, 2 * newlen)

    def _alloc_edge(self) -> int:
        if self._free_edges:
            return self._free_edges.pop()
        k = self.edge_slots
        self._reserve_edges(k + 1)
        self.edge_slots = k + 1
        return k

    def _alloc_face(self) -> int:
        if self._free_faces:
            return self._free_faces.pop()
        f = self.face_slots
        if f >= len(self.face_he):
            newlen = max(8, 2 * len(self.face_he), f + 1)
            self.face_he = _extend(self.face_he, newlen)
            self.face_alive = _extend(self.face_alive, newlen)
            self.face_bounded = _extend(self.face_bounded, newlen)
        self.face_slots = f + 1
        return f

    def rebuild_free_lists(self) -> None:
        """Re-scan alive flags into the free lists and the pair lookup.

        The greedy kernel retires slots by flag only; call this before
        resuming Python-side mutations (insert/remove/flip) so freed slots
        recycle and the pair-to-slot map forgets dead edges.
        """
        self._free_edges = [k for k in range(self.edge_slots)
                            if not self.edge_alive[k]]
        self._free_faces = [f for f in range(self.face_slots)
                            if not self.face_alive[f]]
        self._pair2slot = {}
        for k in range(self.edge_slots):
            if self.edge_alive[k]:
                u = int(self.eu[k])
                v = int(self.ev[k])
                self._pair2slot[(u, v) if u < v else (v, u)] = k

    # ------------------------------------------------------------- rotations

    def rot_next(self, g: int) -> int:
        """Next outgoing half-edge counterclockwise around origin(g)."""
        return int(self.prv[g]) ^ 1

    def rot_prev(self, g: int) -> int:
        return int(self.nxt[g ^ 1])

    def outgoing_half_edges(self, v: int) -> list[int]:
        g0 = int(self.vertex_he[v])
        if g0 < 0:
            return []
        out = [g0]
        g = self.rot_next(g0)
        while g != g0:
            out.append(g)
            g = self.rot_next(g)
        return out

    def _wedge_half_edge(self, u: int, dx: int, dy: int) -> int:
        """Outgoing half-edge g at u whose face wedge strictly contains
        direction (dx, dy). Raises PointOnEdge if the direction aligns with
        an existing edge at u."""
        ux = int(self.px[u])
        uy = int(self.py[u])
        g0 = int(self.vertex_he[u])
        if g0 < 0:
            raise UnknownEdge(f"vertex {u} has no incident edge")
        g = g0
        limit = int(self.degree[u]) + 1
        for _ in range(limit):
            w = int(self.origin[g ^ 1])
            gdx = int(self.px[w]) - ux
            gdy = int(self.py[w]) - uy
            ca = gdx * dy - gdy * dx
            if ca == 0 and gdx * dx + gdy * dy > 0:
                raise PointOnEdge(
                    f"direction from vertex {u} aligns with edge toward {w}")
            gn = self.rot_next(g)
            if gn == g:
                return g
            w2 = int(self.origin[gn ^ 1])
            ndx = int(self.px[w2]) - ux
            ndy = int(self.py[w2]) - uy
            cb = dx * ndy - dy * ndx
            if cb == 0 and dx * ndx + dy * ndy > 0:
                raise PointOnEdge(
                    f"direction from vertex {u} aligns with edge toward {w2}")
            cab = gdx * ndy - gdy * ndx
            if cab > 0:
                inside = ca > 0 and cb > 0
            elif cab < 0:
                inside = ca > 0 or cb > 0
            else:
                inside = ca > 0 if gdx * ndx + gdy * ndy < 0 else True
            if inside:
                return g
            g = gn
        raise ConvexPartError(f"no wedge at vertex {u} contains the direction")

    # ------------------------------------------------------------- mutations

    def insert_edge(self, u: int, v: int) -> int:
        """Split the face both endpoints lie on with the chord u-v.

        The caller guarantees the open segment runs through that face's
        interior (true for diagonals produced by the triangulators). Both
        endpoints must already have incident edges. Returns the edge slot.
        """
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            raise BadIndex(f"bad edge ({u}, {v})")
        pair = (u, v) if u < v else (v, u)
        if pair in self._pair2slot:
            raise DuplicateEdge(f"edge ({u}, {v}) already present")
        dx = int(self.px[v]) - int(self.px[u])
        dy = int(self.py[v]) - int(self.py[u])
        gu = self._wedge_half_edge(u, dx, dy)
        gv = self._wedge_half_edge(v, -dx, -dy)
        fid = int(self.face_of[gu])
        if int(self.face_of[gv]) != fid:
            raise ConvexPartError(
                f"insert_edge({u}, {v}): endpoints do not share a face")
        k = self._alloc_edge()
        self.eu[k] = u
        self.ev[k] = v
        self.edge_alive[k] = 1
        h1 = 2 * k
        h2 = h1 + 1
        self.origin[h1] = u
        self.origin[h2] = v
        pea = int(self.prv[gu])
        peb = int(self.prv[gv])
        self.nxt[h1] = gv
        self.prv[gv] = h1
        self.prv[h1] = pea
        self.nxt[pea] = h1
        self.nxt[h2] = gu
        self.prv[gu] = h2
        self.prv[h2] = peb
        self.nxt[peb] = h2
        new_fid = self._alloc_face()
        g = h1
        while True:
            self.face_of[g] = new_fid
            g = int(self.nxt[g])
            if g == h1:
                break
        self.face_of[h2] = fid
        self.face_he[new_fid] = h1
        self.face_he[fid] = h2
        self.face_alive[new_fid] = 1
        bounded = bool(self.face_bounded[fid])
        self.face_bounded[new_fid] = 1 if bounded else 0
        self.degree[u] += 1
        self.degree[v] += 1
        self._pair2slot[pair] = k
        self.m_alive += 1
        if bounded:
            self.f_bounded += 1
        else:
            self.outer_count += 1
        return k

    def merge_preview(self, u: int, v: int) -> MergePreview:
        """Would removing edge u-v leave a valid convex partition face?

        Removable iff the edge separates two distinct bounded faces and the
        merged face is convex at both junctions. A junction whose surviving
        neighbours coincide (the removal would leave a spike with a full
        angle) is reported as ReflexMerge.
        """
        k = self.edge_slot(u, v)
        h = 2 * k
        t = h + 1
        fh = int(self.face_of[h])
        ft = int(self.face_of[t])
        if fh == ft:
            return MergePreview(False, REASON_SAME_FACE)
        if not (self.face_bounded[fh] and self.face_bounded[ft]):
            return MergePreview(False, REASON_OUTER)
        for h_side, t_side in ((h, t), (t, h)):
            apex = int(self.origin[t_side])
            a = int(self.origin[int(self.prv[t_side])])
            b = int(self.origin[int(self.nxt[h_side]) ^ 1])
            if a == b or self._orient(a, apex, b) == RIGHT:
                return MergePreview(False, REASON_REFLEX)
        return MergePreview(True, None)

    def _remove_edge_raw(self, k: int) -> None:
        # Topological removal: splice out both half-edges and merge the two
        # incident faces (which must be distinct and bounded). No convexity
        # checks -- merge_preview/remove_edge own those.
        h = 2 * k
        t = h + 1
        fh = int(self.face_of[h])
        ft = int(self.face_of[t])
        if fh == ft:
            raise NotRemovable("edge borders a single face")
        u = int(self.origin[h])
        v = int(self.origin[t])
        ph = int(self.prv[h])
        nh = int(self.nxt[h])
        pt = int(self.prv[t])
        nt = int(self.nxt[t])
        self.nxt[ph] = nt
        self.prv[nt] = ph
        self.nxt[pt] = nh
        self.prv[nh] = pt
        g = nt
        while True:
            self.face_of[g] = fh
            if g == pt:
                break
            g = int(self.nxt[g])
        if self.face_bounded[ft]:
            self.f_bounded -= 1
        else:
            self.outer_count -= 1
        self.face_alive[ft] = 0
        self._free_faces.append(ft)
        self.face_he[fh] = nh
        self.edge_alive[k] = 0
        self._free_edges.append(k)
        del self._pair2slot[(u, v) if u < v else (v, u)]
        self.degree[u] -= 1
        self.degree[v] -= 1
        if self.vertex_he[u] == h:
            self.vertex_he[u] = nt if self.degree[u] > 0 else -1
        if self.vertex_he[v] == t:
            self.vertex_he[v] = nh if self.degree[v] > 0 else -1
        self.m_alive -= 1

    def remove_edge(self, u: int, v: int) -> None:
        """Remove edge u-v, merging its two faces. Raises NotRemovable unless
        merge_preview says Removable."""
        preview = self.merge_preview(u, v)
        if not preview.removable:
            raise NotRemovable(
                f"edge ({u}, {v}) is not removable: {preview.reason}")
        self._remove_edge_raw(self.edge_slot(u, v))


def build_subdivision(points, edges, *, validate: bool = True) -> Subdivision:
    """Construct the half-edge structure for an edge set over ``points``.

    ``points`` is an Instance or a list of Points; ``edges`` an EdgeSet or
    iterable of index pairs. Index errors (BadIndex), repeated pairs
    (DuplicateEdge) and -- unless ``validate=False`` -- covered points
    (PointOnEdge) and proper crossings (CrossingEdges) raise. Callers that
    already ran the planarity scans (the verifier, the solvers) skip them.
    """
    pts = getattr(points, "points", points)
    sub = Subdivision(list(pts))
    n = sub.n
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    for (u, v) in edges:
        u = int(u)
        v = int(v)
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise BadIndex(f"bad edge ({u}, {v}) for {n} points")
        pair = (u, v) if u < v else (v, u)
        if pair in seen:
            raise DuplicateEdge(f"duplicate edge {pair}")
        seen.add(pair)
        pairs.append(pair)
    pairs.sort()
    m = len(pairs)
    eu = np.array([p[0] for p in pairs], dtype=np.int64)
    ev = np.array([p[1] for p in pairs], dtype=np.int64)
    if validate and m:
        hits = kernels.find_points_on_edges(sub.px, sub.py, eu, ev)
        if hits:
            hits = sorted(hits)
            i, k = hits[0]
            raise PointOnEdge(
                f"point {i} lies inside edge {pairs[k]}"
                + (f" (+{len(hits) - 1} more)" if len(hits) > 1 else ""),
                hits=hits)
        crossings = kernels.find_crossings(sub.px, sub.py, eu, ev)
        if crossings:
            crossings = sorted(crossings)
            a, b = crossings[0]
            raise CrossingEdges(
                f"edges {pairs[a]} and {pairs[b]} cross"
                + (f" (+{len(crossings) - 1} more)" if len(crossings) > 1 else ""),
                pairs=crossings)

    if m:
        sub._reserve_edges(m)
        sub.eu[:m] = eu
        sub.ev[:m] = ev
        sub.edge_alive[:m] = 1
        sub.edge_slots = m
        nxt, prv = kernels.sort_rotations(sub.px, sub.py, eu, ev)
        sub.nxt[:2 * m] = nxt
        sub.prv[:2 * m] = prv
        for k in range(m):
            sub.origin[2 * k] = eu[k]
            sub.origin[2 * k + 1] = ev[k]
            sub.degree[eu[k]] += 1
            sub.degree[ev[k]] += 1
        for k in range(m - 1, -1, -1):
            sub.vertex_he[eu[k]] = 2 * k
            sub.vertex_he[ev[k]] = 2 * k + 1
        sub._pair2slot = {pair: k for k, pair in enumerate(pairs)}
        sub.m_alive = m
        _extract_faces(sub)
    return sub


def _extract_faces(sub: Subdivision) -> None:
    H = 2 * sub.edge_slots
    sub.face_of[:H] = -1
    px = sub.px
    py = sub.py
    for h0 in range(H):
        if sub.face_of[h0] != -1:
            continue
        fid = sub._alloc_face()
        area2 = 0
        h = h0
        while True:
            sub.face_of[h] = fid
            nh = int(sub.nxt[h])
            a = int(sub.origin[h])
            b = int(sub.origin[nh])
            area2 += int(px[a]) * int(py[b]) - int(px[b]) * int(py[a])
            h = nh
            if h == h0:
                break
        sub.face_he[fid] = h0
        sub.face_alive[fid] = 1
        if area2 > 0:
            sub.face_bounded[fid] = 1
            sub.f_bounded += 1
        else:
            sub.face_bounded[fid] = 0
            sub.outer_count += 1
