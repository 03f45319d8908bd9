"""Half-edge subdivision structure: walks, rotations, edits, previews."""
from __future__ import annotations

import functools

import numpy as np
import pytest

import convexpart as cp
from convexpart import kernels
from convexpart.errors import DuplicateEdge, NotRemovable, UnknownEdge
from convexpart.subdivision import (REASON_OUTER, REASON_REFLEX,
                                    REASON_SAME_FACE, build_subdivision)
from convexpart.triangulation import flip_edge, retriangulate_all

import oracles


def _sub(inst):
    return build_subdivision(inst.points, cp.triangulate(inst))


def test_counts_and_euler(square_center):
    sub = _sub(square_center)
    n, m, f = sub.counts()
    assert (n, m, f) == (5, 8, 4)
    # Euler with the single unbounded face: n - m + (f + 1) == 2
    assert n - m + f + 1 == 2


def test_edge_pairs_sorted_normalized(square):
    sub = _sub(square)
    pairs = sub.edge_pairs()
    assert pairs == sorted(pairs)
    assert all(u < v for u, v in pairs)
    assert len(pairs) == 5


def test_rotation_order_is_ccw(grid3):
    sub = _sub(grid3)
    for v in range(grid3.n):
        outs = sub.outgoing_half_edges(v)
        nbrs = [int(sub.origin[g ^ 1]) for g in outs]
        assert len(nbrs) == sub.degree_of(v)
        dirs = [(int(sub.px[w]) - int(sub.px[v]),
                 int(sub.py[w]) - int(sub.py[v])) for w in nbrs]
        want = sorted(dirs, key=functools.cmp_to_key(oracles._angle_cmp))
        # same cyclic order; rotate to align the starting direction
        k = want.index(dirs[0])
        assert dirs == want[k:] + want[:k]


def test_face_walks_partition_half_edges(square_center):
    sub = _sub(square_center)
    seen = []
    for fid in sub.face_ids():
        seen.extend(sub.face_half_edges(fid))
    assert sorted(seen) == [h for k in range(sub.edge_slots)
                            if sub.edge_alive[k] for h in (2 * k, 2 * k + 1)]


def test_insert_remove_round_trip(square):
    sub = _sub(square)
    before = sub.edge_pairs()
    diag = next(p for p in before if p in [(0, 2), (1, 3)])
    sub.remove_edge(*diag)
    assert sub.counts() == (4, 4, 1)
    assert diag not in sub.edge_pairs()
    sub.insert_edge(*diag)
    assert sub.edge_pairs() == before
    assert sub.counts() == (4, 5, 2)


def test_insert_duplicate_raises(square):
    sub = _sub(square)
    with pytest.raises(DuplicateEdge):
        sub.insert_edge(0, 1)


def test_unknown_edge_raises(square):
    sub = _sub(square)
    with pytest.raises(UnknownEdge):
        sub.edge_slot(0, 2) if sub.has_edge(1, 3) else sub.edge_slot(1, 3)


def test_merge_preview_reasons(square_center):
    sub = _sub(square_center)
    # hull edges border the outer face
    pv = sub.merge_preview(0, 1)
    assert not pv.removable and pv.reason == REASON_OUTER
    # spokes around the dead-center point merge into straight junctions
    assert sub.merge_preview(0, 4).removable
    sub.remove_edge(0, 4)
    sub.remove_edge(2, 4)
    # the two spokes left lie on one line through the center; dropping either
    # would fold the merged walk back on itself at the center point
    for spoke in ((1, 4), (3, 4)):
        pv2 = sub.merge_preview(*spoke)
        assert not pv2.removable and pv2.reason == REASON_REFLEX


def test_merge_preview_same_face(square):
    sub = _sub(square)
    diag = (0, 2) if sub.has_edge(0, 2) else (1, 3)
    other = (1, 3) if diag == (0, 2) else (0, 2)
    sub.remove_edge(*diag)
    sub.insert_edge(*other)
    # removing the inserted diagonal again is fine; but a hull edge of the
    # quad now separates a bounded face from the outer one
    assert sub.merge_preview(*other).removable
    sub.remove_edge(*other)
    # quad face: all remaining edges border the outer face
    for (u, v) in sub.edge_pairs():
        assert sub.merge_preview(u, v).reason == REASON_OUTER


def test_remove_edge_not_removable_raises(square):
    sub = _sub(square)
    with pytest.raises(NotRemovable):
        sub.remove_edge(0, 1)


def test_flip_edge_swaps_diagonal(square):
    sub = _sub(square)
    diag = (0, 2) if sub.has_edge(0, 2) else (1, 3)
    other = (1, 3) if diag == (0, 2) else (0, 2)
    assert flip_edge(sub, *diag) == other
    assert sub.has_edge(*other) and not sub.has_edge(*diag)
    # hull edges cannot flip
    assert flip_edge(sub, 0, 1) is None


def test_flip_edge_rejects_nonconvex_quad(triangle_interior):
    sub = _sub(triangle_interior)
    # (0,0)-(4,0) hull edge and inner spokes: quad around any spoke through
    # the interior point (1,1) is non-convex, so no flip applies
    flips = [flip_edge(sub, u, v) for (u, v) in sub.edge_pairs()]
    assert flips == [None] * len(flips)


def test_kernel_pass_then_rebuild_free_lists(grid3):
    sub = _sub(grid3)
    order = np.asarray(sub.alive_edge_slots(), dtype=np.int64)
    removed = kernels.greedy_pass(
        sub.px, sub.py, sub.origin, sub.nxt, sub.prv, sub.face_of,
        sub.face_alive, sub.face_bounded, sub.face_he, sub.edge_alive,
        sub.degree, sub.vertex_he, order)
    assert removed > 0
    sub.m_alive -= removed
    sub.f_bounded -= removed
    pairs_after = sub.edge_pairs()
    assert len(pairs_after) == sub.m_alive
    sub.rebuild_free_lists()
    # the pair map must forget retired edges so slots recycle cleanly
    back = retriangulate_all(sub)
    assert back == removed
    rep = cp.verify(grid3, cp.EdgeSet(sub.edge_pairs()))
    assert rep.feasible and rep.m == 3 * (rep.n - 1) - rep.c


def test_copy_is_independent(square_center):
    sub = _sub(square_center)
    dup = sub.copy()
    dup.remove_edge(0, 4)
    assert sub.has_edge(0, 4) and not dup.has_edge(0, 4)
    assert sub.counts() != dup.counts()


def test_face_is_convex_and_vertices(collinear_pentagon):
    sub = build_subdivision(
        collinear_pentagon.points,
        cp.EdgeSet([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]))
    bounded = sub.bounded_face_ids()
    assert len(bounded) == 1
    fid = bounded[0]
    assert sub.face_is_convex(fid)
    assert sorted(sub.face_vertices(fid)) == [0, 1, 2, 3, 4]


def test_build_validate_rejects_crossing():
    pts = [cp.Point(0, 0, 0), cp.Point(1, 4, 0),
           cp.Point(2, 4, 4), cp.Point(3, 0, 4)]
    edges = cp.EdgeSet([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
    with pytest.raises(cp.ConvexPartError):
        build_subdivision(pts, edges)
