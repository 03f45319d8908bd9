"""Kernel selection: compiled extension when available, pure Python otherwise.

The compiled module (``convexpart._kernels``, built from Cython) and the pure
fallback (``convexpart._kernels_py``) implement the same six functions with
bit-identical results; only speed differs. Set ``CONVEXPART_PURE_PYTHON=1``
to force the fallback, e.g. for benchmarking or debugging.
"""

from __future__ import annotations

import os

if os.environ.get("CONVEXPART_PURE_PYTHON") == "1":
    from convexpart import _kernels_py as _impl
else:
    try:
        from convexpart import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from convexpart import _kernels_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION

orient = _impl.orient
segments_cross = _impl.segments_cross
find_crossings = _impl.find_crossings
find_points_on_edges = _impl.find_points_on_edges
sort_rotations = _impl.sort_rotations
greedy_pass = _impl.greedy_pass
