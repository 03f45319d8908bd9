"""Instance generation and file I/O.

Four generated families (a fifth tag, ``external``, marks imported files):

* ``uniform``        -- points uniform on an integer square
* ``edge``           -- density sampling from a gradient-magnitude map
* ``illumination``   -- density sampling from a brightness map
* ``ortho-collinear``-- points on random grid-line intersections, giving many
                        axis-parallel collinear runs

Instances and solutions are JSON documents with sorted keys, two-space
indentation, UTF-8, newline-terminated, so identical data always produces
identical bytes. Density maps come from portable graymaps (P2 ASCII or P5
binary) or an inline ``{"width", "height", "cells"}`` JSON grid.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from convexpart.errors import (
    EmptyMap,
    ParseError,
    SchemaError,
    TooDense,
)
from convexpart.geometry import Point, all_collinear
from convexpart.rng import SplitMix64
from convexpart.subdivision import EdgeSet

FAMILIES = ("uniform", "edge", "illumination", "ortho-collinear", "external")

COORD_LIMIT = 2 ** 31  # exclusive bound on |x|, |y|


@dataclass
class Instance:
    name: str
    family: str
    points: list[Point] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.points)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        px = np.array([p.x for p in self.points], dtype=np.int64)
        py = np.array([p.y for p in self.points], dtype=np.int64)
        return px, py

    def validate(self) -> "Instance":
        if not self.name or not isinstance(self.name, str):
            raise SchemaError("instance name must be a non-empty string")
        if self.family not in FAMILIES:
            raise SchemaError(f"unknown family {self.family!r}")
        n = len(self.points)
        if n < 3:
            raise SchemaError(f"instance needs at least 3 points, got {n}")
        coords = set()
        for pos, p in enumerate(self.points):
            if p.index != pos:
                raise SchemaError(
                    f"point at position {pos} carries index {p.index}")
            if not (-COORD_LIMIT < p.x < COORD_LIMIT
                    and -COORD_LIMIT < p.y < COORD_LIMIT):
                raise SchemaError(f"coordinate out of range at point {pos}")
            if (p.x, p.y) in coords:
                raise SchemaError(
                    f"DuplicatePoint: ({p.x}, {p.y}) appears twice")
            coords.add((p.x, p.y))
        if all_collinear(self.points):
            raise SchemaError("all points are collinear")
        return self


@dataclass
class DensityMap:
    """A width x height grid of non-negative sampling weights.

    ``cells`` is row-major in image order (row 0 at the top); the generator
    flips rows so the image's top ends up at high y.
    """

    width: int
    height: int
    cells: list[int]

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise SchemaError("density map dimensions must be positive")
        if len(self.cells) != self.width * self.height:
            raise SchemaError(
                f"expected {self.width * self.height} cells, got {len(self.cells)}")
        if any(w < 0 for w in self.cells):
            raise SchemaError("density weights must be non-negative")
        if not any(self.cells):
            raise EmptyMap("density map has no positive weight")

    def gradient(self) -> "DensityMap":
        """Rate-of-change map: each cell's weight becomes the maximum absolute
        difference to its 4-neighbours. The usual way to turn a brightness
        image into an 'edge' sampling map."""
        w, h, c = self.width, self.height, self.cells
        out = [0] * (w * h)
        for y in range(h):
            for x in range(w):
                here = c[y * w + x]
                best = 0
                if x > 0:
                    best = max(best, abs(here - c[y * w + x - 1]))
                if x + 1 < w:
                    best = max(best, abs(here - c[y * w + x + 1]))
                if y > 0:
                    best = max(best, abs(here - c[(y - 1) * w + x]))
                if y + 1 < h:
                    best = max(best, abs(here - c[(y + 1) * w + x]))
                out[y * w + x] = best
        return DensityMap(w, h, out)


# --------------------------------------------------------------- generators


def _finish_points(points: list[tuple[int, int]], draw, name: str,
                   family: str) -> Instance:
    # Redraw the most recent point while the set is fully collinear, so even
    # tiny unlucky draws satisfy the instance invariants. `draw` must return
    # a coordinate pair not currently in `points`.
    used = set(points)
    pts = [Point(i, x, y) for i, (x, y) in enumerate(points)]
    guard = 10000
    while all_collinear(pts) and guard:
        guard -= 1
        old = points[-1]
        x, y = draw(used)
        used.discard(old)
        used.add((x, y))
        points[-1] = (x, y)
        pts[-1] = Point(len(points) - 1, x, y)
    inst = Instance(name=name, family=family, points=pts)
    return inst.validate()


def gen_uniform(n: int, bound: int, seed: int, name: str | None = None) -> Instance:
    """n distinct points uniform on {0..bound}^2; deterministic in (n, bound, seed)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if bound < 1:
        raise ValueError("bound must be positive")
    if (bound + 1) ** 2 < n:
        raise TooDense(
            f"{n} distinct points do not fit in a {bound + 1}x{bound + 1} lattice")
    rng = SplitMix64(seed)

    def draw(used):
        while True:
            x = rng.below(bound + 1)
            y = rng.below(bound + 1)
            if (x, y) not in used:
                return x, y

    points: list[tuple[int, int]] = []
    used: set[tuple[int, int]] = set()
    for _ in range(n):
        p = draw(used)
        used.add(p)
        points.append(p)
    return _finish_points(points, draw,
                          name or f"uniform-n{n}-s{seed}", "uniform")


def gen_density(n: int, dmap: DensityMap, scale: int, seed: int,
                family: str = "illumination",
                name: str | None = None) -> Instance:
    """n distinct points sampled cell-proportionally from a density map.

    Each draw picks a cell with probability proportional to its weight, then
    a uniform lattice point inside the cell's scale x scale extent. Supply a
    brightness map for the ``illumination`` family or its ``gradient()`` for
    the ``edge`` family.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if scale < 1:
        raise ValueError("scale must be positive")
    if family not in ("edge", "illumination"):
        raise ValueError(f"gen_density makes 'edge' or 'illumination', not {family!r}")
    positive = sum(1 for w in dmap.cells if w > 0)
    if positive * scale * scale < n:
        raise TooDense(
            f"{n} points exceed the {positive} positive cells x {scale}^2 capacity")
    cum: list[int] = []
    total = 0
    for w in dmap.cells:
        total += w
        cum.append(total)
    rng = SplitMix64(seed)
    w, h = dmap.width, dmap.height

    def draw(used):
        while True:
            cell = bisect_right(cum, rng.below(total))
            cy, cx = divmod(cell, w)
            x = cx * scale + rng.below(scale)
            y = (h - 1 - cy) * scale + rng.below(scale)
            if (x, y) not in used:
                return x, y

    points: list[tuple[int, int]] = []
    used: set[tuple[int, int]] = set()
    for _ in range(n):
        p = draw(used)
        used.add(p)
        points.append(p)
    return _finish_points(points, draw,
                          name or f"{family}-n{n}-s{seed}", family)


def gen_ortho_collinear(n: int, grid_lines: int, bound: int, seed: int,
                        name: str | None = None) -> Instance:
    """n distinct points on intersections of grid_lines x grid_lines random
    axis-parallel lines; rich in collinear runs once n > 2*grid_lines."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if grid_lines < 2:
        raise ValueError("need at least 2 grid lines per axis")
    if bound < 1:
        raise ValueError("bound must be positive")
    if grid_lines > bound + 1 or grid_lines * grid_lines < n:
        raise TooDense(
            f"{n} points do not fit on a {grid_lines}x{grid_lines} grid in [0, {bound}]")
    rng = SplitMix64(seed)

    def pick_lines():
        vals: set[int] = set()
        while len(vals) < grid_lines:
            vals.add(rng.below(bound + 1))
        return sorted(vals)

    xs = pick_lines()
    ys = pick_lines()

    def draw(used):
        while True:
            x = xs[rng.below(grid_lines)]
            y = ys[rng.below(grid_lines)]
            if (x, y) not in used:
                return x, y

    points: list[tuple[int, int]] = []
    used: set[tuple[int, int]] = set()
    for _ in range(n):
        p = draw(used)
        used.add(p)
        points.append(p)
    return _finish_points(points, draw,
                          name or f"ortho-n{n}-g{grid_lines}-s{seed}",
                          "ortho-collinear")


# ------------------------------------------------------------------ file IO


def _canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_instance(instance: Instance, path) -> None:
    instance.validate()
    doc = {
        "family": instance.family,
        "name": instance.name,
        "points": [{"i": p.index, "x": p.x, "y": p.y} for p in instance.points],
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_canonical_json(doc))


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 text ({exc.reason})") from None


def _require(doc, key, types, where):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    val = doc[key]
    if not isinstance(val, types) or isinstance(val, bool):
        raise SchemaError(f"{where}: field {key!r} has the wrong type")
    return val


def load_instance(path) -> Instance:
    doc = _load_json(path)
    name = _require(doc, "name", str, path)
    family = _require(doc, "family", str, path)
    raw_points = _require(doc, "points", list, path)
    pts = []
    for pos, entry in enumerate(raw_points):
        where = f"{path}: points[{pos}]"
        i = _require(entry, "i", int, where)
        x = _require(entry, "x", int, where)
        y = _require(entry, "y", int, where)
        pts.append(Point(i, x, y))
    pts.sort(key=lambda p: p.index)
    inst = Instance(name=name, family=family, points=pts)
    inst.validate()
    return inst


def save_solution(instance_name: str, edges: EdgeSet, path) -> None:
    doc = {
        "edges": [{"i": u, "j": v} for (u, v) in edges.canonical()],
        "instance_name": instance_name,
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_canonical_json(doc))


def load_solution(path, instance: Instance | None = None) -> tuple[str, EdgeSet]:
    """Read a solution file; with ``instance`` given, indices are range-checked."""
    doc = _load_json(path)
    name = _require(doc, "instance_name", str, path)
    raw_edges = _require(doc, "edges", list, path)
    pairs = []
    for pos, entry in enumerate(raw_edges):
        where = f"{path}: edges[{pos}]"
        i = _require(entry, "i", int, where)
        j = _require(entry, "j", int, where)
        if i < 0 or j < 0:
            raise SchemaError(f"{where}: negative point index")
        if instance is not None and (i >= instance.n or j >= instance.n):
            raise SchemaError(
                f"{where}: index {max(i, j)} out of range for "
                f"{instance.n}-point instance")
        pairs.append((i, j))
    return name, EdgeSet(pairs)


# -------------------------------------------------------------- density IO


def _parse_pgm(data: bytes, where) -> DensityMap:
    binary = data.startswith(b"P5")
    if not binary and not data.startswith(b"P2"):
        raise ParseError(f"{where}: not a portable graymap (want P2 or P5)")
    pos = 0

    def next_token() -> bytes:
        nonlocal pos
        while pos < len(data):
            ch = data[pos]
            if ch in b" \t\r\n":
                pos += 1
            elif ch == ord("#"):
                while pos < len(data) and data[pos] not in b"\r\n":
                    pos += 1
            else:
                break
        start = pos
        while pos < len(data) and data[pos] not in b" \t\r\n#":
            pos += 1
        if start == pos:
            raise ParseError(f"{where}: truncated graymap")
        return data[start:pos]

    def next_int() -> int:
        tok = next_token()
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"{where}: bad integer {tok!r} in graymap") from None

    next_token()  # magic
    width = next_int()
    height = next_int()
    maxval = next_int()
    if width <= 0 or height <= 0 or not (0 < maxval < 65536):
        raise ParseError(f"{where}: bad graymap dimensions")
    count = width * height
    if binary:
        pos += 1  # exactly one whitespace byte after maxval
        bpp = 1 if maxval < 256 else 2
        raster = data[pos:pos + count * bpp]
        if len(raster) < count * bpp:
            raise ParseError(f"{where}: graymap raster shorter than header promises")
        if bpp == 1:
            cells = list(raster)
        else:
            cells = [int.from_bytes(raster[2 * i:2 * i + 2], "big")
                     for i in range(count)]
    else:
        cells = [next_int() for _ in range(count)]
    if any(v < 0 or v > maxval for v in cells):
        raise SchemaError(f"{where}: sample outside [0, {maxval}]")
    return DensityMap(width, height, cells)


def load_density_map(path) -> DensityMap:
    """Density map from a P2/P5 graymap or an inline JSON grid."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(b"P2") or data.startswith(b"P5"):
        return _parse_pgm(data, path)
    try:
        doc = json.loads(data.decode("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: neither graymap nor JSON grid ({exc})") from None
    width = _require(doc, "width", int, path)
    height = _require(doc, "height", int, path)
    cells = _require(doc, "cells", list, path)
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in cells):
        raise SchemaError(f"{path}: cells must be integers")
    return DensityMap(width, height, list(cells))
