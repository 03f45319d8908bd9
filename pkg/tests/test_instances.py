"""Generators, serialization, and density-map parsing."""
from __future__ import annotations

import json

import pytest

import convexpart as cp
from convexpart import DensityMap
from convexpart.errors import (EmptyMap, ParseError, SchemaError, TooDense)
from convexpart.instances import (COORD_LIMIT, load_density_map, load_instance,
                                  load_solution, save_instance, save_solution)

from conftest import make_instance


# --- generators --------------------------------------------------------------

def test_gen_uniform_reproducible_and_in_range():
    a = cp.gen_uniform(50, 1000, 42)
    b = cp.gen_uniform(50, 1000, 42)
    assert [(p.x, p.y) for p in a.points] == [(p.x, p.y) for p in b.points]
    assert a.n == 50 and a.family == "uniform"
    assert all(0 <= p.x <= 1000 and 0 <= p.y <= 1000 for p in a.points)
    c = cp.gen_uniform(50, 1000, 43)
    assert [(p.x, p.y) for p in a.points] != [(p.x, p.y) for p in c.points]
    a.validate()


def test_gen_uniform_too_dense():
    with pytest.raises(TooDense):
        cp.gen_uniform(10, 2, 0)
    cp.gen_uniform(9, 2, 0)  # exactly fits the (bound+1)^2 lattice


def test_gen_ortho_collinear_sits_on_grid_lines():
    inst = cp.gen_ortho_collinear(200, 20, 5000, 3)
    xs = {p.x for p in inst.points}
    ys = {p.y for p in inst.points}
    assert len(xs) <= 20 and len(ys) <= 20
    assert inst.family == "ortho-collinear"
    inst.validate()
    with pytest.raises(TooDense):
        cp.gen_ortho_collinear(10, 50, 30, 0)  # more lines than coordinates
    with pytest.raises(TooDense):
        cp.gen_ortho_collinear(200, 10, 5000, 0)  # 10x10 grid < 200 points


def test_gen_density_follows_weights():
    dmap = DensityMap(2, 1, [0, 9])
    inst = cp.gen_density(60, dmap, scale=100, seed=5)
    assert inst.family == "illumination"
    # the zero-weight left cell must stay empty
    assert all(p.x >= 100 for p in inst.points)
    inst.validate()


def test_gen_density_rejects_unknown_family():
    dmap = DensityMap(2, 2, [1, 1, 1, 1])
    with pytest.raises(ValueError):
        cp.gen_density(10, dmap, scale=50, seed=0, family="uniform")


def test_gen_density_capacity():
    dmap = DensityMap(2, 2, [1, 0, 0, 0])
    with pytest.raises(TooDense):
        cp.gen_density(10, dmap, scale=3, seed=0)  # one 3x3 cell, 10 points


def test_density_map_validation_and_gradient():
    with pytest.raises(SchemaError):
        DensityMap(2, 2, [1, 2, 3])
    with pytest.raises(SchemaError):
        DensityMap(0, 2, [])
    with pytest.raises(SchemaError):
        DensityMap(2, 1, [1, -2])
    with pytest.raises(EmptyMap):
        DensityMap(2, 1, [0, 0])
    g = DensityMap(3, 1, [0, 10, 0]).gradient()
    assert g.cells == [10, 10, 10]


def test_generated_instances_triangulate(tmp_path):
    dmap = DensityMap(3, 3, [0, 5, 0, 5, 20, 5, 0, 5, 0])
    insts = [
        cp.gen_uniform(30, 500, 1),
        cp.gen_ortho_collinear(30, 8, 500, 1),
        cp.gen_density(30, dmap, scale=40, seed=1),
        cp.gen_density(30, dmap.gradient(), scale=40, seed=1, family="edge"),
    ]
    for inst in insts:
        rep = cp.verify(inst, cp.triangulate(inst))
        assert rep.feasible, inst.family


# --- instance and solution files ---------------------------------------------

def test_instance_file_round_trip(tmp_path, square_center):
    path = tmp_path / "sc.instance.json"
    save_instance(square_center, path)
    text = path.read_text()
    doc = json.loads(text)
    assert list(doc) == sorted(doc)  # canonical key order
    assert text.endswith("\n")
    back = load_instance(path)
    assert back.name == square_center.name
    assert [(p.x, p.y) for p in back.points] == \
        [(p.x, p.y) for p in square_center.points]
    # byte-for-byte stable across a save/load/save cycle
    path2 = tmp_path / "again.instance.json"
    save_instance(back, path2)
    assert path2.read_bytes() == path.read_bytes()


def test_load_instance_schema_errors(tmp_path):
    bad = [
        {},
        {"family": "uniform", "name": "x", "points": "nope"},
        {"family": "bogus", "name": "x",
         "points": [{"i": 0, "x": 0, "y": 0}]},
        {"family": "uniform", "name": "x",
         "points": [{"i": 0, "x": True, "y": 0}]},
        {"family": "uniform", "name": "x",
         "points": [{"i": 1, "x": 0, "y": 0}]},
    ]
    for k, doc in enumerate(bad):
        p = tmp_path / f"bad{k}.json"
        p.write_text(json.dumps(doc))
        with pytest.raises(SchemaError):
            load_instance(p)


def test_instance_validate_rejects_duplicates_and_range():
    with pytest.raises(SchemaError, match="DuplicatePoint"):
        make_instance("d", [(0, 0), (1, 1), (0, 0)]).validate()
    with pytest.raises(SchemaError, match="range"):
        make_instance("r", [(0, 0), (1, 1), (COORD_LIMIT, 2)]).validate()
    with pytest.raises(SchemaError, match="collinear"):
        make_instance("c", [(0, 0), (1, 1), (2, 2)]).validate()


def test_solution_round_trip(tmp_path, square_center):
    edges = cp.greedy_reduce(square_center, cp.triangulate(square_center))
    path = tmp_path / "sc.solution.json"
    save_solution(square_center.name, edges, path)
    name, back = load_solution(path, square_center)
    assert name == square_center.name
    assert back.canonical() == edges.canonical()
    # canonical form: each edge i < j, list sorted
    doc = json.loads(path.read_text())
    recorded = [(e["i"], e["j"]) for e in doc["edges"]]
    assert recorded == sorted(recorded) and all(i < j for i, j in recorded)


def test_load_solution_range_check(tmp_path, square):
    path = tmp_path / "s.solution.json"
    path.write_text(json.dumps(
        {"instance_name": "square",
         "edges": [{"i": 0, "j": 99}]}))
    with pytest.raises(SchemaError):
        load_solution(path, square)
    name, edges = load_solution(path)  # no instance, no range check
    assert name == "square" and list(edges) == [(0, 99)]


# --- density map files --------------------------------------------------------

def test_pgm_p2_and_p5_agree(tmp_path):
    cells = [0, 3, 7, 1, 255, 42]
    p2 = tmp_path / "m.pgm"
    p2.write_text("P2\n# a comment\n3 2\n255\n" +
                  " ".join(str(v) for v in cells) + "\n")
    p5 = tmp_path / "m5.pgm"
    p5.write_bytes(b"P5\n3 2\n255\n" + bytes(cells))
    a, b = load_density_map(p2), load_density_map(p5)
    assert (a.width, a.height, a.cells) == (3, 2, cells)
    assert (b.width, b.height, b.cells) == (3, 2, cells)


def test_pgm_two_byte_samples(tmp_path):
    vals = [0, 1000, 65535, 7]
    raw = b"".join(v.to_bytes(2, "big") for v in vals)
    p = tmp_path / "wide.pgm"
    p.write_bytes(b"P5\n2 2\n65535\n" + raw)
    m = load_density_map(p)
    assert m.cells == vals


def test_pgm_parse_errors(tmp_path):
    cases = [
        b"P3\n1 1\n255\n0\n",           # wrong magic
        b"P2\n2 2\n255\n1 2 3\n",       # not enough samples
        b"P2\n1 1\n0\n0\n",             # maxval out of range
        b"P2\n1 1\n255\n300\n",         # sample exceeds maxval
    ]
    for k, blob in enumerate(cases):
        p = tmp_path / f"bad{k}.pgm"
        p.write_bytes(blob)
        with pytest.raises((ParseError, SchemaError)):
            load_density_map(p)


def test_density_map_json_grid(tmp_path):
    p = tmp_path / "grid.json"
    p.write_text(json.dumps({"width": 2, "height": 2,
                             "cells": [1, 2, 3, 4]}))
    m = load_density_map(p)
    assert (m.width, m.height, m.cells) == (2, 2, [1, 2, 3, 4])
