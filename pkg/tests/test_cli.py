"""Command-line interface: exit codes, output formats, file handling."""
from __future__ import annotations

import json
import subprocess
import sys

import pytest

import convexpart as cp
from convexpart.cli import main
from convexpart.instances import (load_instance, load_solution, save_instance,
                                  save_solution)

from conftest import make_instance


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def square_file(tmp_path, square):
    p = tmp_path / "square.instance.json"
    save_instance(square, p)
    return p


def test_gen_solve_verify_score_round_trip(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(["gen", "--family", "uniform", "--n", "40",
                        "--bound", "200", "--seed", "7"], capsys)
    assert code == 0
    inst_path = next(tmp_path.glob("*.instance.json"))

    code, out, _ = run(["solve", str(inst_path), "--seed", "3",
                        "--time-limit", "10", "--restarts", "2"], capsys)
    assert code == 0
    sol_path = next(tmp_path.glob("*.solution.json"))
    assert "wrote" in out and " = 0." in out

    code, out, _ = run(["verify", str(inst_path), str(sol_path)], capsys)
    assert code == 0 and "feasible" in out

    code, out, _ = run(["score", str(inst_path), str(sol_path)], capsys)
    assert code == 0
    ratio, _, decimal = out.strip().partition(" = ")
    num, _, den = ratio.partition("/")
    assert int(num) >= 0 and int(den) > 0
    assert decimal.startswith("0.") and len(decimal.split(".")[1]) == 9


def test_gen_all_families(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    dmap_path = tmp_path / "blob.json"
    dmap_path.write_text(json.dumps(
        {"width": 2, "height": 2, "cells": [8, 1, 1, 0]}))
    for args in (
        ["gen", "--family", "uniform", "--n", "12", "--bound", "50",
         "--seed", "1"],
        ["gen", "--family", "ortho", "--n", "12", "--grid-lines", "5",
         "--bound", "50", "--seed", "1"],
        ["gen", "--family", "illumination", "--n", "12",
         "--density-map", str(dmap_path), "--scale", "20", "--seed", "1"],
        ["gen", "--family", "edge", "--n", "12",
         "--density-map", str(dmap_path), "--scale", "20", "--seed", "1"],
    ):
        assert run(args, capsys)[0] == 0
    made = list(tmp_path.glob("*.instance.json"))
    assert len(made) == 4
    for p in made:
        inst = cp.load_instance(p)
        inst.validate()


def test_exit_codes(tmp_path, capsys, square_file):
    # generation too dense -> 3
    code, _, err = run(["gen", "--family", "uniform", "--n", "100",
                        "--bound", "3", "--seed", "0",
                        "--out", str(tmp_path / "x.json")], capsys)
    assert code == 3
    # missing file -> 2
    assert run(["solve", str(tmp_path / "nope.json")], capsys)[0] == 2
    # malformed file -> 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["score", str(square_file), str(bad)], capsys)[0] == 2
    # infeasible solution -> 1, with the sentinel score line
    crossing = tmp_path / "crossing.solution.json"
    save_solution("square", cp.EdgeSet(
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]), crossing)
    code, out, err = run(["score", str(square_file), str(crossing)], capsys)
    assert code == 1 and out.strip() == "0 (infeasible)"
    code, out, _ = run(["verify", str(square_file), str(crossing)], capsys)
    assert code == 1 and "CrossingEdges" in out


def test_verify_name_mismatch(tmp_path, capsys, square_file):
    other = tmp_path / "other.solution.json"
    save_solution("not-square", cp.EdgeSet([(0, 1)]), other)
    assert run(["verify", str(square_file), str(other)], capsys)[0] == 2


def test_mcp_seed_env_default(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("MCP_SEED", "99")
    assert run(["gen", "--family", "uniform", "--n", "10", "--bound", "40",
                "--out", "a.instance.json"], capsys)[0] == 0
    monkeypatch.setenv("MCP_SEED", "not-a-number")
    assert run(["gen", "--family", "uniform", "--n", "10", "--bound", "40",
                "--out", "b.instance.json"], capsys)[0] == 2
    monkeypatch.delenv("MCP_SEED")
    a = cp.load_instance(tmp_path / "a.instance.json")
    direct = cp.gen_uniform(10, 40, 99, name=a.name)
    assert [(p.x, p.y) for p in a.points] == [(p.x, p.y) for p in direct.points]


def test_solve_byte_identical_across_processes(tmp_path):
    inst = cp.gen_uniform(60, 300, 21)
    ipath = tmp_path / "d.instance.json"
    save_instance(inst, ipath)
    blobs = []
    for trial in range(2):
        out = tmp_path / f"run{trial}.solution.json"
        r = subprocess.run(
            [sys.executable, "-m", "convexpart", "solve", str(ipath),
             "--seed", "5", "--time-limit", "10", "--out", str(out)],
            capture_output=True, text=True, timeout=300)
        assert r.returncode == 0, r.stderr
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_bench_directory(tmp_path, capsys):
    for seed in (1, 2):
        save_instance(cp.gen_uniform(25, 80, seed),
                      tmp_path / f"u{seed}.instance.json")
    summary = tmp_path / "summary.json"
    sols = tmp_path / "sols"
    code, out, _ = run(["bench", str(tmp_path), "--seed", "4",
                        "--time-limit", "5", "--restarts", "2",
                        "--out", str(summary), "--solutions", str(sols)],
                       capsys)
    assert code == 0
    assert "total" in out
    doc = json.loads(summary.read_text())
    assert len(doc["rows"]) == 2
    assert len(list(sols.glob("*.solution.json"))) == 2
    # solutions written by bench verify cleanly against their instances
    for seed in (1, 2):
        inst = load_instance(tmp_path / f"u{seed}.instance.json")
        _, edges = load_solution(sols / f"{inst.name}.solution.json", inst)
        assert cp.verify(inst, edges).feasible
    # empty directory is a usage error
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run(["bench", str(empty)], capsys)[0] == 2


def test_render_writes_svg(tmp_path, capsys, square_file, square):
    out = tmp_path / "pic.svg"
    code, _, _ = run(["render", str(square_file), "--out", str(out)], capsys)
    assert code == 0 and "<svg" in out.read_text()

    sol = tmp_path / "sq.solution.json"
    save_solution("square", cp.triangulate(square), sol)
    out2 = tmp_path / "pic2.svg"
    assert run(["render", str(square_file), str(sol), "--out", str(out2)],
               capsys)[0] == 0

    bad = tmp_path / "bad.solution.json"
    save_solution("square", cp.EdgeSet([(0, 2), (1, 3)]), bad)
    out3 = tmp_path / "pic3.svg"
    code, _, _ = run(["render", str(square_file), str(bad),
                      "--out", str(out3)], capsys)
    assert code == 1 and out3.exists()  # drawn anyway, flagged by exit code


def test_usage_errors(capsys):
    assert main(["gen"]) == 2  # missing required flags
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()
