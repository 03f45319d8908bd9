"""convexpart command line: gen / solve / verify / score / bench / render.

Exit codes: 0 success or feasible, 1 infeasible input, 2 usage or file
error, 3 generation failure (requested instance cannot exist), 4 solver
failure. The MCP_SEED environment variable supplies the default --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from convexpart.errors import (
    ConvexPartError,
    EmptyMap,
    InfeasibleSolution,
    NameMismatch,
    ParseError,
    SchemaError,
    TooDense,
    TooLarge,
)
from convexpart.instances import (
    gen_density,
    gen_ortho_collinear,
    gen_uniform,
    load_density_map,
    load_instance,
    load_solution,
    save_instance,
    save_solution,
)
from convexpart.render import save_svg
from convexpart.solver import SolverConfig, solve
from convexpart.verify import format_decimal, score, verify


def _default_seed() -> int:
    raw = os.environ.get("MCP_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"MCP_SEED must be an integer, got {raw!r}") from None


def _seed(args) -> int:
    return _default_seed() if args.seed is None else args.seed


def _out_path(args, source: Path, suffix: str) -> Path:
    if args.out:
        return Path(args.out)
    name = source.name
    for ext in (".instance.json", ".json"):
        if name.endswith(ext):
            name = name[: -len(ext)]
            break
    return source.with_name(name + suffix)


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    seed = _seed(args)
    fam = {"ortho": "ortho-collinear"}.get(args.family, args.family)
    if fam == "uniform":
        inst = gen_uniform(args.n, args.bound, seed, name=args.name)
    elif fam == "ortho-collinear":
        inst = gen_ortho_collinear(args.n, args.grid_lines, args.bound, seed,
                                   name=args.name)
    elif fam in ("edge", "illumination"):
        if not args.density_map:
            raise ValueError(f"--density-map is required for family {fam}")
        dmap = load_density_map(args.density_map)
        if fam == "edge":
            dmap = dmap.gradient()
        inst = gen_density(args.n, dmap, args.scale, seed, family=fam,
                           name=args.name)
    else:  # argparse choices make this unreachable
        raise ValueError(f"unknown family {args.family!r}")
    out = Path(args.out) if args.out else Path(f"{inst.name}.instance.json")
    save_instance(inst, out)
    print(f"wrote {out} ({inst.family}, n={inst.n})")
    return 0


def _config_from(args) -> SolverConfig:
    return SolverConfig(
        seed=_seed(args),
        time_limit=args.time_limit,
        restarts=args.restarts,
        passes_per_restart=args.passes,
        perturbation_strength=args.perturbation,
        strategy=args.strategy,
        workers=args.workers,
        exact_limit=args.exact_limit,
        use_collinear_seed=not args.no_collinear_seed,
        degree_order=args.degree_order,
    ).validated()


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    result = solve(inst, _config_from(args))
    check = verify(inst, result.solution)
    if not check.feasible:
        print("error: solver produced an infeasible solution", file=sys.stderr)
        for v in check.violations:
            print(f"  {v}", file=sys.stderr)
        return 4
    out = _out_path(args, Path(args.instance), ".solution.json")
    save_solution(inst.name, result.solution, out)
    rep = result.score_report
    print(f"wrote {out}")
    print(f"n={rep.n} c={rep.c} m={rep.m} f={rep.f}")
    print(f"score {rep.ratio()} = {rep.decimal()}  "
          f"(best at {result.best_found_at:.2f}s of {result.wall_time:.2f}s, "
          f"{result.iterations} passes)")
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    name, edges = load_solution(args.solution, inst)
    if name != inst.name:
        print(f"error: solution is for {name!r}, instance is {inst.name!r}",
              file=sys.stderr)
        return 2
    report = verify(inst, edges)
    if report.feasible:
        print(f"feasible: n={report.n} c={report.c} m={report.m} f={report.f}")
        return 0
    print(f"infeasible: {len(report.violations)} violation(s)")
    for v in report.violations:
        print(f"  {v}")
    return 1


def cmd_score(args) -> int:
    inst = load_instance(args.instance)
    name, edges = load_solution(args.solution, inst)
    if name != inst.name:
        print(f"error: solution is for {name!r}, instance is {inst.name!r}",
              file=sys.stderr)
        return 2
    report = verify(inst, edges)
    if not report.feasible:
        print("0 (infeasible)")
        for v in report.violations:
            print(f"  {v}", file=sys.stderr)
        return 1
    rep = score(inst, edges)
    print(f"{rep.ratio()} = {rep.decimal()}")
    return 0


def cmd_bench(args) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        raise ValueError(f"{root} is not a directory")
    paths = sorted(p for p in root.glob("*.json")
                   if not p.name.endswith(".solution.json"))
    if not paths:
        raise ValueError(f"no instance files in {root}")
    config = _config_from(args)
    rows = []
    total = Fraction(0)
    for path in paths:
        inst = load_instance(path)
        t0 = time.perf_counter()
        result = solve(inst, config)
        wall = time.perf_counter() - t0
        rep = result.score_report
        total += rep.score
        rows.append({
            "name": inst.name, "n": rep.n, "c": rep.c, "m": rep.m,
            "f": rep.f, "s": rep.s, "score": rep.decimal(),
            "ratio": rep.ratio(), "wall_time": round(wall, 3),
        })
        if args.solutions:
            sol_dir = Path(args.solutions)
            sol_dir.mkdir(parents=True, exist_ok=True)
            save_solution(inst.name, result.solution,
                          sol_dir / f"{inst.name}.solution.json")
    summary = {
        "config": {
            "strategy": config.strategy, "seed": config.seed,
            "time_limit": config.time_limit, "restarts": config.restarts,
            "workers": config.workers,
        },
        "rows": rows,
        "total": format_decimal(total),
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    width = max(len(r["name"]) for r in rows)
    print(f"{'instance':<{width}}  {'n':>6} {'c':>5} {'m':>7} {'f':>7}  score")
    for r in rows:
        print(f"{r['name']:<{width}}  {r['n']:>6} {r['c']:>5} {r['m']:>7} "
              f"{r['f']:>7}  {r['score']}")
    print(f"total {format_decimal(total)} over {len(rows)} instance(s)")
    return 0


def cmd_render(args) -> int:
    inst = load_instance(args.instance)
    edges = None
    report = None
    code = 0
    if args.solution:
        name, edges = load_solution(args.solution, inst)
        if name != inst.name:
            print(f"error: solution is for {name!r}, instance is {inst.name!r}",
                  file=sys.stderr)
            return 2
        report = verify(inst, edges)
        if not report.feasible:
            code = 1
    out = _out_path(args, Path(args.instance), ".svg")
    save_svg(out, inst, edges, report)
    state = "" if report is None else (" (feasible)" if report.feasible
                                       else " (infeasible, highlighted)")
    print(f"wrote {out}{state}")
    return code


# ------------------------------------------------------------------ parser


def _add_solver_flags(sp) -> None:
    sp.add_argument("--strategy", default="local-search",
                    choices=("triangulate-only", "greedy", "local-search", "exact"))
    sp.add_argument("--seed", type=int, default=None,
                    help="RNG seed (default: MCP_SEED env or 0)")
    sp.add_argument("--time-limit", type=float, default=60.0,
                    help="seconds per instance")
    sp.add_argument("--restarts", type=int, default=4)
    sp.add_argument("--passes", type=int, default=3,
                    help="stagnant perturbation passes before restarting (0 = none)")
    sp.add_argument("--perturbation", type=int, default=None,
                    help="random flips per perturbation (default n/20)")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--exact-limit", type=int, default=7)
    sp.add_argument("--no-collinear-seed", action="store_true",
                    help="skip the collinear-chain starting partition")
    sp.add_argument("--degree-order", action="store_true",
                    help="scan high-degree edges first instead of shuffling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexpart",
        description="Generate, solve, verify, score and draw convex "
                    "partitions of planar point sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("--family", required=True,
                   choices=("uniform", "edge", "illumination",
                            "ortho", "ortho-collinear"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--bound", type=int, default=1_000_000,
                   help="coordinates drawn from [0, bound]")
    g.add_argument("--grid-lines", type=int, default=10,
                   help="lines per axis for the ortho-collinear family")
    g.add_argument("--density-map", default=None,
                   help="graymap (P2/P5) or JSON grid for edge/illumination")
    g.add_argument("--scale", type=int, default=32,
                   help="lattice points per density cell side")
    g.add_argument("--name", default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance, write a solution")
    s.add_argument("instance")
    s.add_argument("--out", default=None)
    _add_solver_flags(s)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution for feasibility")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("score", help="print the exact score of a solution")
    c.add_argument("instance")
    c.add_argument("solution")
    c.set_defaults(func=cmd_score)

    b = sub.add_parser("bench", help="solve every instance in a directory")
    b.add_argument("dir")
    b.add_argument("--out", default=None, help="write a JSON summary here")
    b.add_argument("--solutions", default=None,
                   help="directory to store per-instance solution files")
    _add_solver_flags(b)
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="draw an instance (and solution) as SVG")
    r.add_argument("instance")
    r.add_argument("solution", nargs="?", default=None)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except TooDense as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InfeasibleSolution as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ParseError, SchemaError, NameMismatch, EmptyMap, TooLarge,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvexPartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
