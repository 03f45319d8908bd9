"""Convex partitions of planar point sets: generators, solvers, verifier.

The problem: connect a finite set of integer points with non-crossing
straight edges so that the convex hull is partitioned into as few convex
faces as possible. A triangulation always works and scores 0; every edge
removed beyond it earns 1/(3(n-1)-c) of score.
"""

from convexpart.errors import (
    BadIndex,
    ConvexPartError,
    CrossingEdges,
    DegenerateHull,
    DuplicateEdge,
    EmptyMap,
    InfeasibleSolution,
    NameMismatch,
    NotRemovable,
    ParseError,
    PointOnEdge,
    SchemaError,
    TooDense,
    TooLarge,
    UnknownEdge,
)
from convexpart.geometry import (
    COLLINEAR,
    LEFT,
    RIGHT,
    Hull,
    Point,
    convex_hull,
    orientation,
)
from convexpart.instances import (
    DensityMap,
    Instance,
    gen_density,
    gen_ortho_collinear,
    gen_uniform,
    load_density_map,
    load_instance,
    load_solution,
    save_instance,
    save_solution,
)
from convexpart.kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from convexpart.render import render_svg, save_svg
from convexpart.solver import (
    SolveResult,
    SolverConfig,
    collinear_seed,
    exact_oracle,
    greedy_reduce,
    local_search,
    solve,
)
from convexpart.subdivision import EdgeSet, Subdivision, build_subdivision
from convexpart.triangulation import triangulate, triangulation_edges
from convexpart.verify import (
    FeasibilityReport,
    ScoreReport,
    Violation,
    batch_score,
    format_decimal,
    score,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BadIndex", "COLLINEAR", "ConvexPartError", "CrossingEdges",
    "DegenerateHull", "DensityMap", "DuplicateEdge", "EdgeSet", "EmptyMap",
    "FeasibilityReport", "Hull", "InfeasibleSolution", "Instance",
    "KERNEL_IMPLEMENTATION", "LEFT", "NameMismatch", "NotRemovable",
    "ParseError", "Point", "PointOnEdge", "RIGHT", "SchemaError",
    "ScoreReport", "SolveResult", "SolverConfig", "Subdivision", "TooDense",
    "TooLarge", "UnknownEdge", "Violation", "batch_score",
    "build_subdivision", "collinear_seed", "convex_hull", "exact_oracle",
    "format_decimal", "gen_density", "gen_ortho_collinear", "gen_uniform",
    "greedy_reduce", "load_density_map", "load_instance", "load_solution",
    "local_search", "orientation", "render_svg", "save_instance",
    "save_solution", "save_svg", "score", "solve", "triangulate",
    "triangulation_edges", "verify",
]
