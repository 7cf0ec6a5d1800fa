"""Exact covering of planar points by up to three disjoint axis-aligned
boxes (squares or rectangles), allowing a budget of uncovered outliers and
minimizing the largest box area."""

from .core import (
    RECT,
    SQUARE,
    AxisBox,
    CoverSolution,
    Point,
    ProblemSpec,
    Violation,
    as_points,
    box_area,
    boxes_interior_disjoint,
    validate_solution,
)
from .base import BaseResult, candidate_side_lengths, solve_rect_1k, solve_square_1k
from .generators import gen_clusters, gen_diagonal, gen_shared_coords, gen_uniform
from .oracle import OracleSizeLimitError, oracle_solve
from .preprocess import (
    ExtremeSet,
    RangeExtremaIndex,
    SortedPointSet,
    build_range_index,
    build_sorted,
    extreme_points,
    prefix_extremes,
    top_m,
)
from .solvers import SplitConfig, objective_on_side, solve, solve_pk, split_search

__all__ = [
    "RECT",
    "SQUARE",
    "AxisBox",
    "BaseResult",
    "CoverSolution",
    "ExtremeSet",
    "OracleSizeLimitError",
    "Point",
    "ProblemSpec",
    "RangeExtremaIndex",
    "SortedPointSet",
    "SplitConfig",
    "Violation",
    "as_points",
    "box_area",
    "boxes_interior_disjoint",
    "build_range_index",
    "build_sorted",
    "candidate_side_lengths",
    "extreme_points",
    "gen_clusters",
    "gen_diagonal",
    "gen_shared_coords",
    "gen_uniform",
    "objective_on_side",
    "oracle_solve",
    "prefix_extremes",
    "solve",
    "solve_pk",
    "solve_rect_1k",
    "solve_square_1k",
    "split_search",
    "top_m",
    "validate_solution",
]
