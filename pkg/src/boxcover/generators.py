"""Deterministic, seeded instance generators for tests and benchmarks.

All generators are pure functions of their arguments.  Random coordinates are
snapped to a dyadic grid (multiples of 2**-20) so that coordinate differences
and sums are exactly representable in float64; solver/oracle comparisons then
never hinge on rounding.  Each axis is kept duplicate-free by re-drawing,
except for `gen_shared_coords`, which deliberately reuses coordinates, and
`gen_diagonal`, which takes values verbatim.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

from .core import Point

GRID = 2.0**-20


def snap(v: float) -> float:
    """Round to the dyadic grid used by the random generators."""
    return round(v / GRID) * GRID


def _draw_distinct(rng: random.Random, lo: float, hi: float, seen: set[float]) -> float:
    while True:
        v = snap(rng.uniform(lo, hi))
        if v not in seen:
            seen.add(v)
            return v


def gen_uniform(
    n: int,
    seed: int,
    bbox: tuple[float, float, float, float] = (0.0, 0.0, 1024.0, 1024.0),
) -> list[Point]:
    """n i.i.d. uniform points in bbox, distinct per axis, grid-snapped."""
    xmin, ymin, xmax, ymax = bbox
    rng = random.Random(seed)
    seen_x: set[float] = set()
    seen_y: set[float] = set()
    pts = []
    for i in range(n):
        x = _draw_distinct(rng, xmin, xmax, seen_x)
        y = _draw_distinct(rng, ymin, ymax, seen_y)
        pts.append(Point(x, y, i))
    return pts


def gen_clusters(c: int, per_cluster: int, spread: float, seed: int) -> list[Point]:
    """c Gaussian-ish clusters of per_cluster points each, centers far apart."""
    if c < 1:
        raise ValueError("need at least one cluster")
    rng = random.Random(seed)
    extent = max(64.0 * spread, 1.0) * c
    centers = [(rng.uniform(0, extent), rng.uniform(0, extent)) for _ in range(c)]
    seen_x: set[float] = set()
    seen_y: set[float] = set()
    pts = []
    i = 0
    for cx, cy in centers:
        for _ in range(per_cluster):
            while True:
                x = snap(cx + rng.gauss(0.0, spread))
                y = snap(cy + rng.gauss(0.0, spread))
                if x not in seen_x and y not in seen_y:
                    seen_x.add(x)
                    seen_y.add(y)
                    break
            pts.append(Point(x, y, i))
            i += 1
    return pts


def gen_diagonal(values: Sequence[float]) -> list[Point]:
    """The points (v, v) for each value, in order; duplicates allowed."""
    return [Point(float(v), float(v), i) for i, v in enumerate(values)]


def gen_shared_coords(n: int, seed: int) -> list[Point]:
    """Grid-cell instance with many duplicated x and y coordinates.

    Uses ceil(sqrt(n)) distinct values per axis and emits the first n cells
    of the seeded-shuffled grid, so a perfect square n gives the full grid.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    g = math.isqrt(n)
    if g * g < n:
        g += 1
    rng = random.Random(seed)
    seen_x: set[float] = set()
    seen_y: set[float] = set()
    xs = sorted(_draw_distinct(rng, 0.0, 64.0 * g, seen_x) for _ in range(g))
    ys = sorted(_draw_distinct(rng, 0.0, 64.0 * g, seen_y) for _ in range(g))
    cells = [(x, y) for x in xs for y in ys]
    rng.shuffle(cells)
    return [Point(x, y, i) for i, (x, y) in enumerate(cells[:n])]
