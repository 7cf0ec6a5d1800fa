"""Exact (p,k) solvers for p <= 3 via separating-position decomposition.

Any optimal pair or triple of disjoint boxes admits an axis-parallel
separator with one box on one side, so the solvers enumerate separator
orientation, the outlier budget granted to the lone side, and binary-search
the separator position: the lone side's objective only grows as its side
gains points while the other side's only shrinks, making max(f, g)
quasiconvex in the position.

Positions are cuts in the (coordinate, id) rank orders, so every subproblem
is a rank-space region queried against one shared index; nothing is ever
re-sorted or re-indexed inside the recursion.  Squares on a side are placed
flush against their side's covered extent so the two sides can never
interleave; the one genuinely delicate placement, a square squeezed between
two parallel separators, is slid within its legal interval and the
configuration is abandoned (and the position scan repeated with placement
feasibility enforced) in the rare case nothing fits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Optional, Sequence

import numpy as np

from .core import (
    RECT,
    SQUARE,
    AxisBox,
    CoverSolution,
    Point,
    ProblemSpec,
    assemble_solution,
    boxes_interior_disjoint,
    place_box,
    place_pair,
    square_box,
)
from .base import (
    BaseResult,
    _rect_areas_by_budget,
    _rect_min_area,
    _square_anchor_for_need,
    _square_cover_bounds,
    _square_min_side,
    _square_sides_by_need,
    solve_rect_1k,
    solve_square_1k,
)
from .preprocess import (
    ExtremeSet,
    RangeExtremaIndex,
    SortedPointSet,
    build_range_index,
    build_sorted,
    extreme_points,
    prefix_extremes,
    region_extremes,
)

Region = tuple[int, int, int, int]
Orientation = Literal["vertical", "horizontal"]
Side = Literal["first", "second"]
INF = float("inf")

# |E| threshold below which one-box solves precompute every budget at once
_SMALL_TABLE = 40


@dataclass(frozen=True, slots=True)
class SplitConfig:
    """One explored decomposition: separator orientation and position plus
    the outlier budget granted to the lone-box side."""

    orientation: Orientation
    single_side: Side
    kprime: int
    m: int


@dataclass(frozen=True, slots=True)
class PairResult:
    """Two-box sub-solution for one side of a three-box decomposition."""

    area: float
    boxes: tuple[AxisBox, ...]


@dataclass(frozen=True, slots=True)
class _Wall:
    """Half-plane constraint for an already-placed neighbor box."""

    axis: str  # 'x' | 'y'
    kind: str  # 'lo' (boxes must sit at >= coord) | 'hi'
    coord: float


@dataclass(frozen=True, slots=True)
class _One:
    """One-box solution on a region: side/bounds plus its covered extent."""

    value: float
    side: float  # squares only; 0 for rects
    cxmin: float
    cxmax: float
    cymin: float
    cymax: float


@dataclass(frozen=True, slots=True)
class _Two:
    value: float
    axis: str
    j1: int
    j2: int
    t: int


def _axis_bounds(region: Region, axis: str) -> tuple[int, int]:
    return (region[0], region[1]) if axis == "x" else (region[2], region[3])


def _split_region(region: Region, axis: str, t: int) -> tuple[Region, Region]:
    xlo, xhi, ylo, yhi = region
    if axis == "x":
        return (xlo, t, ylo, yhi), (t, xhi, ylo, yhi)
    return (xlo, xhi, ylo, t), (xlo, xhi, t, yhi)


class _Engine:
    """Per-solve cache of one- and two-box optima over rank regions."""

    def __init__(self, S: SortedPointSet, idx: RangeExtremaIndex, shape: str, k: int):
        self.S = S
        self.idx = idx
        self.shape = shape
        self.k = k
        self._reg: dict[Region, dict] = {}
        self._two: dict[tuple[Region, int], _Two] = {}

    # -- one-box layer ------------------------------------------------------

    def _state(self, region: Region) -> dict:
        st = self._reg.get(region)
        if st is None:
            es = region_extremes(self.idx, region, self.k)
            ids = sorted(es.union)
            st = {
                "es": es,
                "ids": ids,
                "xs": self.S.xs[ids],
                "ys": self.S.ys[ids],
                "vals": {},
                "info": {},
                "sq_table": None,
                "rect_table": None,
            }
            self._reg[region] = st
        return st

    def _budget_arrays(self, st: dict, j: int):
        """Coordinate arrays of the (j+1)-extreme subset, sliced from the
        cached (k+1)-extreme lists (their ends are the most extreme)."""
        got = st.get(("bj", j))
        if got is None:
            es: ExtremeSet = st["es"]
            m = j + 1
            ids = sorted(set(es.L[:m]) | set(es.R[len(es.R) - m :])
                         | set(es.B[:m]) | set(es.T[len(es.T) - m :]))
            got = (self.S.xs[ids], self.S.ys[ids])
            st[("bj", j)] = got
        return got

    def value1(self, region: Region, j: int) -> float:
        st = self._state(region)
        cnt = len(st["ids"])
        if j >= cnt:
            return 0.0
        v = st["vals"].get(j)
        if v is not None:
            return v
        if cnt <= _SMALL_TABLE:
            xs, ys = st["xs"], st["ys"]
            if self.shape == SQUARE:
                if st["sq_table"] is None:
                    st["sq_table"] = _square_sides_by_need(xs, ys)
                side = float(st["sq_table"][cnt - j - 1])
                v = side * side
            else:
                if st["rect_table"] is None:
                    st["rect_table"] = _rect_areas_by_budget(xs, ys, min(self.k, cnt - 1))
                v = float(st["rect_table"][j])
        else:
            xs, ys = self._budget_arrays(st, j)
            if self.shape == SQUARE:
                side, ax, ay = _square_min_side(xs, ys, len(xs) - j)
                st["info"][j] = (side, ax, ay)
                v = side * side
            else:
                area, bounds = _rect_min_area(xs, ys, j)
                st["info"][j] = bounds
                v = area
        st["vals"][j] = v
        return v

    def info1(self, region: Region, j: int) -> Optional[_One]:
        """Covered-extent detail for the optimum; None for an absent box."""
        st = self._state(region)
        cnt = len(st["ids"])
        if j >= cnt:
            return None
        value = self.value1(region, j)
        one = st.get(("one", j))
        if one is not None:
            return one
        if self.shape == SQUARE:
            cached = st["info"].get(j)
            if cached is not None:
                side, ax, ay = cached
                xs, ys = self._budget_arrays(st, j)
            else:
                xs, ys = st["xs"], st["ys"]
                side = float(st["sq_table"][cnt - j - 1])
                ax, ay = _square_anchor_for_need(xs, ys, cnt - j, side)
            _, cxmin, cxmax, cymin, cymax = _square_cover_bounds(xs, ys, ax, ay, side)
            one = _One(value, side, cxmin, cxmax, cymin, cymax)
        else:
            cached = st["info"].get(j)
            if cached is None:
                _, cached = _rect_min_area(st["xs"], st["ys"], j)
            xmin, ymin, xmax, ymax = cached
            one = _One(value, 0.0, xmin, xmax, ymin, ymax)
        st[("one", j)] = one
        return one

    def build1(self, one: Optional[_One], pin_x: str, pin_y: str) -> Optional[AxisBox]:
        """Materialize a one-box solution with flush pins ('lo' or 'hi')."""
        return place_box(self._ext(one), self.shape, pin_x, pin_y)

    @staticmethod
    def _ext(one: Optional[_One]):
        if one is None:
            return None
        return (one.side, one.cxmin, one.cxmax, one.cymin, one.cymax)

    # -- two-box layer ------------------------------------------------------

    def _binary_split(
        self,
        region: Region,
        axis: str,
        f_first: Callable[[Region], float],
        f_second: Callable[[Region], float],
    ) -> tuple[float, int]:
        """Minimize max(first, second) over the cut position on one axis.

        `f_first` is non-decreasing and `f_second` non-increasing in the cut,
        so a comparison-guided binary search lands on a global minimum; the
        landing spot and both neighbors are then evaluated explicitly to be
        safe on plateaus.
        """
        lo, hi = _axis_bounds(region, axis)
        cache: dict[int, float] = {}

        def val(t: int) -> float:
            v = cache.get(t)
            if v is None:
                r1, r2 = _split_region(region, axis, t)
                v = max(f_first(r1), f_second(r2))
                cache[t] = v
            return v

        a, b = lo, hi
        while a < b:
            mid = (a + b) // 2
            r1, r2 = _split_region(region, axis, mid)
            if f_first(r1) >= f_second(r2):
                b = mid
            else:
                a = mid + 1
        best_t = a
        best_v = val(a)
        for t in (a - 1, a + 1):
            if lo <= t <= hi:
                v = val(t)
                if v < best_v or (v == best_v and t < best_t):
                    best_v, best_t = v, t
        return best_v, best_t

    def solve2(self, region: Region, j: int) -> _Two:
        key = (region, j)
        got = self._two.get(key)
        if got is not None:
            return got
        best: Optional[_Two] = None
        for axis in ("x", "y"):
            for j1 in range(j + 1):
                j2 = j - j1
                v, t = self._binary_split(
                    region,
                    axis,
                    lambda r: self.value1(r, j1),
                    lambda r: self.value1(r, j2),
                )
                if best is None or v < best.value:
                    best = _Two(v, axis, j1, j2, t)
        assert best is not None
        self._two[key] = best
        return best

    def value2(self, region: Region, j: int) -> float:
        return self.solve2(region, j).value

    def assemble2(
        self, region: Region, j: int, two: _Two, wall: Optional[_Wall]
    ) -> Optional[tuple[list[Optional[AxisBox]], float]]:
        """Build the two boxes of a cached split, honoring an outer wall.

        Returns None when the wall cannot be satisfied for these covered
        sets; the caller then falls back to a placement-aware position scan.
        """
        r1, r2 = _split_region(region, two.axis, two.t)
        i1 = self.info1(r1, two.j1)
        i2 = self.info1(r2, two.j2)
        w = None if wall is None else (wall.axis, wall.kind, wall.coord)
        return place_pair(self.shape, two.axis, self._ext(i1), self._ext(i2), w)

    def solve2_walled(self, region: Region, j: int, wall: Optional[_Wall]):
        """Exact two-box optimum on a region with an outer wall enforced.

        Tries the cached unconstrained split first; when its placement cannot
        respect the wall, scans every position/budget with a placement
        feasibility test.  Returns (value, boxes list) or None when even the
        scan finds nothing (impossible when the region is coverable).
        """
        two = self.solve2(region, j)
        quick = self.assemble2(region, j, two, wall)
        if quick is not None and quick[1] <= two.value:
            return quick[1], quick[0]
        best_v = INF
        best_boxes = None
        for axis in ("x", "y"):
            lo, hi = _axis_bounds(region, axis)
            for j1 in range(j + 1):
                j2 = j - j1
                for t in range(lo, hi + 1):
                    r1, r2 = _split_region(region, axis, t)
                    v = max(self.value1(r1, j1), self.value1(r2, j2))
                    if v >= best_v:
                        continue
                    got = self.assemble2(region, j, _Two(v, axis, j1, j2, t), wall)
                    if got is not None:
                        best_v, best_boxes = got[1], got[0]
        if best_boxes is None:
            return None
        return best_v, best_boxes


# ---------------------------------------------------------------------------
# public solver entry points


def _finish(S: SortedPointSet, spec: ProblemSpec, boxes: Sequence[Optional[AxisBox]]) -> CoverSolution:
    return assemble_solution(S.xs, S.ys, boxes)


def _solve_p1(S: SortedPointSet, spec: ProblemSpec, k: int) -> CoverSolution:
    ids = sorted(extreme_points(S, k).union)
    pts = [S.point(i) for i in ids]
    r = solve_square_1k(pts, k) if spec.shape == SQUARE else solve_rect_1k(pts, k)
    return _finish(S, spec, [r.box])


def _solve_p2(S: SortedPointSet, eng: _Engine, spec: ProblemSpec, k: int) -> CoverSolution:
    n = S.n
    full: Region = (0, n, 0, n)
    cands: list[tuple[float, str, int, int]] = []
    for axis in ("x", "y"):
        for k1 in range(k + 1):
            v, t = eng._binary_split(
                full, axis, lambda r: eng.value1(r, k1), lambda r: eng.value1(r, k - k1)
            )
            cands.append((v, axis, k1, t))
    best_v = min(c[0] for c in cands)
    best: Optional[tuple[tuple, list]] = None
    for v, axis, k1, t in cands:
        if v > best_v:
            continue
        got = eng.assemble2(full, k, _Two(v, axis, k1, k - k1, t), None)
        assert got is not None  # flush placement always works without walls
        boxes, value = got
        key = tuple(sorted(b.as_tuple() for b in boxes if b is not None))
        if best is None or (value, key) < best[0]:
            best = ((value, key), boxes)
    assert best is not None
    return _finish(S, spec, best[1])


def _p3_family_regions(n: int, orientation: Orientation, single_side: Side, t: int):
    axis = "x" if orientation == "vertical" else "y"
    full: Region = (0, n, 0, n)
    first, second = _split_region(full, axis, t)
    if single_side == "first":
        return axis, first, second
    return axis, second, first


def _solve_p3(S: SortedPointSet, eng: _Engine, spec: ProblemSpec, k: int) -> CoverSolution:
    n = S.n
    full: Region = (0, n, 0, n)
    fams: list[tuple[float, Orientation, Side, int, int]] = []
    for orientation in ("vertical", "horizontal"):
        axis = "x" if orientation == "vertical" else "y"
        for single_side in ("first", "second"):
            for k1 in range(k + 1):
                if single_side == "first":
                    ff = lambda r: eng.value1(r, k1)
                    fs = lambda r: eng.value2(r, k - k1)
                else:
                    ff = lambda r: eng.value2(r, k - k1)
                    fs = lambda r: eng.value1(r, k1)
                v, t = eng._binary_split(full, axis, ff, fs)
                fams.append((v, orientation, single_side, k1, t))
    fams.sort(key=lambda f: f[0])

    def attempt(orientation, single_side, k1, t) -> Optional[tuple[float, list]]:
        axis, single_r, pair_r = _p3_family_regions(n, orientation, single_side, t)
        si = eng.info1(single_r, k1)
        if single_side == "first":
            pin = ("hi", "lo") if axis == "x" else ("lo", "hi")
        else:
            pin = ("lo", "lo")
        sbox = eng.build1(si, *pin)
        wall = None
        if sbox is not None:
            if single_side == "first":
                wall = _Wall(axis, "lo", sbox.xmax if axis == "x" else sbox.ymax)
            else:
                wall = _Wall(axis, "hi", sbox.xmin if axis == "x" else sbox.ymin)
        got = eng.solve2_walled(pair_r, k - k1, wall)
        if got is None:
            return None
        pair_v, pair_boxes = got
        boxes = [sbox] + pair_boxes
        present = [b for b in boxes if b is not None]
        if not boxes_interior_disjoint(present):
            return None
        value = max((b.area for b in present), default=0.0)
        return value, boxes

    best_v = INF
    best: Optional[tuple[tuple, list]] = None
    for v, orientation, single_side, k1, t in fams:
        if v > best_v:
            break
        got = attempt(orientation, single_side, k1, t)
        if got is None or got[0] > v + 1e-12 * max(v, 1.0):
            # the wall degraded (or blocked) this position; the family's true
            # placement-feasible minimum may sit elsewhere, so scan them all
            # (construction ulps don't count as degradation)
            axis = "x" if orientation == "vertical" else "y"
            lo, hi = _axis_bounds(full, axis)
            for tt in range(lo, hi + 1):
                if tt == t:
                    continue
                got_t = attempt(orientation, single_side, k1, tt)
                if got_t is not None and (got is None or got_t[0] < got[0]):
                    got = got_t
            if got is None:
                continue
        value, boxes = got
        key = tuple(sorted(b.as_tuple() for b in boxes if b is not None))
        if value < best_v or (best is not None and value == best_v and (value, key) < best[0]):
            best_v = value
            best = ((value, key), boxes)
    assert best is not None
    return _finish(S, spec, best[1])


def solve_pk(S: SortedPointSet, idx: RangeExtremaIndex, spec: ProblemSpec) -> CoverSolution:
    """Exact optimal cover of all but at most k points by p disjoint boxes."""
    n = S.n
    k = min(spec.k, n)
    if n == 0 or k >= n:
        return CoverSolution((), 0.0, 0, frozenset(range(n)))
    if spec.p == 1:
        return _solve_p1(S, spec, k)
    eng = _Engine(S, idx, spec.shape, k)
    if spec.p == 2:
        return _solve_p2(S, eng, spec, k)
    return _solve_p3(S, eng, spec, k)


def solve(points: Sequence[Point], p: int, k: int, shape: str) -> CoverSolution:
    """Convenience wrapper: sort, index, and solve in one call."""
    S = build_sorted(points)
    idx = build_range_index(S)
    return solve_pk(S, idx, ProblemSpec(p=p, k=k, shape=shape))


def split_search(
    S: SortedPointSet,
    idx: RangeExtremaIndex,
    orientation: Orientation,
    single_side: Side,
    kprime: int,
    p_single: int,
    p_other: int,
    shape: str,
    k_total: Optional[int] = None,
) -> tuple[float, SplitConfig, tuple[AxisBox, ...]]:
    """Best separator position for one (orientation, budget) configuration.

    Minimizes over the cut position the max of the two side objectives,
    where the single-box side gets `kprime` outliers and the other side
    (one or two boxes) gets the rest of `k_total` (defaults to kprime for a
    pure two-box split, i.e. other budget 0 unless given).
    """
    if p_single != 1 or p_other not in (1, 2):
        raise ValueError("supported splits are 1|1 and 1|2")
    n = S.n
    k = kprime if k_total is None else k_total
    j_other = k - kprime
    if j_other < 0:
        raise ValueError("kprime exceeds the total budget")
    eng = _Engine(S, idx, shape, max(k, kprime))
    axis = "x" if orientation == "vertical" else "y"
    full: Region = (0, n, 0, n)

    def single_val(r: Region) -> float:
        return eng.value1(r, kprime)

    def other_val(r: Region) -> float:
        return eng.value1(r, j_other) if p_other == 1 else eng.value2(r, j_other)

    if single_side == "first":
        v, t = eng._binary_split(full, axis, single_val, other_val)
    else:
        v, t = eng._binary_split(full, axis, other_val, single_val)

    axis_name, single_r, pair_r = _p3_family_regions(n, orientation, single_side, t)
    si = eng.info1(single_r, kprime)
    if single_side == "first":
        pin = ("hi", "lo") if axis == "x" else ("lo", "hi")
    else:
        pin = ("lo", "lo")
    sbox = eng.build1(si, *pin)
    if p_other == 1:
        oi = eng.info1(pair_r, j_other)
        opin = ("lo", "lo") if single_side == "first" else (
            ("hi", "lo") if axis == "x" else ("lo", "hi")
        )
        obox = eng.build1(oi, *opin)
        boxes = tuple(b for b in (sbox, obox) if b is not None)
    else:
        wall = None
        if sbox is not None:
            if single_side == "first":
                wall = _Wall(axis, "lo", sbox.xmax if axis == "x" else sbox.ymax)
            else:
                wall = _Wall(axis, "hi", sbox.xmin if axis == "x" else sbox.ymin)
        got = eng.solve2_walled(pair_r, j_other, wall)
        pair_boxes = got[1] if got is not None else []
        boxes = tuple(b for b in [sbox] + list(pair_boxes) if b is not None)
    return v, SplitConfig(orientation, single_side, kprime, t), boxes


def objective_on_side(
    S: SortedPointSet,
    idx: RangeExtremaIndex,
    orientation: Orientation,
    side: Side,
    m: int,
    p_side: int,
    j: int,
    shape: str,
):
    """Optimal objective restricted to one side of a separator position.

    p_side=1 composes prefix_extremes with the one-box base solver and
    re-anchors squares flush toward the separator; p_side=2 runs the two-box
    split machinery on the side's rank interval.
    """
    n = S.n
    if not 0 <= m <= n:
        raise ValueError(f"m={m} out of range")
    axis = "x" if orientation == "vertical" else "y"
    full: Region = (0, n, 0, n)
    first, second = _split_region(full, axis, m)
    region = first if side == "first" else second
    if p_side == 1:
        es = prefix_extremes(idx, S, orientation, m, side, j)
        pts = [S.point(i) for i in sorted(es.union)]
        r = solve_square_1k(pts, j) if shape == SQUARE else solve_rect_1k(pts, j)
        if r.box is None or shape == RECT:
            return r
        # flush the square toward the separator
        xs = np.array([p.x for p in pts])
        ys = np.array([p.y for p in pts])
        inside = (xs >= r.box.xmin) & (xs <= r.box.xmax) & (ys >= r.box.ymin) & (ys <= r.box.ymax)
        cxmin, cxmax = float(xs[inside].min()), float(xs[inside].max())
        cymin, cymax = float(ys[inside].min()), float(ys[inside].max())
        side_len = r.box.width
        toward_hi = side == "first"
        if axis == "x":
            box = (
                square_box(side_len, cxmax, -1, cxmin, cymin, 1, cymax)
                if toward_hi
                else square_box(side_len, cxmin, 1, cxmax, cymin, 1, cymax)
            )
        else:
            box = (
                square_box(side_len, cxmin, 1, cxmax, cymax, -1, cymin)
                if toward_hi
                else square_box(side_len, cxmin, 1, cxmax, cymin, 1, cymax)
            )
        return BaseResult(box.area, box, r.covered_count)
    if p_side != 2:
        raise ValueError("p_side must be 1 or 2")
    eng = _Engine(S, idx, shape, j)
    two = eng.solve2(region, j)
    got = eng.assemble2(region, j, two, None)
    assert got is not None
    boxes, value = got
    return PairResult(value, tuple(b for b in boxes if b is not None))
