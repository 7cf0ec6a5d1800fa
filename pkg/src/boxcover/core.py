"""Shared domain types: points, axis-aligned boxes, problem specs, solutions.

Everything here is immutable value data; instances can be shared freely
between threads once constructed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

SQUARE = "square"
RECT = "rect"

_MAX_EQUALIZE_STEPS = 64

# Width and height of a square box agree exactly whenever the coordinates
# admit it (always true for the dyadic-grid data the generators emit).  For
# arbitrary float pins an exactly equal pair of spans may not exist at all,
# so a square is accepted when its spans agree to 1e-12 relative.
_SQUARE_RTOL = 1e-12


def spans_square(w: float, h: float) -> bool:
    return w == h or abs(w - h) <= _SQUARE_RTOL * max(w, h)


@dataclass(frozen=True, slots=True)
class Point:
    """An input site. `id` is its 0-based position in the input order."""

    x: float
    y: float
    id: int


def as_points(coords: Iterable[tuple[float, float]]) -> list[Point]:
    """Wrap raw (x, y) pairs into Points with dense ids in input order."""
    return [Point(float(x), float(y), i) for i, (x, y) in enumerate(coords)]


@dataclass(frozen=True, slots=True)
class AxisBox:
    """A closed axis-aligned box; degenerate (zero width/height) is allowed.

    Boxes tagged `square` have equal float spans, exactly whenever the
    coordinates admit it (see `spans_square`); build them with `square_box`
    so rounding never breaks the invariant.
    """

    xmin: float
    ymin: float
    xmax: float
    ymax: float
    shape_tag: str = RECT

    def __post_init__(self):
        for v in (self.xmin, self.ymin, self.xmax, self.ymax):
            if not math.isfinite(v):
                raise ValueError("box coordinates must be finite")
        if self.xmin > self.xmax or self.ymin > self.ymax:
            raise ValueError("box has inverted extents")
        if self.shape_tag not in (SQUARE, RECT):
            raise ValueError(f"unknown shape tag {self.shape_tag!r}")
        if self.shape_tag == SQUARE and not spans_square(self.width, self.height):
            raise ValueError("square box with unequal float spans")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def interior_overlaps(self, other: "AxisBox") -> bool:
        """True iff the two open interiors intersect (shared edges are fine)."""
        if self.xmin == self.xmax or self.ymin == self.ymax:
            return False
        if other.xmin == other.xmax or other.ymin == other.ymax:
            return False
        return (
            self.xmin < other.xmax
            and other.xmin < self.xmax
            and self.ymin < other.ymax
            and other.ymin < self.ymax
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.xmin, self.ymin, self.xmax, self.ymax)


def box_area(b: AxisBox) -> float:
    """Area of a box: (xmax - xmin) * (ymax - ymin)."""
    return b.area


def boxes_interior_disjoint(bs: Sequence[AxisBox]) -> bool:
    """True iff every pair of boxes has empty open-interior intersection."""
    for i in range(len(bs)):
        for j in range(i + 1, len(bs)):
            if bs[i].interior_overlaps(bs[j]):
                return False
    return True


def square_box(
    side: float,
    x_pin: float,
    x_dir: int,
    x_reach: float,
    y_pin: float,
    y_dir: int,
    y_reach: float,
) -> AxisBox:
    """Build a square with one exactly-pinned corner.

    The corner (x_pin, y_pin) is kept verbatim and the box extends in
    direction x_dir/y_dir (+1 or -1) by `side`.  The span is inflated by the
    minimum number of ulps needed so that (a) the far edges reach x_reach and
    y_reach (the extremes of the points the square must cover) even after
    rounding, and (b) both float spans are identical, which the square
    invariant requires.  With dyadic-grid inputs the first iteration wins.
    """
    w = max(side, (x_reach - x_pin) * x_dir, (y_reach - y_pin) * y_dir, 0.0)
    fallback = None
    for _ in range(_MAX_EQUALIZE_STEPS):
        xe = x_pin + x_dir * w
        ye = y_pin + y_dir * w
        if (xe - x_reach) * x_dir < 0 or (ye - y_reach) * y_dir < 0:
            w = math.nextafter(w, math.inf)
            continue
        wx = (xe - x_pin) * x_dir
        wy = (ye - y_pin) * y_dir
        if wx == wy or (fallback is None and spans_square(wx, wy)):
            xmin, xmax = (x_pin, xe) if x_dir > 0 else (xe, x_pin)
            ymin, ymax = (y_pin, ye) if y_dir > 0 else (ye, y_pin)
            if wx == wy:
                return AxisBox(xmin, ymin, xmax, ymax, SQUARE)
            fallback = AxisBox(xmin, ymin, xmax, ymax, SQUARE)
        # jump to the next span achievable on either axis (one ulp of the far
        # edge, not of the width, so magnitude gaps are crossed immediately)
        inf_x = math.inf if x_dir > 0 else -math.inf
        inf_y = math.inf if y_dir > 0 else -math.inf
        nxt_x = (math.nextafter(xe, inf_x) - x_pin) * x_dir
        nxt_y = (math.nextafter(ye, inf_y) - y_pin) * y_dir
        nw = max(wx, wy)
        if nw <= w:
            nw = max(nxt_x, nxt_y)
        if nw <= w:
            nw = math.nextafter(w, math.inf)
        w = nw
    if fallback is not None:
        return fallback
    raise ArithmeticError("square span equalization failed; coordinates too extreme")


def rect_box(xmin: float, ymin: float, xmax: float, ymax: float) -> AxisBox:
    """Rectangle with edges exactly at the given coordinates."""
    return AxisBox(xmin, ymin, xmax, ymax, RECT)


# ---------------------------------------------------------------------------
# placement of sub-solutions relative to separators
#
# A box that lives on one side of a separating position is pinned flush at
# the covered extent's boundary nearest the separator, so the two sides can
# touch but never interleave.  When a square ends up between two parallel
# bounds it is slid to the lowest legal position instead; that can be
# impossible for a given covered set, in which case placement reports None
# and the caller tries another configuration.

CoverExtent = tuple  # (side, cxmin, cxmax, cymin, cymax); side unused for rects


def flush_square(
    side: float,
    cxmin: float,
    cxmax: float,
    cymin: float,
    cymax: float,
    pin_x: str,
    pin_y: str,
) -> AxisBox:
    """Square covering the extent, pinned at its 'lo' or 'hi' bound per axis."""
    if pin_x == "lo":
        xp, xd, xr = cxmin, 1, cxmax
    else:
        xp, xd, xr = cxmax, -1, cxmin
    if pin_y == "lo":
        yp, yd, yr = cymin, 1, cymax
    else:
        yp, yd, yr = cymax, -1, cymin
    return square_box(side, xp, xd, xr, yp, yd, yr)


def place_box(ext: Optional[CoverExtent], shape: str, pin_x: str, pin_y: str) -> Optional[AxisBox]:
    """Box for a covered extent: tight rectangle, or flush-pinned square."""
    if ext is None:
        return None
    side, cxmin, cxmax, cymin, cymax = ext
    if shape == RECT:
        return rect_box(cxmin, cymin, cxmax, cymax)
    return flush_square(side, cxmin, cxmax, cymin, cymax, pin_x, pin_y)


def place_box_clamped(
    ext: Optional[CoverExtent],
    shape: str,
    axis: str,
    lo_bound: float,
    hi_bound: float,
    pin_off: str,
) -> Optional[AxisBox]:
    """Place a box whose `axis` interval must fit inside [lo_bound, hi_bound].

    Rectangles cannot slide (they are the covered set's bounding box), so
    they just get verified.  Squares are slid to the lowest legal position.
    Returns None when nothing fits.
    """
    if ext is None:
        return None
    side, cxmin, cxmax, cymin, cymax = ext
    cmin, cmax = (cxmin, cxmax) if axis == "x" else (cymin, cymax)
    if shape == RECT:
        if cmin < lo_bound or cmax > hi_bound:
            return None
        return rect_box(cxmin, cymin, cxmax, cymax)
    pos_lo = max(cmax - side, lo_bound)
    pos_hi = min(cmin, hi_bound - side if math.isfinite(hi_bound) else math.inf)
    if pos_lo > pos_hi:
        return None
    if axis == "x":
        box = square_box(
            side, pos_lo, 1, cmax,
            cymin if pin_off == "lo" else cymax,
            1 if pin_off == "lo" else -1,
            cymax if pin_off == "lo" else cymin,
        )
        lo_edge, hi_edge = box.xmin, box.xmax
    else:
        box = square_box(
            side,
            cxmin if pin_off == "lo" else cxmax,
            1 if pin_off == "lo" else -1,
            cxmax if pin_off == "lo" else cxmin,
            pos_lo, 1, cmax,
        )
        lo_edge, hi_edge = box.ymin, box.ymax
    if lo_edge < lo_bound or hi_edge > hi_bound:
        return None
    return box


def place_pair(
    shape: str,
    axis: str,
    ext1: Optional[CoverExtent],
    ext2: Optional[CoverExtent],
    wall: Optional[tuple[str, str, float]],
) -> Optional[tuple[list[Optional[AxisBox]], float]]:
    """Place two sub-boxes split along `axis` (ext1 on the low side).

    `wall` is (axis, kind, coord): every box must sit at >= coord ('lo') or
    <= coord ('hi') on that axis, because a neighbor box already occupies the
    other side.  Returns ([box1, box2], max area) or None when these covered
    sets cannot be placed legally.
    """
    off_pin = "lo"
    if wall is not None and wall[0] != axis:
        off_pin = "lo" if wall[1] == "lo" else "hi"
    pins1 = ("hi", off_pin) if axis == "x" else (off_pin, "hi")
    pins2 = ("lo", off_pin) if axis == "x" else (off_pin, "lo")
    b1 = place_box(ext1, shape, *pins1)
    b2 = place_box(ext2, shape, *pins2)
    if wall is not None and wall[0] == axis:
        w_axis, kind, coord = wall
        if kind == "lo":
            hi_edge = math.inf
            if b2 is not None:
                hi_edge = b2.xmin if axis == "x" else b2.ymin
            b1 = place_box_clamped(ext1, shape, axis, coord, hi_edge, off_pin)
            if ext1 is not None and b1 is None:
                return None
        else:
            lo_edge = -math.inf
            if b1 is not None:
                lo_edge = b1.xmax if axis == "x" else b1.ymax
            b2 = place_box_clamped(ext2, shape, axis, lo_edge, coord, off_pin)
            if ext2 is not None and b2 is None:
                return None
    present = [b for b in (b1, b2) if b is not None]
    if not boxes_interior_disjoint(present):
        return None
    value = max((b.area for b in present), default=0.0)
    return [b1, b2], value


def assemble_solution(xs: np.ndarray, ys: np.ndarray, boxes) -> CoverSolution:
    """Finish a solution: drop absent slots, count coverage, list outliers."""
    present = tuple(b for b in boxes if b is not None)
    n = len(xs)
    if n:
        inside = np.zeros(n, dtype=bool)
        for b in present:
            inside |= (xs >= b.xmin) & (xs <= b.xmax) & (ys >= b.ymin) & (ys <= b.ymax)
        outliers = frozenset(int(i) for i in np.flatnonzero(~inside))
    else:
        outliers = frozenset()
    objective = max((b.area for b in present), default=0.0)
    return CoverSolution(present, objective, n - len(outliers), outliers)


@dataclass(frozen=True, slots=True)
class ProblemSpec:
    """What to solve: p boxes, up to k outliers, square or rect shape."""

    p: int
    k: int
    shape: str
    coverage_mode: str = "at-least"

    def __post_init__(self):
        if self.p not in (1, 2, 3):
            raise ValueError("p must be 1, 2 or 3")
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.shape not in (SQUARE, RECT):
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.coverage_mode != "at-least":
            raise ValueError("only at-least coverage is supported")


@dataclass(frozen=True, slots=True)
class CoverSolution:
    """Up to p boxes, the ids left uncovered, and the max-box-area objective.

    Absent box slots are simply not present in `boxes`; they contribute area
    zero and are trivially disjoint from everything.
    """

    boxes: tuple[AxisBox, ...]
    objective: float
    covered: int
    outliers: frozenset[int] = field(default_factory=frozenset)


@dataclass(frozen=True, slots=True)
class Violation:
    """First failed solution invariant: kind names it, message has details."""

    kind: str  # disjointness | coverage | objective-mismatch | shape
    message: str


def _coord_arrays(points) -> tuple[np.ndarray, np.ndarray]:
    xs = getattr(points, "xs", None)
    ys = getattr(points, "ys", None)
    if xs is not None and ys is not None:
        return xs, ys
    pts = list(points)
    return (
        np.array([p.x for p in pts], dtype=np.float64),
        np.array([p.y for p in pts], dtype=np.float64),
    )


def validate_solution(points, spec: ProblemSpec, sol: CoverSolution) -> Optional[Violation]:
    """Check every CoverSolution invariant; None when fine.

    `points` may be a SortedPointSet or any iterable of Point.  Membership is
    closed-box containment.  The first violated invariant is reported.
    """
    if len(sol.boxes) > spec.p:
        raise ValueError("solution has more boxes than the problem allows")
    xs, ys = _coord_arrays(points)
    n = len(xs)

    for b in sol.boxes:
        if b.shape_tag != spec.shape:
            return Violation("shape", f"box tagged {b.shape_tag!r}, expected {spec.shape!r}")
        if spec.shape == SQUARE and not spans_square(b.width, b.height):
            return Violation("shape", f"square box has spans {b.width} x {b.height}")

    if not boxes_interior_disjoint(sol.boxes):
        return Violation("disjointness", "two boxes have overlapping interiors")

    want = max((b.area for b in sol.boxes), default=0.0)
    if sol.objective != want:
        return Violation(
            "objective-mismatch", f"objective {sol.objective!r} != max box area {want!r}"
        )

    if sol.covered + len(sol.outliers) != n:
        return Violation(
            "coverage", f"covered {sol.covered} + outliers {len(sol.outliers)} != n {n}"
        )
    k_eff = min(spec.k, n)
    if sol.covered < n - k_eff:
        return Violation("coverage", f"covered {sol.covered} < required {n - k_eff}")
    if n:
        inside = np.zeros(n, dtype=bool)
        for b in sol.boxes:
            inside |= (xs >= b.xmin) & (xs <= b.xmax) & (ys >= b.ymin) & (ys <= b.ymax)
        out = np.flatnonzero(~inside)
        bad = [int(i) for i in out if int(i) not in sol.outliers]
        if bad:
            return Violation("coverage", f"point {bad[0]} is uncovered but not an outlier")
    return None
