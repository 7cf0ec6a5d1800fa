"""Sorted views, rank-extreme subsets, and the orthogonal range-extrema index.

All orderings are the strict total order (coordinate, id), which makes
duplicated coordinates deterministic: ranks are a permutation even when
coordinate values repeat.  Separating "lines" elsewhere in the package are
positions in these rank orders, and a point exactly on a separator belongs to
the first (lower-rank) side.

The index is a pair of min/max-augmented flat segment trees: one over x-rank
positions storing each point's y-rank, one transposed.  That supports
- leftmost/rightmost position in a range whose value is </>= a threshold in
  O(log n), and
- repeated max-below / min-above extraction for "the next extreme point in a
  rank range", which is how per-side extreme subsets are pulled out without
  re-sorting anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import Point

Direction = Literal["max", "min"]
Orientation = Literal["vertical", "horizontal"]

_NONE = -1


@dataclass(frozen=True)
class SortedPointSet:
    """The input points plus x- and y-rank permutations and their inverses."""

    xs: np.ndarray  # float64, input order
    ys: np.ndarray
    by_x: np.ndarray  # int64 ids sorted by (x, id)
    by_y: np.ndarray
    rank_x: np.ndarray  # inverse permutations
    rank_y: np.ndarray

    @property
    def n(self) -> int:
        return len(self.xs)

    @property
    def points(self) -> list[Point]:
        return [Point(float(x), float(y), i) for i, (x, y) in enumerate(zip(self.xs, self.ys))]

    def point(self, i: int) -> Point:
        return Point(float(self.xs[i]), float(self.ys[i]), i)


def build_sorted(points: Sequence[Point]) -> SortedPointSet:
    """Sort the points in both axes; O(n log n) time, O(n) space.

    Rejects non-finite coordinates and ids that are not 0..n-1 in order.
    """
    n = len(points)
    xs = np.empty(n, dtype=np.float64)
    ys = np.empty(n, dtype=np.float64)
    for i, p in enumerate(points):
        if p.id != i:
            raise ValueError(f"point ids must be dense and in input order; got {p.id} at {i}")
        xs[i] = p.x
        ys[i] = p.y
    if n and not (np.isfinite(xs).all() and np.isfinite(ys).all()):
        raise ValueError("coordinates must be finite")
    # stable sort on the coordinate == lexicographic (coordinate, id) order
    by_x = np.argsort(xs, kind="stable").astype(np.int64)
    by_y = np.argsort(ys, kind="stable").astype(np.int64)
    rank_x = np.empty(n, dtype=np.int64)
    rank_y = np.empty(n, dtype=np.int64)
    rank_x[by_x] = np.arange(n)
    rank_y[by_y] = np.arange(n)
    return SortedPointSet(xs, ys, by_x, by_y, rank_x, rank_y)


@dataclass(frozen=True)
class ExtremeSet:
    """The four rank-extreme id lists (each ascending by its own axis)."""

    T: tuple[int, ...]
    B: tuple[int, ...]
    L: tuple[int, ...]
    R: tuple[int, ...]

    @property
    def union(self) -> frozenset[int]:
        return frozenset(self.T) | set(self.B) | set(self.L) | set(self.R)


def _select_low(vals: np.ndarray, m: int) -> list[int]:
    """Ids of the m lowest entries by (value, id), via introselect not sorting."""
    n = len(vals)
    if m <= 0 or n == 0:
        return []
    if m >= n:
        idx = np.arange(n)
    else:
        part = np.argpartition(vals, m - 1)[:m]
        boundary = vals[part].max()
        strict = np.flatnonzero(vals < boundary)
        need = m - len(strict)
        ties = np.flatnonzero(vals == boundary)
        if need < len(ties):
            ties = np.partition(ties, need - 1)[:need] if need else ties[:0]
        idx = np.concatenate([strict, ties])
    order = sorted(idx.tolist(), key=lambda i: (vals[i], i))
    return [int(i) for i in order]


def _select_high(vals: np.ndarray, m: int) -> list[int]:
    """Ids of the m highest entries by (value, id), ascending by (value, id)."""
    n = len(vals)
    if m <= 0 or n == 0:
        return []
    if m >= n:
        idx = np.arange(n)
    else:
        part = np.argpartition(vals, n - m)[n - m :]
        boundary = vals[part].min()
        strict = np.flatnonzero(vals > boundary)
        need = m - len(strict)
        ties = np.flatnonzero(vals == boundary)
        if need < len(ties):
            # highest ids win the boundary ties under (value, id) order
            ties = np.partition(ties, len(ties) - need)[len(ties) - need :] if need else ties[:0]
        idx = np.concatenate([strict, ties])
    order = sorted(idx.tolist(), key=lambda i: (vals[i], i))
    return [int(i) for i in order]


def extreme_points(S: SortedPointSet, k: int) -> ExtremeSet:
    """The (k+1) rank-extreme points per side of the full set.

    Uses linear-time selection on the coordinate arrays rather than the
    sorted views, so a one-box solve stays linear overall.
    """
    m = k + 1
    return ExtremeSet(
        T=tuple(_select_high(S.ys, m)),
        B=tuple(_select_low(S.ys, m)),
        L=tuple(_select_low(S.xs, m)),
        R=tuple(_select_high(S.xs, m)),
    )


def extreme_points_of(points: Sequence[Point], k: int) -> ExtremeSet:
    """extreme_points for a bare point list (ids may be arbitrary but unique)."""
    xs = np.array([p.x for p in points], dtype=np.float64)
    ys = np.array([p.y for p in points], dtype=np.float64)
    m = k + 1
    ids = [p.id for p in points]
    remap = lambda lst: tuple(ids[i] for i in lst)
    return ExtremeSet(
        T=remap(_select_high(ys, m)),
        B=remap(_select_low(ys, m)),
        L=remap(_select_low(xs, m)),
        R=remap(_select_high(xs, m)),
    )


def _build_tree(values: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Flat 1-indexed segment tree with min and max augmentation."""
    n = len(values)
    cap = 1
    while cap < max(n, 1):
        cap *= 2
    mn = np.full(2 * cap, np.iinfo(np.int64).max, dtype=np.int64)
    mx = np.full(2 * cap, _NONE, dtype=np.int64)
    mn[cap : cap + n] = values
    mx[cap : cap + n] = values
    for i in range(cap - 1, 0, -1):
        lo = 2 * i
        mn[i] = min(mn[lo], mn[lo + 1])
        mx[i] = max(mx[lo], mx[lo + 1])
    return mn, mx, cap


def _build_tree_vec(values: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Same as _build_tree but level-by-level vectorized for large n."""
    n = len(values)
    cap = 1
    while cap < max(n, 1):
        cap *= 2
    mn = np.full(2 * cap, np.iinfo(np.int64).max, dtype=np.int64)
    mx = np.full(2 * cap, _NONE, dtype=np.int64)
    mn[cap : cap + n] = values
    mx[cap : cap + n] = values
    lo, hi = cap, 2 * cap
    while lo > 1:
        level_min = np.minimum(mn[lo:hi:2], mn[lo + 1 : hi : 2])
        level_max = np.maximum(mx[lo:hi:2], mx[lo + 1 : hi : 2])
        lo, hi = lo // 2, lo
        mn[lo:hi] = level_min
        mx[lo:hi] = level_max
    return mn, mx, cap


@dataclass(frozen=True)
class RangeExtremaIndex:
    """Static rank-space index answering extreme-in-range queries.

    tx_* trees are over x-rank positions with y-rank values; ty_* transposed.
    Built in O(n log n) total (dominated by the sort), O(n) space.  Queries
    are read-only, so concurrent use is safe.
    """

    S: SortedPointSet
    tx_min: np.ndarray
    tx_max: np.ndarray
    tx_cap: int
    ty_min: np.ndarray
    ty_max: np.ndarray
    ty_cap: int


def build_range_index(S: SortedPointSet) -> RangeExtremaIndex:
    x_vals = S.rank_y[S.by_x] if S.n else np.empty(0, dtype=np.int64)
    y_vals = S.rank_x[S.by_y] if S.n else np.empty(0, dtype=np.int64)
    builder = _build_tree_vec if S.n > 4096 else _build_tree
    tx_min, tx_max, tx_cap = builder(x_vals)
    ty_min, ty_max, ty_cap = builder(y_vals)
    return RangeExtremaIndex(S, tx_min, tx_max, tx_cap, ty_min, ty_max, ty_cap)


# ---------------------------------------------------------------------------
# tree walks (iterative; values are a permutation, so no value ties exist)


def _max_lt(mx: np.ndarray, cap: int, lo: int, hi: int, limit: int) -> int:
    """Largest value < limit among positions [lo, hi); -1 when none."""
    if lo >= hi:
        return _NONE
    best = _NONE
    stack = [(1, 0, cap)]
    while stack:
        node, a, b = stack.pop()
        if b <= lo or hi <= a:
            continue
        m = int(mx[node])
        if m <= best or m == _NONE:
            continue
        if lo <= a and b <= hi and m < limit:
            best = m
            continue
        if b - a == 1:
            if m < limit:
                best = m
            continue
        mid = (a + b) // 2
        l, r = 2 * node, 2 * node + 1
        if mx[l] > mx[r]:
            stack.append((r, mid, b))
            stack.append((l, a, mid))
        else:
            stack.append((l, a, mid))
            stack.append((r, mid, b))
    return best


def _min_gt(mn: np.ndarray, cap: int, lo: int, hi: int, limit: int, n: int) -> int:
    """Smallest value > limit among positions [lo, hi); -1 when none."""
    if lo >= hi:
        return _NONE
    sentinel = np.iinfo(np.int64).max
    best = sentinel
    stack = [(1, 0, cap)]
    while stack:
        node, a, b = stack.pop()
        if b <= lo or hi <= a:
            continue
        m = int(mn[node])
        if m >= best or m == sentinel:
            continue
        if lo <= a and b <= hi and m > limit:
            best = m
            continue
        if b - a == 1:
            if m > limit:
                best = m
            continue
        mid = (a + b) // 2
        l, r = 2 * node, 2 * node + 1
        if mn[l] < mn[r]:
            stack.append((r, mid, b))
            stack.append((l, a, mid))
        else:
            stack.append((l, a, mid))
            stack.append((r, mid, b))
    return best if best < sentinel else _NONE


def _scan_pos(
    mn: np.ndarray,
    mx: np.ndarray,
    cap: int,
    lo: int,
    hi: int,
    vlo: int,
    vhi: int,
    from_left: bool,
) -> int:
    """Leftmost (or rightmost) position in [lo, hi) with value in [vlo, vhi).

    The value window is one-sided in every caller, so subtree pruning on the
    min/max augmentation keeps this O(log n).
    """
    if lo >= hi:
        return _NONE
    stack = [(1, 0, cap)]
    while stack:
        node, a, b = stack.pop()
        if b <= lo or hi <= a:
            continue
        if mx[node] < vlo or mn[node] >= vhi:
            continue
        if b - a == 1:
            return a
        mid = (a + b) // 2
        l, r = 2 * node, 2 * node + 1
        if from_left:
            stack.append((r, mid, b))
            stack.append((l, a, mid))
        else:
            stack.append((l, a, mid))
            stack.append((r, mid, b))
    return _NONE


def _extract_extremes(
    mn: np.ndarray,
    mx: np.ndarray,
    cap: int,
    lo: int,
    hi: int,
    direction: Direction,
    m: int,
    n: int,
    value_lo: int = 0,
    value_hi: int | None = None,
) -> list[int]:
    """Up to m values in a position range, most extreme first, value-windowed."""
    if value_hi is None:
        value_hi = n
    out: list[int] = []
    if direction == "max":
        limit = value_hi
        while len(out) < m:
            v = _max_lt(mx, cap, lo, hi, limit)
            if v < value_lo:
                break
            out.append(v)
            limit = v
    else:
        limit = value_lo - 1
        while len(out) < m:
            v = _min_gt(mn, cap, lo, hi, limit, n)
            if v == _NONE or v >= value_hi:
                break
            out.append(v)
            limit = v
    return out


def top_m(
    idx: RangeExtremaIndex,
    axis: Literal["x", "y"],
    rank_range: tuple[int, int],
    direction: Direction,
    m: int,
) -> list[int]:
    """The m most extreme points along `axis` within an other-axis rank range.

    `rank_range` is a half-open [lo, hi) interval of ranks on the other axis.
    Results are ordered most-extreme first; equal coordinates are returned in
    ascending id order (for both directions), exactly like a naive scan that
    sorts by (coordinate, id) and reads from the appropriate end.
    """
    S = idx.S
    n = S.n
    lo, hi = rank_range
    lo, hi = max(lo, 0), min(hi, n)
    if m <= 0 or lo >= hi:
        return []
    if axis == "y":
        mn, mx, cap = idx.tx_min, idx.tx_max, idx.tx_cap
        by_val, coords = S.by_y, S.ys
    else:
        mn, mx, cap = idx.ty_min, idx.ty_max, idx.ty_cap
        by_val, coords = S.by_x, S.xs

    ranks = _extract_extremes(mn, mx, cap, lo, hi, direction, m, n)
    if direction == "max" and len(ranks) == m:
        # pull the rest of a coordinate tie group that straddles the cutoff,
        # then let the (coordinate desc, id asc) sort decide who stays
        boundary = coords[by_val[ranks[-1]]]
        limit = ranks[-1]
        while True:
            v = _max_lt(mx, cap, lo, hi, limit)
            if v == _NONE or coords[by_val[v]] != boundary:
                break
            ranks.append(v)
            limit = v
    ids = [int(by_val[v]) for v in ranks]
    if direction == "max":
        ids.sort(key=lambda i: (-coords[i], i))
    else:
        ids.sort(key=lambda i: (coords[i], i))
    return ids[:m]


# ---------------------------------------------------------------------------
# rank-region extreme subsets


def _axis_extreme_lists(
    idx: RangeExtremaIndex,
    pos_lo: int,
    pos_hi: int,
    val_lo: int,
    val_hi: int,
    m: int,
    on_x: bool,
) -> tuple[list[int], list[int]]:
    """(low, high) id lists of the m rank-extremes along one axis of a region.

    The region is positions [pos_lo, pos_hi) in this axis's order whose rank
    on the other axis lies in [val_lo, val_hi).  Both lists come back
    ascending in this axis's rank.  One of three strategies applies:
    direct reads when the value window is full, position scans when the value
    window is one-sided, and extraction through the other axis's tree when
    this axis's position window is full but the value window is two-sided.
    """
    S = idx.S
    n = S.n
    if on_x:
        by_pos, mn, mx, cap = S.by_x, idx.tx_min, idx.tx_max, idx.tx_cap
        o_by, o_mn, o_mx, o_cap = S.by_y, idx.ty_min, idx.ty_max, idx.ty_cap
    else:
        by_pos, mn, mx, cap = S.by_y, idx.ty_min, idx.ty_max, idx.ty_cap
        o_by, o_mn, o_mx, o_cap = S.by_x, idx.tx_min, idx.tx_max, idx.tx_cap

    if val_lo <= 0 and val_hi >= n:
        span = by_pos[pos_lo:pos_hi]
        low = [int(i) for i in span[:m]]
        high = [int(i) for i in span[max(len(span) - m, 0) :]]
        return low, high

    if val_lo <= 0 or val_hi >= n:
        low: list[int] = []
        cur = pos_lo
        while len(low) < m:
            pos = _scan_pos(mn, mx, cap, cur, pos_hi, val_lo, val_hi, True)
            if pos == _NONE:
                break
            low.append(int(by_pos[pos]))
            cur = pos + 1
        high: list[int] = []
        cur = pos_hi
        while len(high) < m:
            pos = _scan_pos(mn, mx, cap, pos_lo, cur, val_lo, val_hi, False)
            if pos == _NONE:
                break
            high.append(int(by_pos[pos]))
            cur = pos
        high.reverse()
        return low, high

    if pos_lo <= 0 and pos_hi >= n:
        # two-sided value window, full position window: extract this axis's
        # ranks through the transposed tree over the other axis's positions
        rk = _extract_extremes(o_mn, o_mx, o_cap, val_lo, val_hi, "min", m, n, pos_lo, pos_hi)
        low = [int(by_pos[v]) for v in rk]
        rk = _extract_extremes(o_mn, o_mx, o_cap, val_lo, val_hi, "max", m, n, pos_lo, pos_hi)
        high = [int(by_pos[v]) for v in rk]
        high.reverse()
        return low, high

    raise AssertionError("region has two two-sided rank windows")


def region_extremes(idx: RangeExtremaIndex, region: tuple[int, int, int, int], k: int) -> ExtremeSet:
    """Rank-extreme lists of the points inside a rank-space region.

    region is (xlo, xhi, ylo, yhi), half-open rank intervals.  At most one of
    the two intervals is two-sided at a time; the solvers' recursion never
    produces anything else.
    """
    n = idx.S.n
    xlo, xhi, ylo, yhi = region
    xlo, xhi = max(xlo, 0), min(xhi, n)
    ylo, yhi = max(ylo, 0), min(yhi, n)
    m = k + 1
    L, R = _axis_extreme_lists(idx, xlo, xhi, ylo, yhi, m, on_x=True)
    B, T = _axis_extreme_lists(idx, ylo, yhi, xlo, xhi, m, on_x=False)
    return ExtremeSet(T=tuple(T), B=tuple(B), L=tuple(L), R=tuple(R))


def prefix_extremes(
    idx: RangeExtremaIndex,
    S: SortedPointSet,
    orientation: Orientation,
    m: int,
    side: Literal["first", "second"],
    k: int,
) -> ExtremeSet:
    """Extreme set of the first m points (or the rest) in one axis order.

    Vertical orientation splits the x-order: first = the m lowest x-ranks.
    Horizontal mirrors with the y-order.  Cost O(k log n); nothing is
    re-sorted or materialized.
    """
    if not 0 <= m <= S.n:
        raise ValueError(f"m={m} out of range 0..{S.n}")
    n = S.n
    if orientation == "vertical":
        region = (0, m, 0, n) if side == "first" else (m, n, 0, n)
    else:
        region = (0, n, 0, m) if side == "first" else (0, n, m, n)
    return region_extremes(idx, region, k)
