"""Exact one-box solvers with an outlier budget, used as recursion base cases.

Both solvers first restrict to the rank-extreme subset of their input: any
square or rectangle that leaves at most j points uncovered must reach a point
from each of the four (j+1)-extreme lists, so it automatically contains every
non-extreme point and both the candidate edges and the outlier counting can
live entirely on the extreme subset.

Square placement canonicalization: for any square of side s covering a set S,
the translate with bottom-left corner (xmin(S), ymin(S)) also covers S, since
s >= width(S) and s >= height(S).  Bottom-left candidates therefore range
over pairs of point coordinates, which makes the side-length decision test
complete.  Containment in a candidate square is tested as a coordinate
difference (x - ax <= s), never as x <= ax + s, so that the canonical anchor
of an optimal cover is feasible at side max(width, height) without rounding
slop; with grid-snapped inputs both forms agree exactly anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import AxisBox, Point, rect_box, square_box
from .preprocess import extreme_points_of


@dataclass(frozen=True, slots=True)
class BaseResult:
    """Outcome of a one-box solve; box is None only when j >= |Q|."""

    area: float
    box: Optional[AxisBox]
    covered_count: int


def candidate_side_lengths(E: Sequence[Point]) -> list[float]:
    """All pairwise x- and y-coordinate differences, with 0, ascending."""
    if not E:
        return [0.0]
    xs = np.array([p.x for p in E], dtype=np.float64)
    ys = np.array([p.y for p in E], dtype=np.float64)
    dx = np.abs(xs[None, :] - xs[:, None]).ravel()
    dy = np.abs(ys[None, :] - ys[:, None]).ravel()
    return [float(v) for v in np.unique(np.concatenate([dx, dy, [0.0]]))]


# ---------------------------------------------------------------------------
# square machinery on coordinate arrays (shared with the recursive engine)


def _square_grid(xs: np.ndarray, ys: np.ndarray):
    """Anchor coordinate grids, difference rows, and the positional prefix grid."""
    n = len(xs)
    ux = np.unique(xs)
    uy = np.unique(ys)
    xs_s = np.sort(xs)
    ys_s = np.sort(ys)
    DX = xs_s[None, :] - ux[:, None]
    DY = ys_s[None, :] - uy[:, None]
    negx = (DX < 0).sum(axis=1)
    negy = (DY < 0).sum(axis=1)
    px = np.empty(n, dtype=np.int64)
    py = np.empty(n, dtype=np.int64)
    px[np.argsort(xs, kind="stable")] = np.arange(n)
    py[np.argsort(ys, kind="stable")] = np.arange(n)
    occ = np.zeros((n + 1, n + 1), dtype=np.int64)
    occ[px + 1, py + 1] = 1
    P = occ.cumsum(axis=0).cumsum(axis=1)
    return ux, uy, DX, DY, negx, negy, P


def _square_counts(DX, DY, negx, negy, P, s: float) -> np.ndarray:
    """Coverage count for every anchor pair at side s (rows ux, cols uy)."""
    hx = (DX <= s).sum(axis=1)
    hy = (DY <= s).sum(axis=1)
    flat = P.ravel()
    w = P.shape[1]
    row_hi = (hx * w)[:, None]
    row_lo = (negx * w)[:, None]
    return (
        flat[row_hi + hy[None, :]]
        - flat[row_lo + hy[None, :]]
        - flat[row_hi + negy[None, :]]
        + flat[row_lo + negy[None, :]]
    )


def _square_min_side(xs: np.ndarray, ys: np.ndarray, need: int):
    """Minimum side and lexicographically smallest anchor covering >= need.

    Binary-searches the sorted candidate side lengths with the anchor-grid
    decision test.
    """
    n = len(xs)
    assert 1 <= need <= n
    ux, uy, DX, DY, negx, negy, P = _square_grid(xs, ys)
    dx = np.abs(xs[None, :] - xs[:, None]).ravel()
    dy = np.abs(ys[None, :] - ys[:, None]).ravel()
    cand = np.unique(np.concatenate([dx, dy, [0.0]]))
    lo, hi = 0, len(cand) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if (_square_counts(DX, DY, negx, negy, P, float(cand[mid])) >= need).any():
            hi = mid
        else:
            lo = mid + 1
    side = float(cand[lo])
    C = _square_counts(DX, DY, negx, negy, P, side)
    i, j = np.argwhere(C >= need)[0]
    return side, float(ux[i]), float(uy[j])


def _square_sides_by_need(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """best[c-1] = minimum square side covering at least c points, c = 1..n.

    One shot for every coverage target: per anchor, the c-th smallest of
    max(dx, dy) over eligible points is the minimal side reaching count c.
    """
    ux = np.unique(xs)
    uy = np.unique(ys)
    DX = xs[None, :] - ux[:, None]
    DY = ys[None, :] - uy[:, None]
    D = np.maximum(DX[:, None, :], DY[None, :, :])
    D[(DX[:, None, :] < 0) | (DY[None, :, :] < 0)] = np.inf
    D.sort(axis=2)
    return D.min(axis=(0, 1))


def _square_anchor_for_need(xs: np.ndarray, ys: np.ndarray, need: int, side: float):
    """Lexicographically smallest anchor achieving `side` at coverage `need`."""
    ux = np.unique(xs)
    uy = np.unique(ys)
    DX = xs[None, :] - ux[:, None]
    DY = ys[None, :] - uy[:, None]
    D = np.maximum(DX[:, None, :], DY[None, :, :])
    D[(DX[:, None, :] < 0) | (DY[None, :, :] < 0)] = np.inf
    kth = np.partition(D, need - 1, axis=2)[:, :, need - 1]
    i, j = np.argwhere(kth <= side)[0]
    return float(ux[i]), float(uy[j])


def _square_cover_bounds(xs: np.ndarray, ys: np.ndarray, ax: float, ay: float, side: float):
    """Bounds and count of the points covered by the square at (ax, ay)."""
    mask = (xs >= ax) & (xs - ax <= side) & (ys >= ay) & (ys - ay <= side)
    cx = xs[mask]
    cy = ys[mask]
    return (
        int(mask.sum()),
        float(cx.min()),
        float(cx.max()),
        float(cy.min()),
        float(cy.max()),
    )


# ---------------------------------------------------------------------------
# rectangle machinery


def _rect_slabs(xs: np.ndarray, ys: np.ndarray, j: int):
    """Vertical slab candidates and per-slab sorted y lists."""
    n = len(xs)
    xs_s = np.sort(xs)
    m = min(j + 1, n)
    left_edges = np.unique(xs_s[:m])
    right_edges = np.unique(xs_s[n - m :])
    order_y = np.argsort(ys, kind="stable")
    ys_s = ys[order_y]
    xs_by_y = xs[order_y]
    return xs_s, left_edges, right_edges, ys_s, xs_by_y


def _rect_min_area(xs: np.ndarray, ys: np.ndarray, j: int):
    """Exact minimum-area rectangle leaving at most j of these points out.

    Enumerates O(j^2) vertical slabs through left/right extreme coordinates;
    inside each slab sweeps the bottom-exclusion count, pairing it with the
    complementary top exclusion, so the y-window always spends the whole
    remaining budget.  Returns (area, (xmin, ymin, xmax, ymax)) with the box
    tightened to the bounding box of its covered set, lexicographically
    smallest among the enumerated optima.
    """
    n = len(xs)
    assert 0 <= j < n
    xs_s, Lc, Rc, ys_s, xs_by_y = _rect_slabs(xs, ys, j)
    best = np.inf
    best_box = None
    for xl in Lc:
        for xr in Rc:
            if xr < xl:
                continue
            out = int(np.searchsorted(xs_s, xl, side="left")) + n - int(
                np.searchsorted(xs_s, xr, side="right")
            )
            rem = j - out
            if rem < 0:
                continue
            sel = (xs_by_y >= xl) & (xs_by_y <= xr)
            w = ys_s[sel]
            q = len(w)
            if q == 0:
                continue
            width = xr - xl
            wx = xs_by_y[sel]
            for a in range(0, min(rem, q - 1) + 1):
                b = min(rem - a, q - 1 - a)
                height = w[q - 1 - b] - w[a]
                area = width * height
                if area > best:
                    continue
                win = (w >= w[a]) & (w <= w[q - 1 - b])
                cand = (
                    float(wx[win].min()),
                    float(w[a]),
                    float(wx[win].max()),
                    float(w[q - 1 - b]),
                )
                if area < best or best_box is None or cand < best_box:
                    best = area
                    best_box = cand
    assert best_box is not None
    xmin, ymin, xmax, ymax = best_box
    return float((xmax - xmin) * (ymax - ymin)), best_box


def _rect_areas_by_budget(xs: np.ndarray, ys: np.ndarray, jmax: int) -> np.ndarray:
    """areas[j] = minimum rectangle area with at most j outliers, j = 0..jmax."""
    n = len(xs)
    jmax = min(jmax, n - 1)
    xs_s, Lc, Rc, ys_s, xs_by_y = _rect_slabs(xs, ys, jmax)
    areas = np.full(jmax + 1, np.inf)
    for xl in Lc:
        for xr in Rc:
            if xr < xl:
                continue
            out = int(np.searchsorted(xs_s, xl, side="left")) + n - int(
                np.searchsorted(xs_s, xr, side="right")
            )
            if out > jmax:
                continue
            sel = (xs_by_y >= xl) & (xs_by_y <= xr)
            w = ys_s[sel]
            q = len(w)
            if q == 0:
                continue
            width = xr - xl
            cap = min(jmax - out, q - 1)
            heights = np.empty(cap + 1)
            for rem in range(cap + 1):
                h = np.inf
                for a in range(rem + 1):
                    b = min(rem - a, q - 1 - a)
                    v = w[q - 1 - b] - w[a]
                    if v < h:
                        h = v
                heights[rem] = h
            for rem in range(cap + 1):
                jj = out + rem
                v = width * heights[rem]
                if v < areas[jj]:
                    areas[jj] = v
    # more budget never hurts
    np.minimum.accumulate(areas, out=areas)
    return areas


# ---------------------------------------------------------------------------
# public operations


def _extreme_subset(Q: Sequence[Point], j: int) -> list[Point]:
    by_id = {p.id: p for p in Q}
    union = extreme_points_of(Q, j).union
    return [by_id[i] for i in sorted(union)]


def solve_square_1k(Q: Sequence[Point], j: int) -> BaseResult:
    """Minimum-area axis-aligned square covering all but at most j of Q."""
    n = len(Q)
    if j >= n:
        return BaseResult(0.0, None, 0)
    E = _extreme_subset(Q, j)
    xs = np.array([p.x for p in E], dtype=np.float64)
    ys = np.array([p.y for p in E], dtype=np.float64)
    need = len(E) - j
    side, ax, ay = _square_min_side(xs, ys, need)
    _, cxmin, cxmax, cymin, cymax = _square_cover_bounds(xs, ys, ax, ay, side)
    box = square_box(side, ax, 1, cxmax, ay, 1, cymax)
    qx = np.array([p.x for p in Q], dtype=np.float64)
    qy = np.array([p.y for p in Q], dtype=np.float64)
    covered = int(
        ((qx >= box.xmin) & (qx <= box.xmax) & (qy >= box.ymin) & (qy <= box.ymax)).sum()
    )
    return BaseResult(box.area, box, covered)


def solve_rect_1k(Q: Sequence[Point], j: int) -> BaseResult:
    """Minimum-area axis-aligned rectangle covering all but at most j of Q."""
    n = len(Q)
    if j >= n:
        return BaseResult(0.0, None, 0)
    E = _extreme_subset(Q, j)
    xs = np.array([p.x for p in E], dtype=np.float64)
    ys = np.array([p.y for p in E], dtype=np.float64)
    _, bounds = _rect_min_area(xs, ys, j)
    box = rect_box(*bounds)
    qx = np.array([p.x for p in Q], dtype=np.float64)
    qy = np.array([p.y for p in Q], dtype=np.float64)
    covered = int(
        ((qx >= box.xmin) & (qx <= box.xmax) & (qy >= box.ymin) & (qy <= box.ymax)).sum()
    )
    return BaseResult(box.area, box, covered)
