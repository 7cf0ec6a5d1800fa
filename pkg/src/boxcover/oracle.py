"""Brute-force reference solver for tests and the verify command.

Deliberately independent of the fast path: no rank-extreme pruning, no range
index, and every separator position is tried by linear scan instead of
binary search.  It does rely on the proven geometric facts the problem
grants: disjoint boxes admit an axis-parallel separator, an optimal
rectangle is the bounding box of its covered set, and an optimal square can
be anchored bottom-left at covered-point coordinates.  Only the core types
and box-placement constructors are shared with the fast path.

Sizes are capped (p=1: 64, p=2: 20, p=3: 16 points); everything here is
O(n^4)-ish by design.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import (
    RECT,
    SQUARE,
    AxisBox,
    CoverSolution,
    Point,
    assemble_solution,
    boxes_interior_disjoint,
    place_box,
    place_pair,
)

SIZE_LIMITS = {1: 64, 2: 20, 3: 16}
INF = float("inf")


class OracleSizeLimitError(ValueError):
    """Instance exceeds the documented brute-force size limit."""


class _Oracle:
    def __init__(self, points: Sequence[Point], k: int, shape: str):
        self.k = k
        self.shape = shape
        self.xs = np.array([p.x for p in points], dtype=np.float64)
        self.ys = np.array([p.y for p in points], dtype=np.float64)
        self._table: dict[tuple, np.ndarray] = {}
        self._vec: dict[tuple, np.ndarray] = {}
        self._two: dict[tuple, dict] = {}

    # -- one box, all coverage targets --------------------------------------

    def _sq_table(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """t[c-1] = min square side covering >= c of these points.

        Every bottom-left anchor (coordinate pair) is tried; per anchor the
        minimal side reaching count c is the c-th smallest of max(dx, dy)
        over the points up-right of it.
        """
        ux = np.unique(xs)
        uy = np.unique(ys)
        dx = xs[None, :] - ux[:, None]
        dy = ys[None, :] - uy[:, None]
        D = np.maximum(dx[:, None, :], dy[None, :, :])
        D[(dx[:, None, :] < 0) | (dy[None, :, :] < 0)] = INF
        D.sort(axis=2)
        return D.min(axis=(0, 1))

    def _rect_grid(self, xs: np.ndarray, ys: np.ndarray):
        ux = np.unique(xs)
        uy = np.unique(ys)
        occ = np.zeros((len(ux) + 1, len(uy) + 1), dtype=np.int64)
        np.add.at(occ, (np.searchsorted(ux, xs) + 1, np.searchsorted(uy, ys) + 1), 1)
        return ux, uy, occ.cumsum(axis=0).cumsum(axis=1)

    def _rect_table(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """t[c-1] = min rectangle area covering >= c of these points.

        Enumerates every rectangle with edges on point coordinates and counts
        coverage with a prefix grid, one left edge at a time.
        """
        n = len(xs)
        ux, uy, P = self._rect_grid(xs, ys)
        w = len(uy)
        A, B = np.triu_indices(w)
        heights = uy[B] - uy[A]
        best = np.full(n, INF)
        needs = np.arange(1, n + 1)
        for i in range(len(ux)):
            sub = P[i + 1 :] - P[i]  # y-prefix counts for slabs [ux[i], ux[r]]
            cnts = (sub[:, B + 1] - sub[:, A]).ravel()
            areas = ((ux[i:] - ux[i])[:, None] * heights[None, :]).ravel()
            o = np.argsort(-cnts, kind="stable")
            cummin = np.minimum.accumulate(areas[o])
            cdesc = cnts[o]
            pos = np.searchsorted(-cdesc, -needs, side="right") - 1
            hit = pos >= 0
            np.minimum(best, np.where(hit, cummin[np.maximum(pos, 0)], INF), out=best)
        return best

    def table(self, ids: tuple) -> np.ndarray:
        t = self._table.get(ids)
        if t is None:
            xs = self.xs[list(ids)]
            ys = self.ys[list(ids)]
            if len(ids) == 0:
                t = np.empty(0)
            elif self.shape == SQUARE:
                t = self._sq_table(xs, ys)
            else:
                t = self._rect_table(xs, ys)
            self._table[ids] = t
        return t

    def value1(self, ids: tuple, budget: int) -> float:
        q = len(ids)
        if budget >= q:
            return 0.0
        t = float(self.table(ids)[q - budget - 1])
        return t * t if self.shape == SQUARE else t

    def vec1(self, ids: tuple) -> np.ndarray:
        """value1 for every budget 0..k as one array."""
        v = self._vec.get(ids)
        if v is None:
            q = len(ids)
            v = np.zeros(self.k + 1)
            if q:
                t = self.table(ids)
                budgets = np.arange(min(q, self.k + 1))
                vals = t[q - budgets - 1]
                if self.shape == SQUARE:
                    vals = vals * vals
                v[: len(budgets)] = vals
            self._vec[ids] = v
        return v

    def extent1(self, ids: tuple, budget: int):
        """Covered extent (side, cxmin, cxmax, cymin, cymax) of the optimum."""
        q = len(ids)
        if budget >= q:
            return None
        xs = self.xs[list(ids)]
        ys = self.ys[list(ids)]
        need = q - budget
        if self.shape == SQUARE:
            side = float(self.table(ids)[need - 1])
            ux = np.unique(xs)
            uy = np.unique(ys)
            dx = xs[None, :] - ux[:, None]
            dy = ys[None, :] - uy[:, None]
            D = np.maximum(dx[:, None, :], dy[None, :, :])
            D[(dx[:, None, :] < 0) | (dy[None, :, :] < 0)] = INF
            kth = np.partition(D, need - 1, axis=2)[:, :, need - 1]
            i, j = np.argwhere(kth <= side)[0]
            ax, ay = float(ux[i]), float(uy[j])
            m = (xs >= ax) & (xs - ax <= side) & (ys >= ay) & (ys - ay <= side)
            return (side, float(xs[m].min()), float(xs[m].max()), float(ys[m].min()), float(ys[m].max()))
        area = float(self.table(ids)[need - 1])
        ux, uy, P = self._rect_grid(xs, ys)
        w = len(uy)
        A, B = np.triu_indices(w)
        heights = uy[B] - uy[A]
        for i in range(len(ux)):
            sub = P[i + 1 :] - P[i]
            cnts = sub[:, B + 1] - sub[:, A]
            areas = (ux[i:] - ux[i])[:, None] * heights[None, :]
            hits = np.argwhere((cnts >= need) & (areas == area))
            if len(hits):
                r, widx = hits[0]
                xl, xr = float(ux[i]), float(ux[i + r])
                yb, yt = float(uy[A[widx]]), float(uy[B[widx]])
                m = (xs >= xl) & (xs <= xr) & (ys >= yb) & (ys <= yt)
                return (
                    0.0,
                    float(xs[m].min()),
                    float(xs[m].max()),
                    float(ys[m].min()),
                    float(ys[m].max()),
                )
        raise AssertionError("rectangle extent recovery failed")

    # -- two boxes -----------------------------------------------------------

    def _ordered(self, ids: tuple, axis: str) -> tuple:
        if axis == "x":
            return tuple(sorted(ids, key=lambda i: (self.xs[i], i)))
        return tuple(sorted(ids, key=lambda i: (self.ys[i], i)))

    def two_all(self, ids: tuple) -> dict:
        """Best two-box value and split for every budget, by full scan."""
        got = self._two.get(ids)
        if got is not None:
            return got
        q = len(ids)
        kk = self.k
        values = np.full(kk + 1, INF)
        meta: list = [None] * (kk + 1)
        for axis in ("x", "y"):
            ordered = self._ordered(ids, axis)
            ML = np.empty((q + 1, kk + 1))
            MR = np.empty((q + 1, kk + 1))
            for m in range(q + 1):
                ML[m] = self.vec1(ordered[:m])
                MR[m] = self.vec1(ordered[m:])
            for j in range(kk + 1):
                for k1 in range(j + 1):
                    cand = np.maximum(ML[:, k1], MR[:, j - k1])
                    mm = int(np.argmin(cand))
                    v = float(cand[mm])
                    if v < values[j]:
                        values[j] = v
                        meta[j] = (axis, mm, k1)
        got = {"values": values, "meta": meta}
        self._two[ids] = got
        return got

    def assemble2(self, ids: tuple, j: int, axis: str, m: int, k1: int, wall):
        ordered = self._ordered(ids, axis)
        left, right = ordered[:m], ordered[m:]
        e1 = self.extent1(left, k1)
        e2 = self.extent1(right, j - k1)
        return place_pair(self.shape, axis, e1, e2, wall)

    def pair_solve(self, ids: tuple, j: int, wall) -> tuple[float, list[Optional[AxisBox]]]:
        """Exact two-box optimum honoring `wall`; falls back to a full scan
        with placement checks when the unconstrained optimum cannot be
        placed.  A perpendicular split is always placeable, so this never
        fails outright."""
        info = self.two_all(ids)
        jj = min(j, self.k)
        axis, m, k1 = info["meta"][jj]
        quick = self.assemble2(ids, jj, axis, m, k1, wall)
        if quick is not None and quick[1] <= info["values"][jj]:
            return quick[1], quick[0]
        best_v = INF
        best_boxes: Optional[list] = None
        q = len(ids)
        for axis in ("x", "y"):
            ordered = self._ordered(ids, axis)
            for m in range(q + 1):
                left, right = ordered[:m], ordered[m:]
                for k1 in range(jj + 1):
                    v = max(self.value1(left, k1), self.value1(right, jj - k1))
                    if v >= best_v:
                        continue
                    got = self.assemble2(ids, jj, axis, m, k1, wall)
                    if got is not None:
                        best_v, best_boxes = got[1], got[0]
        assert best_boxes is not None
        return best_v, best_boxes


def oracle_solve(points: Sequence[Point], p: int, k: int, shape: str) -> CoverSolution:
    """Exact optimum by exhaustive enumeration; ground truth for the solvers."""
    n = len(points)
    if p not in SIZE_LIMITS:
        raise ValueError("p must be 1, 2 or 3")
    if n > SIZE_LIMITS[p]:
        raise OracleSizeLimitError(f"n={n} exceeds the p={p} oracle limit {SIZE_LIMITS[p]}")
    if shape not in (SQUARE, RECT):
        raise ValueError(f"unknown shape {shape!r}")
    k = min(max(k, 0), n)
    orc = _Oracle(points, k, shape)
    all_ids = tuple(range(n))
    if n == 0 or k >= n:
        return CoverSolution((), 0.0, 0, frozenset(range(n)))

    if p == 1:
        ext = orc.extent1(all_ids, k)
        box = place_box(ext, shape, "lo", "lo")
        return assemble_solution(orc.xs, orc.ys, [box])

    if p == 2:
        info = orc.two_all(all_ids)
        target = float(info["values"][k])
        best_key = None
        best_boxes = None
        for axis in ("x", "y"):
            ordered = orc._ordered(all_ids, axis)
            for m in range(n + 1):
                left, right = ordered[:m], ordered[m:]
                for k1 in range(k + 1):
                    if max(orc.value1(left, k1), orc.value1(right, k - k1)) > target:
                        continue
                    got = orc.assemble2(all_ids, k, axis, m, k1, None)
                    if got is None:
                        continue
                    boxes, value = got
                    key = (value, tuple(sorted(b.as_tuple() for b in boxes if b is not None)))
                    if best_key is None or key < best_key:
                        best_key, best_boxes = key, boxes
        assert best_boxes is not None
        return assemble_solution(orc.xs, orc.ys, best_boxes)

    # p == 3: lone box on one side of the separator, a pair on the other
    cands = []
    for axis in ("x", "y"):
        ordered = orc._ordered(all_ids, axis)
        for m in range(n + 1):
            first, second = ordered[:m], ordered[m:]
            for single_side in ("first", "second"):
                single, pair = (first, second) if single_side == "first" else (second, first)
                pvals = orc.two_all(pair)["values"]
                for k1 in range(k + 1):
                    v = max(orc.value1(single, k1), float(pvals[k - k1]))
                    cands.append((v, axis, m, single_side, k1))
    cands.sort(key=lambda c: c[0])
    best_W = INF
    best_key = None
    best_boxes = None
    for v, axis, m, single_side, k1 in cands:
        if v > best_W:
            break
        ordered = orc._ordered(all_ids, axis)
        first, second = ordered[:m], ordered[m:]
        single, pair = (first, second) if single_side == "first" else (second, first)
        ext = orc.extent1(single, k1)
        if single_side == "first":
            pins = ("hi", "lo") if axis == "x" else ("lo", "hi")
        else:
            pins = ("lo", "lo")
        sbox = place_box(ext, shape, *pins)
        wall = None
        if sbox is not None:
            if single_side == "first":
                wall = (axis, "lo", sbox.xmax if axis == "x" else sbox.ymax)
            else:
                wall = (axis, "hi", sbox.xmin if axis == "x" else sbox.ymin)
        pv, pboxes = orc.pair_solve(pair, k - k1, wall)
        boxes = [sbox] + pboxes
        present = [b for b in boxes if b is not None]
        if not boxes_interior_disjoint(present):
            continue
        W = max((b.area for b in present), default=0.0)
        key = (W, tuple(sorted(b.as_tuple() for b in present)))
        if W < best_W or (best_key is not None and W == best_W and key < best_key):
            best_W = W
            best_key = key
            best_boxes = boxes
    assert best_boxes is not None
    return assemble_solution(orc.xs, orc.ys, best_boxes)
