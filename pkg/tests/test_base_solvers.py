import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxcover import (
    as_points,
    candidate_side_lengths,
    oracle_solve,
    solve_rect_1k,
    solve_square_1k,
)
from boxcover.preprocess import extreme_points_of
from tests.conftest import mixed_instance, reindexed


def covered_in(Q, box):
    return sum(1 for p in Q if box.contains(p.x, p.y))


def test_candidate_side_lengths_examples():
    assert candidate_side_lengths(as_points([(0, 0), (1, 1)])) == [0.0, 1.0]
    assert candidate_side_lengths(as_points([(0, 0), (2, 0), (5, 0)])) == [0.0, 2.0, 3.0, 5.0]
    assert candidate_side_lengths(as_points([(0, 0)])) == [0.0]
    assert candidate_side_lengths([]) == [0.0]


def test_square_examples():
    Q = as_points([(0, 0), (1, 0), (0, 1), (1, 1), (5, 5)])
    r = solve_square_1k(Q, 1)  # brute-force enumeration fixes 1.0
    assert r.area == 1.0
    assert r.box.as_tuple() == (0.0, 0.0, 1.0, 1.0)
    assert r.covered_count == 4

    r = solve_square_1k(Q, 0)  # bounding-square side = max(w, h) = 5
    assert r.area == 25.0
    assert r.covered_count == 5

    r = solve_square_1k(Q, 4)  # one point always coverable by a degenerate square
    assert r.area == 0.0 and r.box is not None

    r = solve_square_1k(Q, 5)  # j >= |Q|: absent box
    assert r.area == 0.0 and r.box is None and r.covered_count == 0


def test_rect_examples():
    Q = as_points([(0, 0), (1, 5), (2, 1), (3, 4), (10, 10)])
    r = solve_rect_1k(Q, 1)  # min over all single-point exclusions = 15.0
    assert r.area == 15.0
    assert r.box.as_tuple() == (0.0, 0.0, 3.0, 5.0)

    r = solve_rect_1k(as_points([(0, 0), (4, 2)]), 0)
    assert r.area == 8.0
    assert r.box.as_tuple() == (0.0, 0.0, 4.0, 2.0)

    r = solve_rect_1k(as_points([(7, 3)]), 0)
    assert r.area == 0.0 and r.box is not None


@pytest.mark.parametrize("solver", [solve_square_1k, solve_rect_1k])
def test_area_non_increasing_in_budget(solver):
    for seed in range(8):
        Q = mixed_instance(seed + 40, 14)
        areas = [solver(Q, j).area for j in range(len(Q) + 1)]
        assert all(a >= b for a, b in zip(areas, areas[1:]))
        assert areas[-1] == 0.0


@pytest.mark.parametrize(
    "solver,shape", [(solve_square_1k, "square"), (solve_rect_1k, "rect")]
)
def test_matches_oracle_small(solver, shape, vlog):
    rng = random.Random(2)
    for seed in range(40):
        n = rng.randint(1, 20)
        Q = mixed_instance(seed + 300, n)
        j = rng.randint(0, len(Q))
        got = solver(Q, j)
        want = oracle_solve(Q, 1, j, shape)
        assert got.area == want.objective, (seed, n, j)
        if got.box is not None:
            assert covered_in(Q, got.box) >= len(Q) - j


@pytest.mark.parametrize(
    "solver,shape", [(solve_square_1k, "square"), (solve_rect_1k, "rect")]
)
def test_equals_solve_on_extreme_subset(solver, shape):
    # restricting to the (j+1)-extreme subset never changes the optimum
    for seed in range(10):
        Q = mixed_instance(seed + 77, 30)
        for j in (0, 1, 3, 6):
            es = extreme_points_of(Q, j)
            sub = [p for p in Q if p.id in es.union]
            sub = reindexed(sub)
            assert solver(Q, j).area == solver(sub, j).area


def test_square_side_is_coordinate_difference():
    for seed in range(10):
        Q = mixed_instance(seed + 500, 12)
        for j in (0, 2):
            r = solve_square_1k(Q, j)
            if r.box is None:
                continue
            cands = candidate_side_lengths(Q)
            assert r.box.width in cands


def test_rect_is_bounding_box_of_covered():
    for seed in range(10):
        Q = mixed_instance(seed + 600, 12)
        r = solve_rect_1k(Q, 2)
        xs = [p.x for p in Q if r.box.contains(p.x, p.y)]
        ys = [p.y for p in Q if r.box.contains(p.x, p.y)]
        assert r.box.as_tuple() == (min(xs), min(ys), max(xs), max(ys))


coord = st.integers(0, 12)


@given(
    coords=st.lists(st.tuples(coord, coord), min_size=1, max_size=10),
    j=st.integers(0, 10),
)
@settings(max_examples=60, deadline=None)
def test_square_oracle_equivalence_hypothesis(coords, j):
    Q = as_points(coords)
    got = solve_square_1k(Q, j)
    want = oracle_solve(Q, 1, j, "square")
    assert got.area == want.objective
