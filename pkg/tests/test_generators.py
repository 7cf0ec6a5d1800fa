from boxcover import gen_clusters, gen_diagonal, gen_shared_coords, gen_uniform
from boxcover.generators import GRID


def test_uniform_deterministic_and_in_bbox():
    a = gen_uniform(100, 7, bbox=(0, 0, 10, 20))
    b = gen_uniform(100, 7, bbox=(0, 0, 10, 20))
    assert a == b
    assert len(a) == 100
    assert all(0 <= p.x <= 10 and 0 <= p.y <= 20 for p in a)
    assert gen_uniform(0, 1) == []


def test_uniform_distinct_per_axis_and_snapped():
    pts = gen_uniform(500, 3)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    assert len(set(xs)) == len(xs)
    assert len(set(ys)) == len(ys)
    assert all(round(x / GRID) * GRID == x for x in xs)


def test_clusters_shape_and_determinism():
    a = gen_clusters(2, 5, 1.0, 42)
    assert len(a) == 10
    assert a == gen_clusters(2, 5, 1.0, 42)
    singles = gen_clusters(3, 1, 1.0, 0)
    assert len(singles) == 3


def test_diagonal_points():
    pts = gen_diagonal([1.5, 2.0, 2.0])
    assert [(p.x, p.y) for p in pts] == [(1.5, 1.5), (2.0, 2.0), (2.0, 2.0)]
    assert [p.id for p in pts] == [0, 1, 2]


def test_shared_coords_grid():
    pts = gen_shared_coords(9, 5)
    assert len(pts) == 9
    assert len({p.x for p in pts}) == 3
    assert len({p.y for p in pts}) == 3
    assert pts == gen_shared_coords(9, 5)


def test_shared_coords_partial_grid():
    pts = gen_shared_coords(7, 1)
    assert len(pts) == 7
    assert len({p.x for p in pts}) <= 3
    assert len({(p.x, p.y) for p in pts}) == 7
