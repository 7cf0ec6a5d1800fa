"""Shared instance builders and a validation-tracking solve helper."""

from __future__ import annotations

import random

import pytest

from boxcover import Point, ProblemSpec, validate_solution
from boxcover.generators import gen_clusters, gen_shared_coords, gen_uniform


def reindexed(points, n=None):
    """First n points with ids renumbered densely."""
    sel = points if n is None else points[:n]
    return [Point(p.x, p.y, i) for i, p in enumerate(sel)]


def mixed_instance(seed: int, n: int):
    """One of the three generator families, seeded, cut to n points."""
    rng = random.Random(seed)
    kind = rng.choice(["uniform", "clusters", "shared"])
    if kind == "uniform":
        pts = gen_uniform(n, seed)
    elif kind == "clusters":
        c = max(1, (n + 2) // 3)
        pts = gen_clusters(c, 3, 2.0, seed)
    else:
        pts = gen_shared_coords(max(n, 2), seed)
    return reindexed(pts, n)


class ValidationLog:
    """Counts every solution checked across a test session (criterion 7)."""

    def __init__(self):
        self.checked = 0

    def check(self, points, spec: ProblemSpec, sol) -> None:
        v = validate_solution(points, spec, sol)
        assert v is None, f"{v.kind}: {v.message} (spec={spec})"
        self.checked += 1


@pytest.fixture(scope="session")
def vlog():
    return ValidationLog()
