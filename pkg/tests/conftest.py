import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cytoric.lattice import MPoint
from cytoric.polytope import hull


def mpoints(rows):
    return [MPoint(r) for r in rows]


@pytest.fixture(scope="session")
def square():
    return hull(mpoints([(1, 1), (1, -1), (-1, 1), (-1, -1)]))


@pytest.fixture(scope="session")
def cube4():
    import itertools

    return hull(mpoints(itertools.product((-1, 1), repeat=4)))


@pytest.fixture(scope="session")
def cross4():
    pts = []
    for i in range(4):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[i] = s
            pts.append(tuple(v))
    return hull(mpoints(pts))


def example_s3_vertices():
    """The 15-vertex reflexive 4-polytope used as the running worked example."""
    rows = []
    for e1 in (1, -1):
        for e2 in (1, -1):
            for e3 in (1, -1):
                rows.append((e1, e2, e3, -1))
    for e1 in (1, -1):
        for e2 in (1, -1):
            for e3 in (1, -1):
                if e1 == e2 == e3 == 1:
                    continue
                s = e1 + e2 + e3
                rows.append((-e1, -e2, -e3, -(s - 1) // 2))
    return rows


@pytest.fixture(scope="session")
def example_s3():
    return hull(mpoints(example_s3_vertices()))


@pytest.fixture(scope="session")
def quintic():
    return hull(
        mpoints(
            [
                (4, -1, -1, -1),
                (-1, 4, -1, -1),
                (-1, -1, 4, -1),
                (-1, -1, -1, 4),
                (-1, -1, -1, -1),
            ]
        )
    )
