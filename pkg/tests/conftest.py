import numpy as np
import pytest

from endoforge import algebra
from endoforge.graphs import ArcColoredDigraph


def make_digraph(n, *colorarcs):
    return ArcColoredDigraph(
        n,
        tuple(str(i) for i in range(n)),
        tuple(f"c{i}" for i in range(len(colorarcs))),
        tuple(tuple(a) for a in colorarcs),
    )


@pytest.fixture(scope="session")
def b2_lattice():
    """Four elements: bottom 0 < 1, 2 < top 3 with 1 and 2 incomparable."""
    return algebra.lattice_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture(scope="session")
def m3_lattice():
    """Five elements: three incomparable atoms between bottom and top."""
    return algebra.lattice_from_covers(
        5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
    )


@pytest.fixture(scope="session")
def n5_lattice():
    """Pentagon: 0 < 1 < 3 < 4 and 0 < 2 < 4, the 5-element non-modular lattice."""
    return algebra.lattice_from_covers(5, [(0, 1), (1, 3), (0, 2), (3, 4), (2, 4)])


@pytest.fixture(scope="session")
def left_zero_adjoined():
    """e plus a left-zero pair: a*x = a and b*x = b for x in {a, b}."""
    return algebra.validate_monoid(
        np.array([[0, 1, 2], [1, 1, 1], [2, 2, 2]]), 0
    )
