"""Shared fixtures: the worked examples the implementation must reproduce."""

import pytest

from triorbit import GF, LowerTriMatrix, ModulePair

# The full table of canonical representatives at n=4 with their partitions:
# (diagonal of A, positions of ones in B, partition string).
TABLE_N4 = [
    ((1, 1, 1, 1), (), "{1}{2}{3}{4}"),
    ((1, 1, 1, 0), ((4, 1),), "{1,4}{2}{3}"),
    ((1, 1, 1, 0), ((4, 2),), "{1}{2,4}{3}"),
    ((1, 1, 1, 0), ((4, 3),), "{1}{2}{3,4}"),
    ((1, 1, 0, 1), ((3, 1),), "{1,3}{2}{4}"),
    ((1, 1, 0, 1), ((3, 2),), "{1}{2,3}{4}"),
    ((1, 0, 1, 1), ((2, 1),), "{1,2}{3}{4}"),
    ((1, 1, 0, 0), ((3, 1), (4, 2)), "{1,3,4}{2}"),
    ((1, 1, 0, 0), ((3, 1), (4, 3)), "{1,3}{2,4}"),
    ((1, 1, 0, 0), ((3, 2), (4, 1)), "{1,4}{2,3}"),
    ((1, 1, 0, 0), ((3, 2), (4, 3)), "{1}{2,3,4}"),
    ((1, 0, 1, 0), ((2, 1), (4, 2)), "{1,2,4}{3}"),
    ((1, 0, 1, 0), ((2, 1), (4, 3)), "{1,2}{3,4}"),
    ((1, 0, 0, 1), ((2, 1), (3, 2)), "{1,2,3}{4}"),
    ((1, 0, 0, 0), ((2, 1), (3, 2), (4, 3)), "{1,2,3,4}"),
]


def make_pair(field, diag, b_ones):
    n = len(diag)
    A = LowerTriMatrix.diagonal(field, list(diag))
    B = LowerTriMatrix.zero(field, n)
    for (i, j) in b_ones:
        B = B.with_entry(i, j, 1)
    return ModulePair(A, B)


@pytest.fixture
def gf2():
    return GF(2)


@pytest.fixture
def gf5():
    return GF(5)


@pytest.fixture
def table_n4(gf2):
    return [(make_pair(gf2, diag, ones), part) for diag, ones, part in TABLE_N4]


@pytest.fixture
def pair_t6(gf2):
    # A = diag(1,1,0,1,0,0); ones of B at (3,2), (5,4), (6,3).
    return make_pair(gf2, (1, 1, 0, 1, 0, 0), ((3, 2), (5, 4), (6, 3)))


@pytest.fixture
def fixture_t7(gf5):
    """The staged 7-dimensional reduction input over GF(5).

    A = diag(1,1,0,1,0,0,0); G holds the symbolic entries instantiated as
    g32=2, g54=3, g63=1, g71=4 and every other listed entry 1.
    """
    A = LowerTriMatrix.diagonal(gf5, [1, 1, 0, 1, 0, 0, 0])
    rows = [[0] * 7 for _ in range(7)]
    rows[2][0], rows[2][1] = 1, 2
    rows[4][0], rows[4][1], rows[4][2], rows[4][3] = 1, 1, 1, 3
    rows[5][0], rows[5][1], rows[5][2], rows[5][3] = 1, 1, 1, 1
    rows[6][0], rows[6][1], rows[6][2], rows[6][3] = 4, 1, 1, 1
    G = LowerTriMatrix.from_rows(gf5, rows)
    return ModulePair(A, G)
