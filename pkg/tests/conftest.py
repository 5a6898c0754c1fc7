import itertools
import random

import pytest
from hypothesis import strategies as st

from mincomp.zlattice import PeriodBasis


def random_basis(rng: random.Random, d: int, max_order: int, positive: bool = False) -> PeriodBasis:
    """Random full-rank basis with |det| <= max_order (upper triangular, then optionally sheared)."""
    while True:
        cols = []
        for j in range(d):
            col = [0] * d
            col[j] = rng.randint(1, 4)
            for i in range(j):
                col[i] = rng.randint(0, 3) if positive else rng.randint(-2, 2)
            cols.append(tuple(col))
        basis = PeriodBasis(tuple(cols))
        if abs(basis.det) <= max_order:
            return basis


def box(d, lo, hi):
    return itertools.product(range(lo, hi + 1), repeat=d)


small_int = st.integers(min_value=-6, max_value=6)


@st.composite
def bases(draw, d=None, max_order=16):
    d = draw(st.integers(1, 3)) if d is None else d
    seed = draw(st.integers(0, 10 ** 6))
    return random_basis(random.Random(seed), d, max_order)


@pytest.fixture
def rng():
    return random.Random(20261016)


# (Q1, Q, N) pairs in Z/2 x Z/2 with Q1 containing the identity and Q1 u Q a
# proper subset, each with a known minimal complement N
KLEIN_PAIRS = [
    ([(0, 0)], [(1, 0)], [(0, 0), (0, 1)]),
    ([(0, 0)], [(0, 1)], [(0, 0), (1, 0)]),
    ([(0, 0)], [(1, 1)], [(0, 0), (0, 1)]),
    ([(0, 0)], [(1, 0), (0, 1)], [(0, 0), (1, 1)]),
    ([(0, 0)], [(1, 0), (1, 1)], [(0, 0), (0, 1)]),
    ([(0, 0)], [(0, 1), (1, 1)], [(0, 0), (1, 0)]),
    ([(0, 0), (1, 0)], [(0, 1)], [(0, 0), (1, 1)]),
    ([(0, 0), (1, 0)], [(1, 1)], [(0, 0), (0, 1)]),
    ([(0, 0), (0, 1)], [(1, 0)], [(0, 0), (1, 1)]),
    ([(0, 0), (0, 1)], [(1, 1)], [(0, 0), (1, 0)]),
    ([(0, 0), (1, 1)], [(1, 0)], [(0, 0), (0, 1)]),
    ([(0, 0), (1, 1)], [(0, 1)], [(0, 0), (1, 0)]),
]
