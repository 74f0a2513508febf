"""Shared hypothesis strategies and small loop collections for the tests."""

from functools import lru_cache

from hypothesis import strategies as st

from loopkit.core import LoopTable
from loopkit.search import all_loops


@lru_cache(maxsize=None)
def loops_of_order(n: int) -> tuple:
    return tuple(all_loops(n))


@lru_cache(maxsize=None)
def small_loops(max_order: int = 5) -> tuple:
    return tuple(q for n in range(1, max_order + 1) for q in loops_of_order(n))


@st.composite
def loops(draw, max_order=6):
    """A normalized loop, optionally relabeled by a permutation fixing 0."""
    n = draw(st.integers(1, max_order))
    q = draw(st.sampled_from(loops_of_order(n)))
    perm = [0] + draw(st.permutations(range(1, n)))
    return q.relabel(perm) if draw(st.booleans()) else q


def table(rows) -> LoopTable:
    return LoopTable(rows)
