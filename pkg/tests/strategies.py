"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from hypothesis import strategies as st

from circlegraphs.graphs import LoopedGraph


@st.composite
def simple_graphs(draw, min_n: int = 1, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return LoopedGraph.from_edges(n, [e for e, c in zip(pairs, chosen) if c])


@st.composite
def looped_graphs(draw, min_n: int = 1, max_n: int = 6):
    g = draw(simple_graphs(min_n, max_n))
    loops = draw(st.integers(0, (1 << g.n) - 1))
    return LoopedGraph(g.n, tuple(r | ((loops >> i & 1) << i) for i, r in enumerate(g.rows)))


@st.composite
def words(draw, min_letters: int = 1, max_letters: int = 6):
    """A double occurrence word on letters ``v0, v1, ...``."""
    k = draw(st.integers(min_letters, max_letters))
    letters = [f"v{i}" for i in range(k)] * 2
    return draw(st.permutations(letters))


@st.composite
def skew_signed(draw, min_n: int = 1, max_n: int = 5):
    """Skew-symmetric matrix with entries in {-1, 0, 1} as a list of lists."""
    n = draw(st.integers(min_n, max_n))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(st.sampled_from((-1, 0, 1)))
            a[i][j], a[j][i] = x, -x
    return a
