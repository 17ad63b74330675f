"""Isomorphism classes of small simple graphs, built by one-vertex extension.

Every graph on ``k + 1`` vertices is some graph on ``k`` vertices plus a
vertex with some neighbour set, so extending one representative per class
and deduplicating by canonical form reaches every class.
"""

from __future__ import annotations

from functools import lru_cache

from circlegraphs.graphs import LoopedGraph, canonical_form


@lru_cache(maxsize=None)
def graphs_on(n: int) -> tuple[LoopedGraph, ...]:
    if n == 0:
        return (LoopedGraph.empty(0),)
    out = {}
    for g in graphs_on(n - 1):
        for nb in range(1 << (n - 1)):
            rows = [r | ((nb >> i & 1) << (n - 1)) for i, r in enumerate(g.rows)] + [nb]
            h = LoopedGraph(n, tuple(rows))
            key = canonical_form(h).key
            if key not in out:
                out[key] = h
    return tuple(out[k] for k in sorted(out))


def graphs_up_to(n: int) -> list[LoopedGraph]:
    return [g for k in range(1, n + 1) for g in graphs_on(k)]
