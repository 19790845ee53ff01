"""Named small graphs and an isomorphism-free enumeration of tiny multigraphs."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .graph import DirectedGraph


def bouquet(n: int) -> DirectedGraph:
    """One vertex ``v`` with loops ``e1..en`` (``l`` when n == 1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 1:
        return DirectedGraph.build(["v"], [("l", "v", "v")])
    return DirectedGraph.build(["v"], [(f"e{i}", "v", "v") for i in range(1, n + 1)])


def circulant(n: int) -> DirectedGraph:
    """Directed cycle ``v1 -> v2 -> ... -> vn -> v1`` with ``e_j = v_j -> v_{j+1}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vs = [f"v{i}" for i in range(1, n + 1)]
    return DirectedGraph.build(vs, [(f"e{i}", vs[i - 1], vs[i % n]) for i in range(1, n + 1)])


def two_cycle() -> DirectedGraph:
    return circulant(2)


def line(n: int) -> DirectedGraph:
    """Path graph with ``n`` edges ``e1..en`` from ``v0`` to ``vn``."""
    vs = [f"v{i}" for i in range(n + 1)]
    return DirectedGraph.build(vs, [(f"e{i}", vs[i - 1], vs[i]) for i in range(1, n + 1)])


def desk_corpus() -> dict[str, DirectedGraph]:
    return {
        "G1": bouquet(1),
        "G1^2": bouquet(2),
        "H": two_cycle(),
        "C3": circulant(3),
        "C4": circulant(4),
    }


@lru_cache(maxsize=None)
def _shapes(m: int) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """Canonical (vertex count, sorted edge list) for multigraphs with exactly m edges, no isolated vertices."""
    seen = set()
    out = []
    for n in range(1, 2 * m + 1):
        pairs = [(i, j) for i in range(n) for j in range(n)]
        perms = list(itertools.permutations(range(n)))
        for edges in itertools.combinations_with_replacement(pairs, m):
            if len({x for e in edges for x in e}) != n:
                continue
            canon = min(tuple(sorted((p[i], p[j]) for i, j in edges)) for p in perms)
            if canon not in seen:
                seen.add(canon)
                out.append((n, canon))
    return tuple(out)


def small_graphs(max_edges: int) -> list[DirectedGraph]:
    """Every directed multigraph with 1..max_edges edges and no isolated vertex, up to isomorphism."""
    out = []
    for m in range(1, max_edges + 1):
        for n, edges in _shapes(m):
            vs = [f"v{i + 1}" for i in range(n)]
            out.append(DirectedGraph.build(vs, [(f"e{k + 1}", vs[i], vs[j]) for k, (i, j) in enumerate(edges)]))
    return out
