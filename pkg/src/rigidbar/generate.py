"""Seeded instance generators: random looped graphs and extension chains."""

from __future__ import annotations

from itertools import combinations

from .algebra import RandomSource
from .characterisation import one_extension, zero_extension
from .graph import Edge, GraphError, LoopedGraph


def random_looped_graph(rs: RandomSource, n: int, edge_prob: float, min_loops: int = 0,
                        max_loops: int = 0, clique: int = 0) -> LoopedGraph:
    """G(n, p) plus min_loops..max_loops loops per vertex, optionally with a planted K_clique."""
    if n < 1:
        raise GraphError("need at least one vertex")
    edges = {pair for pair in combinations(range(n), 2) if rs.random() < edge_prob}
    if 2 <= clique <= n:
        edges |= set(combinations(sorted(rs.sample(range(n), clique)), 2))
    loops = []
    for v in range(n):
        loops += [v] * rs.randint(min_loops, max(min_loops, max_loops))
    return LoopedGraph.build(n, sorted(edges), loops)


def hypothesis_instance(rs: RandomSource, d: int, max_vertices: int = 10) -> LoopedGraph:
    """Random graph with at least floor(d/2) loops per vertex, mixing sparse, dense and clique cases."""
    base = d // 2
    if d + 2 <= max_vertices and rs.random() < 0.25:
        # planted K_{d+2} over a sparse background: the clique is often the only obstruction
        n = rs.randint(d + 2, max_vertices)
        return random_looped_graph(rs, n, 0.3 * rs.random(), base, base, d + 2)
    n = rs.randint(1, max_vertices)
    extra = rs.choice([0, 0, 1, 1, 2, d - base])
    # element count lands near the d|V| threshold
    loops_mean = base + extra / 2
    target = (0.6 + 0.5 * rs.random()) * d * n - loops_mean * n
    pairs = n * (n - 1) // 2
    p = min(1.0, max(0.0, target / pairs)) if pairs else 0.0
    return random_looped_graph(rs, n, p, base, base + extra)


def conjecture_instance(rs: RandomSource, t: int, max_vertices: int = 8) -> LoopedGraph:
    """Random looped graph whose size hovers around t|V| so both verdicts occur."""
    n = rs.randint(1, max_vertices)
    max_edges = n * (n - 1) // 2
    # aim the edge density at roughly t per vertex after loops
    target = max(0.0, t * n - t * n * rs.random() * 0.6)
    p = min(1.0, target / max_edges * (0.5 + rs.random())) if max_edges else 0.0
    clique = 2 * t + 1 if rs.random() < 0.1 else 0
    return random_looped_graph(rs, n, p, 0, t, clique)


def zero_extension_chain(rs: RandomSource, d: int, vertices: int) -> LoopedGraph:
    """Start at one vertex with d loops and apply 0-extensions up to ``vertices``.

    While fewer than d vertices exist the new vertex joins all of them and
    takes loops for the missing degree, so every step adds exactly d elements.
    """
    if vertices < 1:
        raise GraphError("need at least one vertex")
    g = LoopedGraph.build(1, (), [0] * d)
    while g.n < vertices:
        if g.n >= d:
            g = zero_extension(g, sorted(rs.sample(range(g.n), d)), d)
        else:
            new = g.n
            g = LoopedGraph(g.n + 1, g.edges + tuple((v, new) for v in range(new)), g.loops)
            for _ in range(d - new):
                g = g.with_loop(new)
    return g


def one_extension_chain(rs: RandomSource, d: int, vertices: int) -> LoopedGraph:
    """0-extensions until the graph can host a 1-extension, then 1-extensions."""
    if vertices < 1:
        raise GraphError("need at least one vertex")
    g = zero_extension_chain(rs, d, min(vertices, d + 1))
    while g.n < vertices:
        x, y = rs.choice(list(g.edges))
        others = [v for v in range(g.n) if v not in (x, y)]
        g = one_extension(g, Edge(x, y), sorted(rs.sample(others, d - 1)), d)
    return g
