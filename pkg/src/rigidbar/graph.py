"""Looped simple graphs and the purely combinatorial predicates on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Union


class GraphError(ValueError):
    """Malformed graph input or an invalid vertex/element reference."""


class Edge(NamedTuple):
    u: int
    v: int


class Loop(NamedTuple):
    id: int


ElementId = Union[Edge, Loop]


def element_key(el: ElementId):
    """Deterministic scan order: loops by id, then edges by endpoint pair."""
    if isinstance(el, Loop):
        return (0, el.id, 0)
    return (1, el.u, el.v)


@dataclass(frozen=True)
class LoopedGraph:
    """G = (V, E, L) with vertices ``0..n-1``.

    ``edges`` holds normalised pairs ``(u, v)`` with ``u < v``; ``loops`` holds
    ``(loop_id, vertex)`` records.  Several loops may sit at one vertex.
    """

    n: int
    edges: tuple = ()
    loops: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        edges = []
        seen = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise GraphError(f"edge ({u}, {v}) joins a vertex to itself; use a loop")
            for x in (u, v):
                if not 0 <= x < self.n:
                    raise GraphError(f"edge endpoint {x} is not a vertex")
            pair = Edge(min(u, v), max(u, v))
            if pair in seen:
                raise GraphError(f"parallel edge {tuple(pair)}")
            seen.add(pair)
            edges.append(pair)
        loops = []
        ids = set()
        for lid, v in self.loops:
            lid, v = int(lid), int(v)
            if not 0 <= v < self.n:
                raise GraphError(f"loop {lid} sits at unknown vertex {v}")
            if lid in ids:
                raise GraphError(f"duplicate loop id {lid}")
            ids.add(lid)
            loops.append((lid, v))
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "loops", tuple(loops))

    @classmethod
    def build(cls, n: int, edges: Iterable = (), loop_vertices: Iterable[int] = ()) -> "LoopedGraph":
        """Build from a list of loop vertices; loop ids follow list position."""
        return cls(n, tuple(edges), tuple(enumerate(loop_vertices)))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_elements(self) -> int:
        return len(self.edges) + len(self.loops)

    @cached_property
    def loop_vertex(self) -> dict:
        return dict(self.loops)

    @cached_property
    def adjacency(self) -> tuple:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def loop_counts(self) -> list:
        counts = [0] * self.n
        for _, v in self.loops:
            counts[v] += 1
        return counts

    def elements(self) -> list:
        """All elements of E ∪ L, loops first (by id) then edges."""
        out = [Loop(lid) for lid, _ in self.loops] + list(self.edges)
        return sorted(out, key=element_key)

    def endpoints(self, el: ElementId) -> tuple:
        if isinstance(el, Loop):
            return (self.loop_vertex[el.id],)
        return (el.u, el.v)

    def has_element(self, el: ElementId) -> bool:
        if isinstance(el, Loop):
            return el.id in self.loop_vertex
        return el in set(self.edges)

    def next_loop_id(self) -> int:
        return max((lid for lid, _ in self.loops), default=-1) + 1

    def spanning_subgraph(self, elements: Iterable[ElementId]) -> "LoopedGraph":
        """Subgraph on all vertices keeping only ``elements``."""
        keep = set(elements)
        for el in keep:
            if not self.has_element(el):
                raise GraphError(f"{el} is not an element of the graph")
        edges = tuple(e for e in self.edges if e in keep)
        loops = tuple((lid, v) for lid, v in self.loops if Loop(lid) in keep)
        return LoopedGraph(self.n, edges, loops)

    def without(self, *elements: ElementId) -> "LoopedGraph":
        drop = set(elements)
        for el in drop:
            if not self.has_element(el):
                raise GraphError(f"{el} is not an element of the graph")
        return self.spanning_subgraph(el for el in self.elements() if el not in drop)

    def with_edge(self, u: int, v: int) -> "LoopedGraph":
        return LoopedGraph(self.n, self.edges + ((u, v),), self.loops)

    def with_loop(self, v: int) -> "LoopedGraph":
        return LoopedGraph(self.n, self.edges, self.loops + ((self.next_loop_id(), v),))

    def with_vertex(self) -> "LoopedGraph":
        return LoopedGraph(self.n + 1, self.edges, self.loops)

    def underlying_simple(self) -> "LoopedGraph":
        return LoopedGraph(self.n, self.edges, ())

    def induced(self, xs: Iterable[int]) -> "LoopedGraph":
        """Induced subgraph, relabelled to ``0..|X|-1`` in sorted order.  Loop ids kept."""
        order = sorted(set(xs))
        pos = {v: i for i, v in enumerate(order)}
        edges = tuple((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos)
        loops = tuple((lid, pos[v]) for lid, v in self.loops if v in pos)
        return LoopedGraph(len(order), edges, loops)

    # JSON interchange: {"vertices": n, "edges": [[u, v], ...], "loops": [v, ...]}

    def to_dict(self) -> dict:
        loops = [v for _, v in sorted(self.loops)]
        return {"vertices": self.n, "edges": [list(e) for e in self.edges], "loops": loops}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data) -> "LoopedGraph":
        if not isinstance(data, dict) or set(data) - {"vertices", "edges", "loops"}:
            raise GraphError("graph JSON must be an object with keys vertices, edges, loops")
        n = data.get("vertices")
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphError("'vertices' must be an integer")
        edges = data.get("edges", [])
        loops = data.get("loops", [])
        if not all(isinstance(e, list) and len(e) == 2 and all(_is_int(x) for x in e) for e in edges):
            raise GraphError("'edges' must be a list of integer pairs")
        if not all(_is_int(v) for v in loops):
            raise GraphError("'loops' must be a list of vertex ids")
        return cls.build(n, [tuple(e) for e in edges], loops)

    @classmethod
    def loads(cls, text: str) -> "LoopedGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_subset(g: LoopedGraph, xs) -> frozenset:
    xs = frozenset(xs)
    for v in xs:
        if not (_is_int(v) and 0 <= v < g.n):
            raise GraphError(f"unknown vertex {v!r}")
    return xs


def induced_count(g: LoopedGraph, xs: Iterable[int]) -> int:
    """i(X): edges with both ends in X plus loops at vertices of X."""
    xs = _check_subset(g, xs)
    edges = sum(1 for u, v in g.edges if u in xs and v in xs)
    loops = sum(1 for _, v in g.loops if v in xs)
    return edges + loops


def add_uniform_loops(g: LoopedGraph, k: int) -> LoopedGraph:
    """G^[k]: ``k`` fresh loops at every vertex, original loop ids untouched."""
    if k < 0:
        raise GraphError("k must be nonnegative")
    start = g.next_loop_id()
    fresh = tuple((start + i * g.n + v, v) for i in range(k) for v in range(g.n))
    return LoopedGraph(g.n, g.edges, g.loops + fresh)


def contains_clique(g: LoopedGraph, k: int) -> Optional[frozenset]:
    """A vertex set spanning K_k in the underlying simple graph, or None.

    Branches on candidate extensions inside common neighbourhoods after
    discarding vertices of degree < k-1.  Exponential in the worst case,
    which is fine for the small k (= d+2) used here.
    """
    if k < 1:
        raise GraphError("clique size must be positive")
    if k == 1:
        return frozenset([0]) if g.n else None
    adj = g.adjacency
    alive = {v for v in g.vertices if len(adj[v]) >= k - 1}
    # iteratively peel vertices that cannot sit in a K_k
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if len(adj[v] & alive) < k - 1:
                alive.discard(v)
                changed = True
    return _extend_clique((), frozenset(alive), k, adj)


def _extend_clique(chosen, candidates, k, adj):
    if len(chosen) == k:
        return frozenset(chosen)
    if len(chosen) + len(candidates) < k:
        return None
    for v in sorted(candidates):
        found = _extend_clique(
            chosen + (v,), frozenset(w for w in candidates & adj[v] if w > v), k, adj
        )
        if found is not None:
            return found
    return None


def clique_through_edge(g: LoopedGraph, u: int, v: int, k: int) -> Optional[frozenset]:
    """A K_k containing both u and v once uv is present; uv itself need not be in g."""
    common = g.adjacency[u] & g.adjacency[v]
    if k == 2:
        return frozenset((u, v))
    sub = _extend_clique((), frozenset(common), k - 2, g.adjacency)
    return None if sub is None else sub | {u, v}


def min_loop_degree(g: LoopedGraph) -> int:
    if g.n == 0:
        raise GraphError("min_loop_degree of the empty graph is undefined")
    return min(g.loop_counts())


def component_vertex_sets(g: LoopedGraph) -> list:
    seen = [False] * g.n
    comps = []
    for s in g.vertices:
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
                    comp.append(y)
        comps.append(sorted(comp))
    return comps


def connected_components(g: LoopedGraph) -> list:
    """Components as relabelled induced subgraphs; loops travel with their vertex."""
    return [g.induced(c) for c in component_vertex_sets(g)]
