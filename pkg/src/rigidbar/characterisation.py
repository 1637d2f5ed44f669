"""Combinatorial independence/rigidity tests under the loop-degree hypothesis.

With at least floor(d/2) loops at every vertex, a looped simple graph is
independent in R^d exactly when it is d-sparse and K_{d+2}-free.  Everything
here is decided by counting (pebble game) and clique search; the algebraic
route in :mod:`rigidbar.rigidity` is the independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .algebra import DEFAULT_TRIALS, RandomSource
from .graph import (
    Edge,
    ElementId,
    GraphError,
    Loop,
    LoopedGraph,
    add_uniform_loops,
    clique_through_edge,
    contains_clique,
    min_loop_degree,
)
from .rigidity import HypothesisError, estimate_generic_rank
from .sparsity import PebbleGame, has_tight_spanning_subgraph, pebble_game


@dataclass(frozen=True)
class SparsityViolation:
    vertices: frozenset


@dataclass(frozen=True)
class CliqueFound:
    vertices: frozenset


@dataclass(frozen=True)
class TightSubgraph:
    graph: LoopedGraph


Witness = Union[SparsityViolation, CliqueFound, TightSubgraph, None]


@dataclass(frozen=True)
class CharacterisationVerdict:
    """``verdict`` is None whenever ``hypothesis_ok`` is False."""

    verdict: Optional[bool]
    hypothesis_ok: bool
    witness: Witness = None


def _check_dim(d: int) -> None:
    if d < 2:
        raise ValueError("the combinatorial characterisation needs d >= 2")


def _hypothesis(g: LoopedGraph, d: int) -> bool:
    return g.n == 0 or min_loop_degree(g) >= d // 2


def combinatorial_independent(g: LoopedGraph, d: int) -> CharacterisationVerdict:
    """Independent in R^d iff d-sparse and K_{d+2}-free (given the loop hypothesis)."""
    _check_dim(d)
    if not _hypothesis(g, d):
        return CharacterisationVerdict(None, False)
    sp = pebble_game(g, d)
    if not sp.is_sparse:
        return CharacterisationVerdict(False, True, SparsityViolation(sp.violation))
    clique = contains_clique(g, d + 2)
    if clique is not None:
        return CharacterisationVerdict(False, True, CliqueFound(clique))
    return CharacterisationVerdict(True, True)


def greedy_basis(g: LoopedGraph, k: int, clique_size: Optional[int] = None,
                 seed: Iterable[ElementId] = ()) -> list:
    """Greedy maximal subset that is k-sparse and (optionally) K_{clique_size}-free.

    ``seed`` elements are inserted first and must themselves be admissible;
    the rest follow in scan order (loops by id, then edges).
    """
    seed = list(seed)
    game = PebbleGame(g.n, k)
    simple = LoopedGraph(g.n)
    chosen = []
    rest = [el for el in g.elements() if el not in set(seed)]
    for i, el in enumerate(seed + rest):
        if isinstance(el, Edge) and clique_size is not None:
            if clique_through_edge(simple, el.u, el.v, clique_size) is not None:
                continue
        ok, _ = game.try_insert(el, g.endpoints(el))
        if not ok:
            if i < len(seed):
                raise ValueError("seed set is not admissible")
            continue
        if isinstance(el, Edge):
            simple = simple.with_edge(el.u, el.v)
        chosen.append(el)
    return chosen


def combinatorial_rigid(g: LoopedGraph, d: int) -> CharacterisationVerdict:
    """Rigid in R^d iff a spanning d-tight, K_{d+2}-free subgraph exists.

    Seeds with floor(d/2) loops per vertex and extends greedily, so the
    witness keeps the loop hypothesis throughout.
    """
    _check_dim(d)
    if not _hypothesis(g, d):
        return CharacterisationVerdict(None, False)
    per_vertex = [0] * g.n
    seed = []
    for lid, v in sorted(g.loops):
        if per_vertex[v] < d // 2:
            per_vertex[v] += 1
            seed.append(Loop(lid))
    chosen = greedy_basis(g, d, d + 2, seed)
    if len(chosen) == d * g.n:
        return CharacterisationVerdict(True, True, TightSubgraph(g.spanning_subgraph(chosen)))
    return CharacterisationVerdict(False, True)


def pinned_sufficiency(g_simple: LoopedGraph, pinned: Iterable[int], d: int) -> bool:
    """Sufficient test for pinned independence of (G, P) in R^d.

    Adds d loops at each pinned vertex and floor(d/2) elsewhere, then asks for
    d-sparsity, plus K_{d+2}-freeness when d is odd.  False is inconclusive.
    """
    _check_dim(d)
    if g_simple.loops:
        raise GraphError("pinned_sufficiency takes a loopless graph")
    pinned = set(pinned)
    if any(not 0 <= v < g_simple.n for v in pinned):
        raise GraphError("pinned set contains an unknown vertex")
    loops = []
    for v in g_simple.vertices:
        loops += [v] * (d if v in pinned else d // 2)
    augmented = LoopedGraph.build(g_simple.n, g_simple.edges, loops)
    if not pebble_game(augmented, d).is_sparse:
        return False
    return d % 2 == 0 or contains_clique(g_simple, d + 2) is None


@dataclass(frozen=True)
class InstanceCheck:
    algebraic: bool
    combinatorial: bool
    agree: bool
    bound: float = 0.0


def tight_spanning_subgraph(g: LoopedGraph, t: int, d: int) -> Optional[LoopedGraph]:
    """Spanning t-tight subgraph H of g such that H^[d-t] is K_{d+2}-free.

    For d >= 2t every t-sparse graph is already K_{d+2}-free, so this is the
    plain count condition; at d = 2t-1 the clique K_{2t+1} is itself t-tight
    and has to be excluded explicitly.
    """
    if d >= 2 * t:
        return has_tight_spanning_subgraph(g, t)
    chosen = greedy_basis(g, t, d + 2)
    return g.spanning_subgraph(chosen) if len(chosen) == t * g.n else None


def conjecture_instance_check(g: LoopedGraph, t: int, d: int, rs: RandomSource,
                              trials: int = DEFAULT_TRIALS, allow_open_range: bool = False) -> InstanceCheck:
    """Compare rigidity of G^[d-t] in R^d with existence of a tight spanning subgraph.

    Refuses d < 2t-1 unless ``allow_open_range`` is set; there the
    comparison is the bare t-tight count and nothing is claimed about it.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    if d < 2:
        raise ValueError("d must be at least 2")
    in_range = d >= 2 * t - 1
    if not in_range and not allow_open_range:
        raise HypothesisError(f"d={d} < 2t-1={2 * t - 1}: outside the proved range")
    lifted = add_uniform_loops(g, d - t)
    est, _ = estimate_generic_rank(lifted, d, rs, trials)
    algebraic = est.rank == d * g.n
    if in_range:
        combinatorial = tight_spanning_subgraph(g, t, d) is not None
    else:
        combinatorial = has_tight_spanning_subgraph(g, t) is not None
    return InstanceCheck(algebraic, combinatorial, algebraic == combinatorial, est.bound)


def zero_extension(g: LoopedGraph, attach: Iterable[int], d: int) -> LoopedGraph:
    """Add a new vertex joined to the d vertices in ``attach``."""
    attach = list(attach)
    if len(set(attach)) != len(attach):
        raise GraphError("duplicate attachment vertex")
    if len(attach) != d:
        raise GraphError(f"0-extension needs exactly {d} attachment vertices")
    if any(not 0 <= v < g.n for v in attach):
        raise GraphError("attachment vertex not in graph")
    new = g.n
    return LoopedGraph(g.n + 1, g.edges + tuple((v, new) for v in attach), g.loops)


def one_extension(g: LoopedGraph, edge: ElementId, extra: Iterable[int], d: int) -> LoopedGraph:
    """Delete edge xy and add a vertex adjacent to x, y and the d-1 ``extra`` vertices."""
    if not isinstance(edge, tuple) or isinstance(edge, Loop) or len(edge) != 2:
        raise GraphError("1-extension needs an edge")
    x, y = sorted(edge)
    edge = Edge(x, y)
    if edge not in set(g.edges):
        raise GraphError(f"edge {tuple(edge)} is not in the graph")
    extra = list(extra)
    if len(set(extra)) != len(extra) or len(extra) != d - 1:
        raise GraphError(f"1-extension needs {d - 1} distinct extra vertices")
    if x in extra or y in extra or any(not 0 <= v < g.n for v in extra):
        raise GraphError("extra vertices must be graph vertices other than the edge ends")
    new = g.n
    edges = tuple(e for e in g.edges if e != edge) + tuple((v, new) for v in [x, y] + extra)
    return LoopedGraph(g.n + 1, edges, g.loops)

