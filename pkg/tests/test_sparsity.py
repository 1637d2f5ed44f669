from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from rigidbar.graph import LoopedGraph, add_uniform_loops, induced_count
from rigidbar.sparsity import (
    SizeCapError,
    SparsityParams,
    brute_force_sparse,
    has_tight_spanning_subgraph,
    is_tight,
    pebble_game,
)

from test_graph import K4, TRIANGLE, looped_graphs


def is_sparse_by_enumeration(g, k, elements=None):
    sub = g if elements is None else g.spanning_subgraph(elements)
    return all(
        induced_count(sub, xs) <= k * len(xs)
        for r in range(1, g.n + 1)
        for xs in combinations(range(g.n), r)
    )


EXAMPLES = [
    (TRIANGLE, 1, True, 3),
    (LoopedGraph.build(1, (), [0, 0, 0]), 2, False, 2),
    (add_uniform_loops(K4, 1), 2, False, 8),
]


@pytest.mark.parametrize("g, k, sparse, rank", EXAMPLES)
@pytest.mark.parametrize("decide", [pebble_game, brute_force_sparse])
def test_verdict_examples(decide, g, k, sparse, rank):
    verdict = decide(g, k)
    assert verdict.is_sparse is sparse
    assert verdict.matroid_rank == rank
    assert (verdict.violation is None) == sparse
    if not sparse:
        assert induced_count(g, verdict.violation) > k * len(verdict.violation)


def test_loop_overflow_violation_is_the_vertex():
    v = pebble_game(LoopedGraph.build(2, ((0, 1),), [1, 1, 1]), 2)
    assert v.violation == frozenset({1})


def test_params_validation():
    with pytest.raises(ValueError):
        SparsityParams(0)
    assert pebble_game(TRIANGLE, SparsityParams(1)).is_sparse


def test_is_tight_examples():
    assert is_tight(LoopedGraph.build(1, (), [0, 0]), 2)
    assert not is_tight(LoopedGraph(2), 2)
    assert is_tight(add_uniform_loops(TRIANGLE, 1), 2)


def test_tight_spanning_subgraph_examples():
    lifted = add_uniform_loops(K4, 2)
    h = has_tight_spanning_subgraph(lifted, 2)
    assert h is not None and not h.edges and len(h.loops) == 8
    assert has_tight_spanning_subgraph(LoopedGraph.build(3, TRIANGLE.edges, [0]), 2) is None
    t1 = add_uniform_loops(TRIANGLE, 1)
    assert has_tight_spanning_subgraph(t1, 2) == t1


def test_brute_force_size_cap():
    with pytest.raises(SizeCapError):
        brute_force_sparse(LoopedGraph(21), 1)
    big = LoopedGraph.build(3, TRIANGLE.edges, [0] * 10 + [1] * 10)
    assert brute_force_sparse(big, 2).matroid_rank is None


@settings(max_examples=300, deadline=None)
@given(looped_graphs(max_n=6, max_loops=2), st.integers(1, 3))
def test_pebble_game_matches_brute_force(g, k):
    if g.num_elements > 14:
        return
    pg, bf = pebble_game(g, k), brute_force_sparse(g, k)
    assert pg.is_sparse == bf.is_sparse == is_sparse_by_enumeration(g, k)
    assert pg.matroid_rank == bf.matroid_rank
    assert is_sparse_by_enumeration(g, k, pg.accepted)
    assert is_sparse_by_enumeration(g, k, bf.accepted)
    if pg.violation is not None:
        assert induced_count(g, pg.violation) > k * len(pg.violation)


@settings(max_examples=150, deadline=None)
@given(looped_graphs(max_n=5, max_loops=2), st.integers(1, 3))
def test_tight_subgraph_is_tight(g, k):
    h = has_tight_spanning_subgraph(g, k)
    if h is None:
        assert pebble_game(g, k).matroid_rank < k * g.n
    else:
        assert h.n == g.n and is_tight(h, k)
        assert set(h.elements()) <= set(g.elements())


@settings(max_examples=100, deadline=None)
@given(looped_graphs(max_n=5, max_loops=2), st.integers(1, 3))
def test_monotone_under_insertion(g, k):
    base = pebble_game(g, k)
    grown = pebble_game(g.with_loop(0), k)
    assert grown.matroid_rank >= base.matroid_rank
    if not base.is_sparse:
        assert not grown.is_sparse


@settings(max_examples=60, deadline=None)
@given(looped_graphs(max_n=4, max_loops=2), st.integers(1, 2))
def test_exchange_axiom(g, k):
    elements = g.elements()
    if len(elements) > 9:
        elements = elements[:9]
    indep = [
        frozenset(s)
        for r in range(len(elements) + 1)
        for s in combinations(elements, r)
        if is_sparse_by_enumeration(g, k, s)
    ]
    for a in indep:
        for b in indep:
            if len(a) < len(b):
                assert any(is_sparse_by_enumeration(g, k, a | {x}) for x in b - a)
