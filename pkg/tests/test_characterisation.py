from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from rigidbar.algebra import RandomSource, rank
from rigidbar.characterisation import (
    CliqueFound,
    SparsityViolation,
    TightSubgraph,
    combinatorial_independent,
    combinatorial_rigid,
    conjecture_instance_check,
    one_extension,
    pinned_sufficiency,
    tight_spanning_subgraph,
    zero_extension,
)
from rigidbar.generate import hypothesis_instance, one_extension_chain, zero_extension_chain
from rigidbar.graph import Edge, GraphError, Loop, LoopedGraph, add_uniform_loops, contains_clique
from rigidbar.rigidity import HypothesisError, build_pinned_matrix, is_independent, is_rigid, random_realisation
from rigidbar.sparsity import has_tight_spanning_subgraph, is_tight

from test_graph import K4, K5, TRIANGLE


def complete(n):
    return LoopedGraph(n, tuple(combinations(range(n), 2)))


def test_combinatorial_independent_examples():
    rs = RandomSource(1)
    t1 = add_uniform_loops(TRIANGLE, 1)
    v = combinatorial_independent(t1, 2)
    assert v.hypothesis_ok and v.verdict is True
    assert is_independent(t1, 2, rs)
    k4 = combinatorial_independent(add_uniform_loops(K4, 1), 2)
    assert k4.verdict is False
    assert isinstance(k4.witness, (CliqueFound, SparsityViolation))
    bare = combinatorial_independent(TRIANGLE, 2)
    assert bare.hypothesis_ok is False and bare.verdict is None


def test_clique_is_the_only_obstruction_for_odd_d():
    # K_5 with one loop per vertex is 3-tight yet dependent in R^3
    g = add_uniform_loops(K5, 1)
    assert is_tight(g, 3)
    v = combinatorial_independent(g, 3)
    assert v.verdict is False and v.witness == CliqueFound(frozenset(range(5)))
    assert not is_independent(g, 3, RandomSource(2))


def test_dimension_guard():
    with pytest.raises(ValueError):
        combinatorial_independent(TRIANGLE, 1)
    with pytest.raises(ValueError):
        combinatorial_rigid(TRIANGLE, 1)


def test_combinatorial_rigid_examples():
    rs = RandomSource(3)
    single = combinatorial_rigid(LoopedGraph.build(1, (), [0, 0, 0]), 3)
    assert single.verdict is True and len(single.witness.graph.loops) == 3
    t1 = add_uniform_loops(TRIANGLE, 1)
    v = combinatorial_rigid(t1, 2)
    assert v.verdict is True and v.witness.graph.num_elements == 6
    assert is_rigid(t1, 2, rs)
    two = combinatorial_rigid(LoopedGraph.build(2, (), [0, 1]), 2)
    assert two.verdict is False


def test_rigid_witness_avoids_clique():
    # K_5^[1] in R^3 has 15 = 3|V| elements but is dependent; a richer graph can still be rigid
    g = add_uniform_loops(K5, 1).with_loop(0).with_loop(1)
    v = combinatorial_rigid(g, 3)
    assert v.verdict is True
    assert contains_clique(v.witness.graph, 5) is None
    assert is_rigid(g, 3, RandomSource(4))
    assert combinatorial_rigid(add_uniform_loops(K5, 1), 3).verdict is False


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_routes_agree(seed, d):
    rs = RandomSource(seed)
    g = hypothesis_instance(rs, d, 7)
    assert combinatorial_independent(g, d).verdict == is_independent(g, d, rs)
    rig = combinatorial_rigid(g, d)
    assert rig.verdict == is_rigid(g, d, rs)
    if rig.verdict:
        h = rig.witness.graph
        assert isinstance(rig.witness, TightSubgraph)
        assert is_tight(h, d) and contains_clique(h, d + 2) is None and is_rigid(h, d, rs)


def test_pinned_sufficiency_examples():
    edge = LoopedGraph(2, ((0, 1),))
    assert pinned_sufficiency(edge, {0, 1}, 2) is False
    assert pinned_sufficiency(LoopedGraph(1), {0}, 2) is True
    path = LoopedGraph(3, ((0, 1), (1, 2)))
    assert pinned_sufficiency(path, {0, 2}, 2) is False
    # the condition is only sufficient: the path is in fact pinned independent
    m = build_pinned_matrix(path, {0, 2}, random_realisation(path, 2, RandomSource(5)))
    assert rank(m) == 2
    with pytest.raises(GraphError):
        pinned_sufficiency(add_uniform_loops(path, 1), {0}, 2)


def test_pinned_sufficiency_odd_clique_condition():
    # K_5 unpinned in R^3: 2-sparse in the lifted count but contains K_{d+2}
    assert pinned_sufficiency(K5, set(), 3) is False
    assert pinned_sufficiency(K5.without(Edge(0, 1)), set(), 3) is True


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_pinned_sufficiency_sound(seed, d):
    rs = RandomSource(seed)
    n = rs.randint(1, 6)
    g = LoopedGraph(n, tuple(p for p in combinations(range(n), 2) if rs.random() < 0.5))
    pinned = {v for v in range(n) if rs.random() < 0.3}
    if pinned_sufficiency(g, pinned, d):
        assert rank(build_pinned_matrix(g, pinned, random_realisation(g, d, rs))) == len(g.edges)


def test_tight_subgraph_vs_lifted_rigidity():
    rs = RandomSource(6)
    for t in (1, 2):
        res = conjecture_instance_check(LoopedGraph.build(1, (), [0] * t), t, 2 * t, rs)
        assert res.algebraic and res.combinatorial and res.agree
    res = conjecture_instance_check(TRIANGLE, 1, 2, rs)
    assert res.algebraic and res.combinatorial
    res = conjecture_instance_check(LoopedGraph(2), 1, 2, rs)
    assert not res.algebraic and not res.combinatorial and res.agree
    with pytest.raises(HypothesisError):
        conjecture_instance_check(TRIANGLE, 2, 2, rs)
    res = conjecture_instance_check(TRIANGLE, 2, 2, rs, allow_open_range=True)
    assert res.algebraic is False


@pytest.mark.parametrize("t", [2, 3])
def test_boundary_dimension_needs_clique_exclusion(t):
    # K_{2t+1} is t-tight, but K_{2t+1}^[t-1] contains K_{d+2} for d = 2t-1 and is not rigid
    d = 2 * t - 1
    g = complete(2 * t + 1)
    assert has_tight_spanning_subgraph(g, t) is not None
    assert tight_spanning_subgraph(g, t, d) is None
    res = conjecture_instance_check(g, t, d, RandomSource(7))
    assert res.algebraic is False and res.agree


def test_zero_extension_examples():
    g = zero_extension(TRIANGLE, [0, 1], 2)
    assert g.n == 4 and set(g.edges) == set(TRIANGLE.edges) | {(0, 3), (1, 3)}
    pendant = zero_extension(LoopedGraph(1), [0], 1)
    assert pendant.edges == ((0, 1),)
    with pytest.raises(GraphError):
        zero_extension(TRIANGLE, [0], 2)
    with pytest.raises(GraphError):
        zero_extension(TRIANGLE, [0, 0], 2)


def test_one_extension_examples():
    g = one_extension(TRIANGLE, Edge(0, 1), [2], 2)
    assert g.n == 4 and len(g.edges) == 5
    assert (0, 1) not in set(g.edges)
    assert g.neighbors(3) == {0, 1, 2}
    path = LoopedGraph(2, ((0, 1),))
    longer = one_extension(path, Edge(0, 1), [], 1)
    assert set(longer.edges) == {(0, 2), (1, 2)}
    with pytest.raises(GraphError):
        one_extension(LoopedGraph(3, ((0, 1),)), Edge(1, 2), [0], 2)
    with pytest.raises(GraphError):
        one_extension(TRIANGLE, Edge(0, 1), [0], 2)
    with pytest.raises(GraphError):
        one_extension(TRIANGLE, Loop(0), [2], 2)


@pytest.mark.parametrize("d", [2, 3])
def test_extension_chains_are_rigid(d):
    rs = RandomSource(9)
    for chain in (zero_extension_chain(rs, d, 6), one_extension_chain(rs, d, 6)):
        assert chain.n == 6 and chain.num_elements == d * 6
        assert is_rigid(chain, d, rs) and is_independent(chain, d, rs)
