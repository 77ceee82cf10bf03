from __future__ import annotations

from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from permsandpile.errors import NotConnectedError
from permsandpile.permcore import Permutation, build_perm_graph
from permsandpile.trees import (
    LabeledTree, all_labeled_trees, bareiss_determinant, enumerate_spanning_trees,
    enumerate_spanning_trees_naive, fully_tier, is_spanning_tiered, is_tiering,
    reduced_laplacian, root_at, rooted_from_parents, spanning_tree_count,
)

from _cases import TREE_514362, graph_and_trees, labeled_trees, sample, tree_of, upto

P = Permutation.parse
TIERED_TREE = tree_of(5, (4, 5), (1, 5), (2, 5), (2, 3))
TIERED_TREE_TIERS = {3: 1, 5: 1, 1: 2, 4: 2, 2: 3}


def test_labeled_tree_validation():
    with pytest.raises(ValueError):
        tree_of(3, (1, 2))
    with pytest.raises(ValueError):
        tree_of(4, (1, 2), (2, 3), (1, 3))


def test_tiering_examples():
    assert is_tiering(TIERED_TREE, TIERED_TREE_TIERS)
    assert is_tiering(LabeledTree(1, frozenset()), {1: 1})
    assert not is_tiering(tree_of(2, (1, 2)), {1: 1, 2: 2})
    # tiers must cover an initial segment [k]
    assert not is_tiering(tree_of(2, (1, 2)), {1: 3, 2: 1})


def test_fully_tier_example():
    assert fully_tier(TIERED_TREE, TIERED_TREE_TIERS) == {3: 1, 5: 2, 1: 3, 4: 4, 2: 5}


def test_fully_tier_fixes_bijections():
    for t in all_labeled_trees(5):
        for w in permutations(range(1, 6)):
            tiering = dict(zip(range(1, 6), w))
            if is_tiering(t, tiering):
                assert fully_tier(t, tiering) == tiering


def _random_tiered(data, n):
    t = data.draw(st.sampled_from(labeled_trees(n)))
    # tier by depth from the largest vertex along a decreasing-tier orientation:
    # pick random tiers and keep only valid ones
    tiers = data.draw(st.lists(st.integers(1, n), min_size=n, max_size=n))
    return t, dict(zip(range(1, n + 1), tiers))


@settings(max_examples=300, deadline=None)
@given(st.data(), st.integers(1, 6))
def test_fully_tier_properties(data, n):
    t, tiering = _random_tiered(data, n)
    if not is_tiering(t, tiering):
        return
    full = fully_tier(t, tiering)
    assert sorted(full.values()) == list(range(1, n + 1))
    assert is_tiering(t, full)
    for u in full:
        for v in full:
            if tiering[u] < tiering[v]:
                assert full[u] < full[v]


def test_spanning_tiered_examples():
    assert is_spanning_tiered(tree_of(6, *TREE_514362), P("514362"))
    for t in all_labeled_trees(4):
        assert not is_spanning_tiered(t, Permutation.identity(4))


def test_spanning_tiered_iff_inverse_is_tiering():
    for n in range(1, 6):
        trees = list(all_labeled_trees(n))
        for w in permutations(range(1, n + 1)):
            p = Permutation(w)
            g = build_perm_graph(p)
            inv = dict(zip(range(1, n + 1), p.inverse.word))
            for t in trees:
                assert is_spanning_tiered(t, p) == is_tiering(t, inv) == (t.edges <= g.edges)


def test_bareiss_matches_float_determinant():
    rng = np.random.default_rng(3)
    for _ in range(200):
        k = int(rng.integers(1, 7))
        m = rng.integers(-5, 6, size=(k, k))
        assert bareiss_determinant(m.tolist()) == round(np.linalg.det(m))
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([]) == 1


def test_spanning_tree_count_examples():
    assert spanning_tree_count(build_perm_graph(P("3421"))) == 8
    assert spanning_tree_count(build_perm_graph(P("21"))) == 1
    assert spanning_tree_count(build_perm_graph(P("321"))) == 3
    for n in range(2, 8):
        assert spanning_tree_count(build_perm_graph(Permutation(tuple(range(n, 0, -1))))) == n ** (n - 2)


def test_laplacian_row_sums():
    g = build_perm_graph(P("514362"))
    full = reduced_laplacian(g, drop=0)
    assert all(sum(row) == 0 for row in full)


def test_enumeration_examples():
    trees = enumerate_spanning_trees(build_perm_graph(P("321")))
    assert {t.edges for t in trees} == {frozenset({(1, 2), (1, 3)}), frozenset({(1, 2), (2, 3)}),
                                        frozenset({(1, 3), (2, 3)})}
    g, trees = graph_and_trees(P("514362"))
    assert len(trees) == spanning_tree_count(g) and tree_of(6, *TREE_514362) in trees


def test_enumeration_agrees_with_naive_and_determinant():
    for p in upto(6):
        g, trees = graph_and_trees(p)
        assert len(set(trees)) == len(trees) == spanning_tree_count(g)
        assert all(t.edges <= g.edges for t in trees)
        if p.n <= 5:
            assert set(trees) == set(enumerate_spanning_trees_naive(g))
    for p in sample(7, 40):
        g, trees = graph_and_trees(p)
        assert len(trees) == spanning_tree_count(g)


def test_enumeration_rejects_disconnected():
    with pytest.raises(NotConnectedError):
        enumerate_spanning_trees(build_perm_graph(P("2134")))


def test_all_labeled_trees_cayley():
    for n in range(1, 7):
        trees = list(all_labeled_trees(n))
        assert len(set(trees)) == len(trees) == max(1, n ** (n - 2))


def test_root_at_examples():
    rt = root_at(tree_of(6, *TREE_514362), 3)
    assert rt.levels == (frozenset({3}), frozenset({2, 5}), frozenset({1, 4, 6}))
    assert root_at(tree_of(2, (1, 2)), 1).parent == {2: 1}
    assert rooted_from_parents(6, 3, rt.parent) == rt
    with pytest.raises(ValueError):
        rooted_from_parents(3, 1, {2: 3, 3: 2})


@settings(deadline=None)
@given(st.data(), st.integers(1, 7))
def test_root_at_properties(data, n):
    t = data.draw(st.sampled_from(labeled_trees(n)))
    s = data.draw(st.integers(1, n))
    rt = root_at(t, s)
    assert rt.height[s] == 0 and s not in rt.parent
    assert sorted(v for lvl in rt.levels for v in lvl) == list(range(1, n + 1))
    for v, u in rt.parent.items():
        assert rt.height[v] == rt.height[u] + 1
        assert (min(u, v), max(u, v)) in t.edges


def test_fully_tiered_count_matches_recurrent_total():
    # pairs (tree, bijective tiering) counted directly vs. the spanning-tree totals
    from permsandpile.sandpile import enumerate_recurrent
    for n in range(1, 6):
        trees = list(all_labeled_trees(n))
        direct = sum(1 for t in trees for w in permutations(range(1, n + 1))
                     if is_tiering(t, dict(zip(range(1, n + 1), w))))
        via_rec = sum(len(enumerate_recurrent(build_perm_graph(p), 1)) for p in upto(n, n))
        assert direct == via_rec
