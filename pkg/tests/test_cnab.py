from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from permsandpile.activity import activity_sum, external_activity, tutte_subset_expansion
from permsandpile.cnab import (
    DotGrid, cell_edge_correspondence, edge_cells, enumerate_cmnabs, enumerate_cmnabs_direct,
    enumerate_nabs, has_dot_above_and_left, is_cmnab, is_cnab, is_complete_nab, leaf_grid,
    render_grid, reverse_lex_order, roots, zeta, zeta_inverse,
)
from permsandpile.errors import SizeGuardError
from permsandpile.permcore import Permutation, inversions
from permsandpile.sandpile import enumerate_minimal_recurrent
from permsandpile.trees import spanning_tree_count

from _cases import graph_and_trees, tree_of, upto

P = Permutation.parse
COMPLETE_5X5 = {(1, 1), (1, 2), (1, 3), (1, 5), (2, 1), (2, 4), (3, 2), (5, 3), (4, 1)}
ONE_CHILD_4X5 = {(4, 2), (2, 1), (2, 2), (1, 1), (3, 3), (1, 3), (2, 4), (1, 5)}
P465213 = P("465213")
GRID_465213 = leaf_grid(P465213).with_internal({(1, 2), (1, 3), (2, 1), (2, 2), (3, 2)})


def test_leaf_grid_examples():
    assert leaf_grid(P465213).leaves == {(4, 1), (6, 2), (5, 3), (2, 4), (1, 5), (3, 6)}
    assert leaf_grid(Permutation.identity(3)).leaves == {(1, 1), (2, 2), (3, 3)}


@given(st.integers(1, 9).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_leaf_grid_is_permutation_matrix(word):
    cells = leaf_grid(Permutation(tuple(word))).leaves
    assert len({r for r, _ in cells}) == len({c for _, c in cells}) == len(cells) == len(word)


def test_cmnab_examples():
    assert is_cmnab(GRID_465213)
    assert not is_cmnab(leaf_grid(P465213))
    # (3,5) has a leaf to its right but nothing below it in column 5
    assert not is_cmnab(leaf_grid(P465213).with_internal({(1, 2), (1, 3), (2, 1), (2, 2), (3, 5)}))


def test_cycle_in_dot_graph_is_rejected():
    # any three internal dots whose edges close a triangle in G_p induce a cycle in the dot-graph
    p = P("4321")
    found_cycle = False
    cells = [c for c in ((i, j) for i in range(1, 5) for j in range(1, 5))
             if cell_edge_correspondence(p, c) is not None]
    for chosen in combinations(cells, 3):
        edges = [cell_edge_correspondence(p, c) for c in chosen]
        vertices = {v for e in edges for v in e}
        if len(vertices) < 4:  # the three edges close a triangle in G_p
            found_cycle = True
            assert not is_cmnab(leaf_grid(p).with_internal(chosen))
    assert found_cycle


def test_cnab_examples():
    assert is_complete_nab(COMPLETE_5X5, (5, 5))
    assert not is_complete_nab(ONE_CHILD_4X5, (4, 5))
    assert is_complete_nab({(1, 1)}, (1, 1))
    assert is_cnab(DotGrid(1, frozenset({(1, 1)}), frozenset()))


def test_roots_examples():
    assert roots(GRID_465213) == {(1, 2), (2, 1)}
    assert has_dot_above_and_left(GRID_465213)


def test_zeta_examples():
    edges = zeta(GRID_465213, P465213).edges
    assert (2, 6) in edges and (2, 4) in edges
    assert edges == {(1, 6), (1, 5), (2, 4), (2, 6), (3, 6)}
    assert zeta_inverse(tree_of(6, (1, 6), (1, 5), (2, 4), (2, 6), (3, 6)), P465213) == GRID_465213
    g21 = P("21")
    (only,) = enumerate_cmnabs(g21)
    assert only.internal == {(1, 1)} and zeta(only, g21).edges == {(1, 2)}


def test_zeta_rejects_bad_input():
    with pytest.raises(ValueError):
        zeta(leaf_grid(P465213), P465213)
    with pytest.raises(ValueError):
        zeta_inverse(tree_of(3, (1, 2), (2, 3)), Permutation.identity(3))


def test_cell_edge_correspondence():
    assert cell_edge_correspondence(P465213, (2, 1)) == (2, 4)
    assert cell_edge_correspondence(P465213, (4, 1)) is None
    assert cell_edge_correspondence(P465213, (6, 6)) is None
    with pytest.raises(ValueError):
        cell_edge_correspondence(P465213, (0, 1))
    for p in upto(7, 7):
        assert len(edge_cells(p)) == len(inversions(p))


def test_nab_dot_count_and_squareness():
    for a in range(1, 4):
        for b in range(1, 5):
            for dots in enumerate_nabs(a, b):
                assert len(dots) == a + b - 1
                if is_complete_nab(dots, (a, b)):
                    assert a == b
    with pytest.raises(SizeGuardError):
        enumerate_nabs(5, 5)


def test_cmnab_count_3421():
    assert len(enumerate_cmnabs(P("3421"))) == 8


def test_direct_search_matches_zeta_route():
    for p in upto(4):
        assert set(enumerate_cmnabs_direct(p)) == set(enumerate_cmnabs(p))
    with pytest.raises(SizeGuardError):
        enumerate_cmnabs_direct(P("21345678"))


def test_reverse_lex_rectangles():
    for p in upto(5):
        cells = edge_cells(p)
        rank = reverse_lex_order(p).rank
        by_cell = {c: e for e, c in cells.items()}
        for (r1, c1) in by_cell:
            for (r2, c2) in by_cell:
                corners = [(r1, c1), (r1, c2), (r2, c1), (r2, c2)]
                if r1 < r2 and c1 < c2 and all(c in by_cell for c in corners):
                    assert max(rank[by_cell[c]] for c in corners) == rank[by_cell[(r1, c1)]]
    assert reverse_lex_order(P("21")).rank == {(1, 2): 1}


def test_root_structure_up_to_5():
    seq = []
    for n in range(1, 6):
        total = 0
        for p in upto(n, n):
            g, trees = graph_and_trees(p)
            order = reverse_lex_order(p)
            grids = enumerate_cmnabs(p)
            assert len(grids) == spanning_tree_count(g)
            single = 0
            for m in grids:
                assert is_cmnab(m)
                t = zeta(m, p)
                assert zeta_inverse(t, p) == m
                k = len(roots(m))
                assert (k == 1) == is_cnab(m) == (external_activity(g, t, order) == 0)
                assert (k >= 2) == has_dot_above_and_left(m)
                single += k == 1
            assert single == len(enumerate_minimal_recurrent(g, 1))
            assert activity_sum(g, lambda g_, t: order, trees) == tutte_subset_expansion(g)
            total += single
        seq.append(total)
    assert seq == [1, 1, 4, 33, 456]


def test_render_grid():
    text = render_grid(GRID_465213)
    lines = text.splitlines()
    assert len(lines) == 6 and lines[0].split() == [".", "@", "*", ".", "o", "."]
    assert lines[1].split()[0] == "@"
