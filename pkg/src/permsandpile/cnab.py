"""
Dot-grid model of (multirooted) complete non-ambiguous binary trees.

Cells are (row, col), 1-based, with (1, 1) the northwest corner. The leaf
dots of the grid for a permutation p sit at (p_i, i). An internal dot in
cell (i, j) stands for the edge {i, p_j} of the permutation graph.
"""

from __future__ import annotations

__all__ = [
    "DotGrid", "leaf_grid", "is_cmnab", "is_nab", "is_complete_nab", "is_cnab",
    "roots", "has_dot_above_and_left", "zeta", "zeta_inverse",
    "cell_edge_correspondence", "edge_cells",
    "enumerate_cmnabs", "enumerate_cmnabs_direct", "enumerate_nabs",
    "reverse_lex_order", "render_grid",
]

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .activity import EdgeOrder
from .errors import SizeGuardError
from .permcore import Permutation, build_perm_graph
from .trees import LabeledTree, enumerate_spanning_trees

Cell = tuple[int, int]


@dataclass(frozen=True)
class DotGrid:
    n: int
    leaves: frozenset[Cell]
    internal: frozenset[Cell]

    @property
    def dots(self) -> frozenset[Cell]:
        return self.leaves | self.internal

    def with_internal(self, cells: Iterable[Cell]) -> "DotGrid":
        return DotGrid(self.n, self.leaves, frozenset(cells))


def leaf_grid(p: Permutation) -> DotGrid:
    return DotGrid(p.n, frozenset((p(i), i) for i in range(1, p.n + 1)), frozenset())


def _rows_cols(dots: Iterable[Cell]) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for r, c in dots:
        rows.setdefault(r, []).append(c)
        cols.setdefault(c, []).append(r)
    for v in rows.values():
        v.sort()
    for v in cols.values():
        v.sort()
    return rows, cols


def _dot_graph_edges(dots: frozenset[Cell], parents: Iterable[Cell]) -> list[tuple[Cell, Cell]]:
    """Child links: each parent dot to the nearest dot below it and the nearest to its right."""
    rows, cols = _rows_cols(dots)
    edges = []
    for r, c in parents:
        below = [x for x in cols[c] if x > r]
        right = [y for y in rows[r] if y > c]
        if below:
            edges.append(((r, c), (below[0], c)))
        if right:
            edges.append(((r, c), (r, right[0])))
    return edges


def _is_tree(vertices: frozenset[Cell], edges: list[tuple[Cell, Cell]]) -> bool:
    if len(edges) != len(vertices) - 1:
        return False
    adj: dict[Cell, list[Cell]] = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def _is_permutation_matrix(n: int, cells: frozenset[Cell]) -> bool:
    return (len(cells) == n
            and {r for r, _ in cells} == set(range(1, n + 1))
            and {c for _, c in cells} == set(range(1, n + 1)))


def is_cmnab(m: DotGrid) -> bool:
    n = m.n
    if not _is_permutation_matrix(n, m.leaves):
        return False
    if len(m.internal) != n - 1 or m.internal & m.leaves:
        return False
    if any(not (1 <= r <= n and 1 <= c <= n) for r, c in m.internal):
        return False
    dots = m.dots
    rows, cols = _rows_cols(dots)
    for r, c in m.internal:
        if cols[c][-1] <= r or rows[r][-1] <= c:
            return False
    return _is_tree(dots, _dot_graph_edges(dots, m.internal))


def is_nab(dots: Iterable[Cell], shape: tuple[int, int]) -> bool:
    """Non-ambiguous binary tree filling of a rows x cols rectangle."""
    nrows, ncols = shape
    dots = frozenset(dots)
    rows, cols = _rows_cols(dots)
    if set(rows) != set(range(1, nrows + 1)) or set(cols) != set(range(1, ncols + 1)):
        return False
    if any(not (1 <= r <= nrows and 1 <= c <= ncols) for r, c in dots):
        return False
    if (1, 1) not in dots:
        return False
    for r, c in dots:
        if (r, c) == (1, 1):
            continue
        above = cols[c][0] < r
        left = rows[r][0] < c
        if above == left:
            return False
    return True


def is_complete_nab(dots: Iterable[Cell], shape: tuple[int, int]) -> bool:
    dots = frozenset(dots)
    if not is_nab(dots, shape):
        return False
    rows, cols = _rows_cols(dots)
    for r, c in dots:
        below = cols[c][-1] > r
        right = rows[r][-1] > c
        if below != right:
            return False
    return True


def is_cnab(m: DotGrid) -> bool:
    return is_complete_nab(m.dots, (m.n, m.n))


def roots(m: DotGrid) -> set[Cell]:
    """Dots with no dot above in their column and none to the left in their row."""
    rows, cols = _rows_cols(m.dots)
    return {(r, c) for r, c in m.dots if cols[c][0] == r and rows[r][0] == c}


def has_dot_above_and_left(m: DotGrid) -> bool:
    rows, cols = _rows_cols(m.dots)
    return any(cols[c][0] < r and rows[r][0] < c for r, c in m.dots)


def cell_edge_correspondence(p: Permutation, cell: Cell) -> Optional[tuple[int, int]]:
    """
    The edge {i, p_j} when cell (i, j) has a leaf strictly below it and a
    leaf strictly to its right, else None.
    """
    i, j = cell
    if not (1 <= i <= p.n and 1 <= j <= p.n):
        raise ValueError(f"cell {cell} outside the {p.n}x{p.n} grid")
    leaf_below = p(j) > i
    leaf_right = p.inverse(i) > j
    if leaf_below and leaf_right:
        return (i, p(j))
    return None


def edge_cells(p: Permutation) -> dict[tuple[int, int], Cell]:
    """Map each edge (a, b), a < b, to the unique cell (a, position of b)."""
    pos = p.inverse
    out = {}
    for i in range(1, p.n + 1):
        for j in range(1, p.n + 1):
            e = cell_edge_correspondence(p, (i, j))
            if e is not None:
                out[e] = (i, j)
    if any(out[e] != (e[0], pos(e[1])) for e in out):
        raise AssertionError("cell/edge correspondence is not the expected one")
    return out


def zeta(m: DotGrid, p: Permutation) -> LabeledTree:
    if m.leaves != leaf_grid(p).leaves or not is_cmnab(m):
        raise ValueError("grid is not a CMNAB for this permutation")
    edges = []
    for i, j in m.internal:
        edges.append((i, p(j)))
    return LabeledTree.from_edges(p.n, edges)


def zeta_inverse(s: LabeledTree, p: Permutation) -> DotGrid:
    g = build_perm_graph(p)
    if s.n != p.n or not s.edges <= g.edges:
        raise ValueError(f"{s} is not a spanning tree of G_{p}")
    pos = p.inverse
    internal = frozenset((a, pos(b)) for a, b in s.edges)
    return leaf_grid(p).with_internal(internal)


def enumerate_cmnabs(p: Permutation) -> list[DotGrid]:
    g = build_perm_graph(p)
    return [zeta_inverse(t, p) for t in enumerate_spanning_trees(g)]


def enumerate_cmnabs_direct(p: Permutation, max_n: int = 5) -> list[DotGrid]:
    """Search internal-dot placements over edge-yielding cells; avoids zeta entirely."""
    if p.n > max_n:
        raise SizeGuardError(f"direct CMNAB search limited to n <= {max_n}")
    base = leaf_grid(p)
    cells = [(i, j) for i in range(1, p.n + 1) for j in range(1, p.n + 1)
             if cell_edge_correspondence(p, (i, j)) is not None]
    out = []
    for chosen in combinations(cells, p.n - 1):
        m = base.with_internal(chosen)
        if is_cmnab(m):
            out.append(m)
    return out


def enumerate_nabs(nrows: int, ncols: int, max_cells: int = 16) -> list[frozenset[Cell]]:
    """Every NAB filling of a rectangle, by brute force over cell subsets."""
    if nrows * ncols > max_cells:
        raise SizeGuardError(f"{nrows}x{ncols} rectangle too large for brute force")
    cells = [(r, c) for r in range(1, nrows + 1) for c in range(1, ncols + 1)]
    out = []
    for mask in range(1 << len(cells)):
        dots = frozenset(cells[k] for k in range(len(cells)) if mask >> k & 1)
        if is_nab(dots, (nrows, ncols)):
            out.append(dots)
    return out


def reverse_lex_order(p: Permutation) -> EdgeOrder:
    """
    Edges ordered so that a lexicographically larger (row, col) cell is a
    smaller edge; the northwest-most cell carries the largest edge.
    """
    cells = edge_cells(p)
    return EdgeOrder(tuple(sorted(cells, key=lambda e: cells[e], reverse=True)))


def render_grid(m: DotGrid) -> str:
    """Plain-text grid: 'o' leaf, '*' internal, '@' root, '.' empty."""
    rts = roots(m)

    def mark(cell: Cell) -> str:
        if cell in rts:
            return "@"
        if cell in m.leaves:
            return "o"
        return "*" if cell in m.internal else "."

    return "\n".join(" ".join(mark((r, c)) for c in range(1, m.n + 1))
                     for r in range(1, m.n + 1))
