"""
Labeled trees, rooted views, tierings, and spanning trees of permutation graphs.

Tier indices are 1-based. The tier condition used throughout is: for every
edge (i, j) with i > j, t(i) < t(j).
"""

from __future__ import annotations

__all__ = [
    "LabeledTree", "RootedTree",
    "is_tiering", "fully_tier", "is_spanning_tiered",
    "bareiss_determinant", "reduced_laplacian", "spanning_tree_count",
    "enumerate_spanning_trees", "enumerate_spanning_trees_naive",
    "root_at", "rooted_from_parents", "all_labeled_trees", "has_bijective_tiering",
    "tree_is_spanning",
]

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterator, Mapping

from .errors import NotConnectedError, SizeGuardError
from .permcore import Permutation, PermutationGraph, is_connected

MAX_SPANNING_EDGES = 24


def _norm(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class LabeledTree:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        edges = frozenset(_norm(a, b) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) != self.n - 1:
            raise ValueError(f"a tree on {self.n} vertices needs {self.n - 1} edges, got {len(edges)}")
        dsu = _DSU(self.n)
        for a, b in edges:
            if not (1 <= a < b <= self.n):
                raise ValueError(f"edge {(a, b)} outside [1, {self.n}]")
            if not dsu.union(a, b):
                raise ValueError(f"edges contain a cycle through {(a, b)}")

    @classmethod
    def from_edges(cls, n: int, edges) -> "LabeledTree":
        return cls(n, frozenset(_norm(a, b) for a, b in edges))

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(nb)) for v, nb in adj.items()}

    def __str__(self) -> str:
        return " ".join(f"{a}-{b}" for a, b in sorted(self.edges))


@dataclass(frozen=True)
class RootedTree:
    """A labeled tree with a root, parent map and heights (BFS distances)."""
    tree: LabeledTree
    root: int
    parent: Mapping[int, int]
    height: Mapping[int, int]

    @property
    def n(self) -> int:
        return self.tree.n

    def __hash__(self):
        return hash((self.tree, self.root))

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.tree == other.tree and self.root == other.root

    @cached_property
    def levels(self) -> tuple[frozenset[int], ...]:
        """Height fibers T^(0), T^(1), ...."""
        depth = max(self.height.values(), default=0)
        buckets: list[set[int]] = [set() for _ in range(depth + 1)]
        for v, h in self.height.items():
            buckets[h].add(v)
        return tuple(frozenset(b) for b in buckets)

    def ancestors(self, v: int) -> list[int]:
        out = []
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out


def root_at(t: LabeledTree, s: int) -> RootedTree:
    if not 1 <= s <= t.n:
        raise ValueError(f"root {s} outside [1, {t.n}]")
    parent: dict[int, int] = {}
    height = {s: 0}
    queue = deque([s])
    adj = t.adjacency
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in height:
                height[w] = height[v] + 1
                parent[w] = v
                queue.append(w)
    return RootedTree(t, s, parent, height)


def rooted_from_parents(n: int, root: int, parent: Mapping[int, int]) -> RootedTree:
    """Build a rooted tree from an explicit parent map (root excluded)."""
    t = LabeledTree.from_edges(n, ((v, p) for v, p in parent.items()))
    rt = root_at(t, root)
    if dict(rt.parent) != dict(parent):
        raise ValueError("parent map is not consistent with a tree rooted at %d" % root)
    return rt


def is_tiering(t: LabeledTree, tiering: Mapping[int, int]) -> bool:
    """Surjective onto [k] for some k, and t(i) < t(j) on every edge i > j."""
    vals = [tiering.get(v) for v in range(1, t.n + 1)]
    if any(x is None for x in vals) or len(tiering) != t.n:
        return False
    if set(vals) != set(range(1, max(vals) + 1)):
        return False
    for a, b in t.edges:  # a < b
        if not tiering[b] < tiering[a]:
            return False
    return True


def fully_tier(t: LabeledTree, tiering: Mapping[int, int]) -> dict[int, int]:
    """
    Refine a tiering to a bijection onto [n]: tiers keep their relative
    order, and vertices inside one tier are ordered by increasing label.
    """
    if not is_tiering(t, tiering):
        raise ValueError("input is not a valid tiering of the tree")
    order = sorted(range(1, t.n + 1), key=lambda v: (tiering[v], v))
    return {v: k for k, v in enumerate(order, start=1)}


def is_spanning_tiered(t: LabeledTree, p: Permutation) -> bool:
    """True iff every edge of ``t`` is an inversion of ``p``."""
    if t.n != p.n:
        raise ValueError("tree and permutation sizes differ")
    pos = p.inverse.word
    # edge a < b is an inversion iff b precedes a
    return all(pos[b - 1] < pos[a - 1] for a, b in t.edges)


def has_bijective_tiering(t: LabeledTree) -> bool:
    """Brute force: does some bijection [n] -> [n] tier ``t``?"""
    for w in permutations(range(1, t.n + 1)):
        if all(w[b - 1] < w[a - 1] for a, b in t.edges):
            return True
    return False


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for r in range(k + 1, size):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[-1][-1]


def reduced_laplacian(g: PermutationGraph, drop: int = 1) -> list[list[int]]:
    keep = [v for v in g.vertices if v != drop]
    index = {v: i for i, v in enumerate(keep)}
    lap = [[0] * len(keep) for _ in keep]
    for v in keep:
        lap[index[v]][index[v]] = g.degree(v)
        for w in g.neighbors(v):
            if w in index:
                lap[index[v]][index[w]] = -1
    return lap


def spanning_tree_count(g: PermutationGraph) -> int:
    """Matrix-tree theorem count of spanning trees."""
    if g.n == 1:
        return 1
    return bareiss_determinant(reduced_laplacian(g))


def enumerate_spanning_trees(g: PermutationGraph,
                             max_edges: int = MAX_SPANNING_EDGES) -> list[LabeledTree]:
    """
    All spanning trees by deletion-contraction over the sorted edge list.

    An edge whose endpoints are already merged is a loop and is dropped;
    an edge whose deletion would disconnect what remains is a bridge and is
    forced into the tree.
    """
    if g.num_edges > max_edges:
        raise SizeGuardError(f"{g.num_edges} edges exceeds the limit of {max_edges}")
    if not is_connected(g):
        raise NotConnectedError(f"G_{g.perm} is disconnected")
    n = g.n
    edges = g.sorted_edges
    out: list[LabeledTree] = []

    def still_connected(chosen: list[tuple[int, int]], start: int) -> bool:
        dsu = _DSU(n)
        comps = n
        for a, b in chosen:
            if dsu.union(a, b):
                comps -= 1
        for a, b in edges[start:]:
            if dsu.union(a, b):
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def rec(idx: int, chosen: list[tuple[int, int]], dsu_parent: list[int]):
        if len(chosen) == n - 1:
            out.append(LabeledTree(n, frozenset(chosen)))
            return
        if idx == len(edges):
            return
        a, b = edges[idx]
        dsu = _DSU(n)
        dsu.parent = dsu_parent
        if dsu.find(a) == dsu.find(b):
            rec(idx + 1, chosen, dsu_parent)
            return
        # contract
        contracted = list(dsu_parent)
        d2 = _DSU(n)
        d2.parent = contracted
        d2.union(a, b)
        chosen.append((a, b))
        rec(idx + 1, chosen, contracted)
        chosen.pop()
        # delete, unless e is a bridge of the remaining graph
        if still_connected(chosen, idx + 1):
            rec(idx + 1, chosen, dsu_parent)

    if n == 1:
        return [LabeledTree(1, frozenset())]
    rec(0, [], list(range(n + 1)))
    return out


def enumerate_spanning_trees_naive(g: PermutationGraph) -> list[LabeledTree]:
    """Filter every (n-1)-subset of edges; an independent oracle for small graphs."""
    n = g.n
    out = []
    for subset in combinations(g.sorted_edges, n - 1):
        dsu = _DSU(n)
        if all(dsu.union(a, b) for a, b in subset):
            out.append(LabeledTree(n, frozenset(subset)))
    return out


def all_labeled_trees(n: int) -> Iterator[LabeledTree]:
    """Every labeled tree on [n], decoded from Pruefer sequences."""
    if n == 1:
        yield LabeledTree(1, frozenset())
        return
    if n == 2:
        yield LabeledTree(2, frozenset({(1, 2)}))
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        degree = [1] * (n + 1)
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(1, n + 1) if degree[v] == 1]
        edges.append((u, w))
        yield LabeledTree.from_edges(n, edges)


def tree_is_spanning(t: LabeledTree, g: PermutationGraph) -> bool:
    return t.n == g.n and t.edges <= g.edges

