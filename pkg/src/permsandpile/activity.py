"""
Edge orders, tree activities, and Tutte polynomials.

Three independent routes to the Tutte polynomial are provided: the
subset expansion, deletion-contraction on a multigraph, and the activity
sum over spanning trees with a tree-dependent breadth-first edge order.
"""

from __future__ import annotations

__all__ = [
    "EdgeOrder", "BivariatePolynomial",
    "bfs_edge_order", "fundamental_cycle", "fundamental_cocycle",
    "external_activity", "internal_activity", "externally_active_edges",
    "tutte_subset_expansion", "tutte_deletion_contraction", "tutte_via_activities",
    "activity_sum", "tree_inversions", "graph_tree_inversions",
    "predicted_active_edges",
]

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .errors import SizeGuardError
from .permcore import PermutationGraph
from .trees import LabeledTree, RootedTree, enumerate_spanning_trees, root_at

Edge = tuple[int, int]
MAX_SUBSET_EDGES = 20


def _norm(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class EdgeOrder:
    """A total order on an edge set; ``sequence[0]`` is the smallest edge."""
    sequence: tuple[Edge, ...]

    def __post_init__(self):
        seq = tuple(_norm(a, b) for a, b in self.sequence)
        object.__setattr__(self, "sequence", seq)
        if len(set(seq)) != len(seq):
            raise ValueError("edge order lists an edge twice")

    @property
    def rank(self) -> dict[Edge, int]:
        return {e: k for k, e in enumerate(self.sequence, start=1)}

    def __len__(self) -> int:
        return len(self.sequence)


class BivariatePolynomial:
    """Integer polynomial in x, y stored as {(i, j): coeff} without zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v != 0}

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BivariatePolynomial":
        return cls({(i, j): c})

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence[int]]) -> "BivariatePolynomial":
        out: dict[tuple[int, int], int] = defaultdict(int)
        for i, j, c in triples:
            out[(i, j)] += c
        return cls(out)

    def to_triples(self) -> list[tuple[int, int, int]]:
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items())]

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BivariatePolynomial(out)

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (a, b), u in self.coeffs.items():
            for (c, d), v in other.coeffs.items():
                out[(a + c, b + d)] += u * v
        return BivariatePolynomial(out)

    def shift(self, dx: int = 0, dy: int = 0) -> "BivariatePolynomial":
        return BivariatePolynomial({(i + dx, j + dy): c for (i, j), c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __call__(self, x: int, y: int) -> int:
        return sum(c * x ** i * y ** j for (i, j), c in self.coeffs.items())

    def at_x_one(self) -> tuple[int, ...]:
        """Coefficients of P(1, y) in y, lowest degree first."""
        if not self.coeffs:
            return ()
        top = max(j for _, j in self.coeffs)
        out = [0] * (top + 1)
        for (_, j), c in self.coeffs.items():
            out[j] += c
        return tuple(out)

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (-kv[0][0] - kv[0][1], -kv[0][0])):
            mono = "".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e)
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)


def bfs_edge_order(g: PermutationGraph, rt: RootedTree) -> EdgeOrder:
    """
    Visit vertices by increasing height, largest label first within a height;
    on visiting v append its edges to unvisited neighbours, larger neighbour
    first.
    """
    visited: set[int] = set()
    seq: list[Edge] = []
    for level in rt.levels:
        for v in sorted(level, reverse=True):
            for w in sorted(g.neighbors(v), reverse=True):
                if w not in visited:
                    seq.append(_norm(v, w))
            visited.add(v)
            if len(seq) == g.num_edges:
                return EdgeOrder(tuple(seq))
    return EdgeOrder(tuple(seq))


def fundamental_cycle(rt: RootedTree, e: Edge) -> list[Edge]:
    """Tree edges on the path between the endpoints of ``e`` (via their meeting point)."""
    a, b = e
    h, par = rt.height, rt.parent
    path = []
    while h[a] > h[b]:
        path.append(_norm(a, par[a]))
        a = par[a]
    while h[b] > h[a]:
        path.append(_norm(b, par[b]))
        b = par[b]
    while a != b:
        path.append(_norm(a, par[a]))
        path.append(_norm(b, par[b]))
        a, b = par[a], par[b]
    return path


def fundamental_cocycle(g: PermutationGraph, t: LabeledTree, e: Edge) -> list[Edge]:
    """Graph edges joining the two components of ``t`` minus ``e``."""
    a, _ = e
    side = {a}
    stack = [a]
    while stack:
        v = stack.pop()
        for w in t.adjacency[v]:
            if w not in side and _norm(v, w) != e:
                side.add(w)
                stack.append(w)
    return [f for f in g.sorted_edges if (f[0] in side) != (f[1] in side)]


def externally_active_edges(g: PermutationGraph, t: LabeledTree, order: EdgeOrder,
                            rt: RootedTree | None = None) -> list[Edge]:
    rank = order.rank
    rt = rt or root_at(t, 1)
    out = []
    for e in g.sorted_edges:
        if e in t.edges:
            continue
        r = rank[e]
        if all(rank[f] < r for f in fundamental_cycle(rt, e)):
            out.append(e)
    return out


def external_activity(g: PermutationGraph, t: LabeledTree, order: EdgeOrder,
                      rt: RootedTree | None = None) -> int:
    return len(externally_active_edges(g, t, order, rt))


def internal_activity(g: PermutationGraph, t: LabeledTree, order: EdgeOrder) -> int:
    rank = order.rank
    count = 0
    for e in t.edges:
        r = rank[e]
        if all(rank[f] <= r for f in fundamental_cocycle(g, t, e)):
            count += 1
    return count


def predicted_active_edges(g: PermutationGraph, rt: RootedTree) -> list[Edge]:
    """
    Non-tree edges that the height characterisation declares active under
    the breadth-first order: for h(i) <= h(j), either h(i) == h(j), or
    h(i) == h(j) - 1 and i is smaller than the parent of j.
    """
    h, par = rt.height, rt.parent
    out = []
    for e in g.sorted_edges:
        if e in rt.tree.edges:
            continue
        i, j = e if h[e[0]] <= h[e[1]] else (e[1], e[0])
        if h[i] == h[j] or (h[i] == h[j] - 1 and i < par[j]):
            out.append(e)
    return out


def _components(n: int, edges: Iterable[Edge]) -> int:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def tutte_subset_expansion(g: PermutationGraph, max_edges: int = MAX_SUBSET_EDGES) -> BivariatePolynomial:
    """Sum over all edge subsets S of (x-1)^(cc(S)-1) (y-1)^(cc(S)+|S|-|V|)."""
    m = g.num_edges
    if m > max_edges:
        raise SizeGuardError(f"2^{m} edge subsets exceeds the limit 2^{max_edges}")
    edges = g.sorted_edges
    n = g.n
    # tally (cc - 1, nullity) pairs, then expand the binomials once
    tally: dict[tuple[int, int], int] = defaultdict(int)
    for mask in range(1 << m):
        subset = [edges[k] for k in range(m) if mask >> k & 1]
        cc = _components(n, subset)
        tally[(cc - 1, cc + len(subset) - n)] += 1
    out: dict[tuple[int, int], int] = defaultdict(int)
    for (a, b), mult in tally.items():
        for i, ci in enumerate(_binomial_row(a)):
            for j, cj in enumerate(_binomial_row(b)):
                out[(i, j)] += mult * ci * cj
    return BivariatePolynomial(out)


@lru_cache(maxsize=None)
def _binomial_row(k: int) -> tuple[int, ...]:
    """Coefficients of (z - 1)^k, lowest degree first."""
    row = [1]
    for _ in range(k):
        nxt = [0] * (len(row) + 1)
        for d, c in enumerate(row):
            nxt[d + 1] += c
            nxt[d] -= c
        row = nxt
    return tuple(row)


def tutte_deletion_contraction(g: PermutationGraph) -> BivariatePolynomial:
    """Tutte polynomial by memoised deletion-contraction on a multigraph."""
    multi: dict[Edge, int] = defaultdict(int)
    for e in g.edges:
        multi[e] += 1
    return _tutte_multi(frozenset(multi.items()))


def _is_bridge(edges: dict[Edge, int], e: Edge) -> bool:
    if edges[e] > 1:
        return False
    a, b = e
    adj: dict[int, list[int]] = defaultdict(list)
    for (u, v) in edges:
        if (u, v) != e:
            adj[u].append(v)
            adj[v].append(u)
    seen = {a}
    stack = [a]
    while stack:
        v = stack.pop()
        if v == b:
            return False
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return True


@lru_cache(maxsize=200_000)
def _tutte_multi(state: frozenset[tuple[Edge, int]]) -> BivariatePolynomial:
    if not state:
        return BivariatePolynomial.monomial(0, 0)
    edges = dict(state)
    e = min(edges)
    mult = edges[e]
    a, b = e
    if _is_bridge(edges, e):
        return _tutte_multi(_contract(edges, a, b)).shift(dx=1)
    # delete one copy of e
    deleted = dict(edges)
    if mult == 1:
        del deleted[e]
    else:
        deleted[e] = mult - 1
    # contracting merges the remaining mult-1 copies into loops, each a factor y
    contracted = _tutte_multi(_contract(edges, a, b)).shift(dy=mult - 1)
    return _tutte_multi(frozenset(deleted.items())) + contracted


def _contract(edges: dict[Edge, int], a: int, b: int) -> frozenset[tuple[Edge, int]]:
    """Merge b into a; parallel a-b copies become loops and are removed by the caller."""
    out: dict[Edge, int] = defaultdict(int)
    for (u, v), m in edges.items():
        u2 = a if u == b else u
        v2 = a if v == b else v
        if u2 == v2:
            continue
        out[_norm(u2, v2)] += m
    return frozenset(out.items())


OrderMap = Callable[[PermutationGraph, LabeledTree], EdgeOrder]


def activity_sum(g: PermutationGraph, order_map: OrderMap,
                 trees: Sequence[LabeledTree] | None = None) -> BivariatePolynomial:
    """Sum of x^int(T) y^ext(T) over spanning trees, each with its own order."""
    out: dict[tuple[int, int], int] = defaultdict(int)
    for t in trees if trees is not None else enumerate_spanning_trees(g):
        order = order_map(g, t)
        out[(internal_activity(g, t, order), external_activity(g, t, order))] += 1
    return BivariatePolynomial(out)


def tutte_via_activities(g: PermutationGraph, s: int,
                         trees: Sequence[LabeledTree] | None = None) -> BivariatePolynomial:
    """Activity sum under the breadth-first order of each tree rooted at ``s``."""
    return activity_sum(g, lambda g_, t: bfs_edge_order(g_, root_at(t, s)), trees)


def tree_inversions(rt: RootedTree) -> int:
    """Pairs (i, j) with i > j and j a proper ancestor of i."""
    return sum(1 for v in rt.height if v != rt.root for a in rt.ancestors(v) if a < v)


def graph_tree_inversions(g: PermutationGraph, rt: RootedTree) -> int:
    """
    Graph-aware inversion count: pairs (a, v) with a a non-root proper
    ancestor of v, a < v, and v adjacent in ``g`` to the parent of a.
    """
    par = rt.parent
    return sum(1 for v in rt.height if v != rt.root for a in rt.ancestors(v)
               if a != rt.root and a < v and g.has_edge(v, par[a]))
