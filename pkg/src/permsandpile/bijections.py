"""
Spanning trees <-> recurrent configurations on permutation graphs, and
minimal recurrent configurations <-> compatible ordered partitions.

For a spanning tree rooted at the sink, each vertex i receives

    lam_i  neighbours strictly deeper than i,
    mu_i   neighbours at the same height,
    nu_i   neighbours one level up whose label is below the parent of i,

and c_i = lam_i + mu_i + nu_i. The inverse reads the heights back from the
canonical toppling and picks the parent of i as the (r_i + 1)-th smallest
neighbour on the previous level, where r_i = nu_i is recovered from c_i.
"""

from __future__ import annotations

__all__ = [
    "TreeWeights", "tree_weights", "tree_to_config", "config_to_tree",
    "level_via_weights", "ferrers_weights", "ferrers_config", "ferrers_config_to_tree",
    "is_compatible_partition", "enumerate_compatible_partitions",
    "tree_from_partition", "minrec_to_partition", "partition_to_minrec",
]

from dataclasses import dataclass
from typing import Iterator

from .errors import NotRecurrentError
from .permcore import Permutation, PermutationGraph, inversions, single_descent_decompose
from .sandpile import Configuration, OrderedPartition, is_recurrent
from .trees import RootedTree, rooted_from_parents


@dataclass(frozen=True)
class TreeWeights:
    """Per-vertex counts, indexed by ``vertex - 1``."""
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    nu: tuple[int, ...]

    def grains(self) -> tuple[int, ...]:
        return tuple(a + b + c for a, b, c in zip(self.lam, self.mu, self.nu))


def _require_spanning(g: PermutationGraph, rt: RootedTree):
    if rt.n != g.n or not rt.tree.edges <= g.edges:
        raise ValueError(f"tree {rt.tree} is not a spanning tree of G_{g.perm}")


def tree_weights(g: PermutationGraph, rt: RootedTree) -> TreeWeights:
    _require_spanning(g, rt)
    h = rt.height
    lam, mu, nu = [], [], []
    for i in g.vertices:
        hi = h[i]
        nbrs = g.neighbors(i)
        lam.append(sum(1 for j in nbrs if h[j] > hi))
        mu.append(sum(1 for j in nbrs if h[j] == hi))
        if i == rt.root:
            nu.append(0)
        else:
            p = rt.parent[i]
            nu.append(sum(1 for j in nbrs if h[j] == hi - 1 and j < p))
    return TreeWeights(tuple(lam), tuple(mu), tuple(nu))


def tree_to_config(g: PermutationGraph, rt: RootedTree) -> Configuration:
    """The recurrent configuration attached to a spanning tree rooted at the sink."""
    return Configuration(rt.root, tree_weights(g, rt).grains())


def config_to_tree(g: PermutationGraph, c: Configuration) -> RootedTree:
    """Inverse of :func:`tree_to_config`."""
    parts = is_recurrent(g, c)
    if parts is None:
        raise NotRecurrentError(f"{c} is not recurrent on G_{g.perm} with sink {c.sink}")
    block = parts.block_of()
    parent = {}
    for j in range(1, len(parts)):
        for i in parts[j]:
            nbrs = g.neighbors(i)
            eligible = sorted(w for w in nbrs if block[w] == j - 1)
            r = c[i] - sum(1 for w in nbrs if block[w] >= j)
            if not 0 <= r < len(eligible):
                raise AssertionError(f"r_{i} = {r} out of range for {eligible}")
            parent[i] = eligible[r]
    return rooted_from_parents(g.n, c.sink, parent)


def level_via_weights(w: TreeWeights) -> int:
    """Half the same-height count plus the nu count; equals the level."""
    mu_total = sum(w.mu)
    if mu_total % 2:
        raise AssertionError(f"odd same-height total {mu_total}")
    return mu_total // 2 + sum(w.nu)


def _sides(g: PermutationGraph) -> tuple[frozenset[int], frozenset[int]]:
    sides = single_descent_decompose(g.perm)
    if sides is None:
        raise ValueError(f"{g.perm} does not have exactly one descent")
    return sides


def ferrers_weights(g: PermutationGraph, rt: RootedTree) -> TreeWeights:
    """
    Weights of the single-descent specialisation; ``mu`` is identically zero.

    ``nu`` counts vertices one level up lying strictly between the parent
    and i, with no adjacency test.
    """
    a1, a2 = _sides(g)
    _require_spanning(g, rt)
    h = rt.height
    levels = rt.levels
    lam, nu = [], []
    for i in g.vertices:
        hi = h[i]
        if i in a1:
            lam.append(sum(1 for j in a2 if h[j] > hi and j < i))
        else:
            lam.append(sum(1 for j in a1 if h[j] > hi and j > i))
        if i == rt.root:
            nu.append(0)
        else:
            p = rt.parent[i]
            lo, hi_ = min(p, i), max(p, i)
            nu.append(sum(1 for j in levels[hi - 1] if lo < j < hi_))
    return TreeWeights(tuple(lam), (0,) * g.n, tuple(nu))


def ferrers_config(g: PermutationGraph, rt: RootedTree) -> Configuration:
    return Configuration(rt.root, ferrers_weights(g, rt).grains())


def ferrers_config_to_tree(g: PermutationGraph, c: Configuration) -> RootedTree:
    """
    Inverse of :func:`ferrers_config`: on the side holding n the parent is
    the (r+1)-th largest eligible neighbour, on the side holding 1 the
    (r+1)-th smallest.
    """
    a1, _ = _sides(g)
    parts = is_recurrent(g, c)
    if parts is None:
        raise NotRecurrentError(f"{c} is not recurrent on G_{g.perm} with sink {c.sink}")
    block = parts.block_of()
    parent = {}
    for j in range(1, len(parts)):
        for i in parts[j]:
            nbrs = g.neighbors(i)
            eligible = sorted(w for w in nbrs if block[w] == j - 1)
            r = c[i] - sum(1 for w in nbrs if block[w] >= j)
            if i in a1:
                eligible.reverse()
            parent[i] = eligible[r]
    return rooted_from_parents(g.n, c.sink, parent)


def is_compatible_partition(p: Permutation, s: int, parts: OrderedPartition) -> bool:
    if not parts.covers(p.n) or parts[0] != frozenset({s}):
        return False
    inv = {frozenset(e) for e in inversions(p)}
    for j, block in enumerate(parts):
        members = sorted(block)
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                if frozenset((members[x], members[y])) in inv:
                    return False
        if j >= 1:
            prev = parts[j - 1]
            for i in block:
                if not any(frozenset((i, k)) in inv for k in prev):
                    return False
    return True


def enumerate_compatible_partitions(p: Permutation, s: int) -> list[OrderedPartition]:
    """Direct search over block sequences, without any sandpile machinery."""
    inv = {frozenset(e) for e in inversions(p)}
    everything = frozenset(range(1, p.n + 1))

    def free_subsets(candidates: list[int]) -> Iterator[frozenset[int]]:
        # nonempty inversion-free subsets of candidates
        def rec(k: int, chosen: list[int]):
            if k == len(candidates):
                if chosen:
                    yield frozenset(chosen)
                return
            v = candidates[k]
            yield from rec(k + 1, chosen)
            if all(frozenset((v, u)) not in inv for u in chosen):
                chosen.append(v)
                yield from rec(k + 1, chosen)
                chosen.pop()
        yield from rec(0, [])

    out: list[OrderedPartition] = []

    def extend(blocks: list[frozenset[int]], used: frozenset[int]):
        if used == everything:
            out.append(OrderedPartition(tuple(blocks)))
            return
        prev = blocks[-1]
        candidates = sorted(v for v in everything - used
                            if any(frozenset((v, u)) in inv for u in prev))
        for block in free_subsets(candidates):
            blocks.append(block)
            extend(blocks, used | block)
            blocks.pop()

    extend([frozenset({s})], frozenset({s}))
    return out


def tree_from_partition(g: PermutationGraph, parts: OrderedPartition) -> RootedTree:
    """Tree whose levels are the blocks, each vertex hanging from its smallest eligible neighbour."""
    parent = {}
    for j in range(1, len(parts)):
        prev = parts[j - 1]
        for i in parts[j]:
            eligible = [w for w in g.neighbors(i) if w in prev]
            if not eligible:
                raise ValueError(f"vertex {i} has no neighbour in block {j - 1}")
            parent[i] = min(eligible)
    (root,) = parts[0]
    return rooted_from_parents(g.n, root, parent)


def minrec_to_partition(g: PermutationGraph, c: Configuration) -> OrderedPartition:
    parts = is_recurrent(g, c)
    if parts is None or c.total != g.num_edges:
        raise NotRecurrentError(f"{c} is not minimal recurrent on G_{g.perm}")
    return parts


def partition_to_minrec(g: PermutationGraph, parts: OrderedPartition) -> Configuration:
    (root,) = parts[0] if len(parts[0]) == 1 else (None,)
    if root is None or not is_compatible_partition(g.perm, root, parts):
        raise ValueError(f"{parts} is not a compatible partition for {g.perm}")
    return tree_to_config(g, tree_from_partition(g, parts))
