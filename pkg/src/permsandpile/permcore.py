"""
Permutations in one-line notation and their inversion graphs.

Vertices of a permutation graph are the *values* 1..n of the permutation,
never positions: ``a`` and ``b`` (``a > b``) are adjacent exactly when ``a``
appears before ``b`` in the word.

>>> g = build_perm_graph(Permutation.parse("3421"))
>>> sorted(g.edges)
[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
>>> [g.degree(v) for v in g.vertices]
[3, 3, 2, 2]
"""

from __future__ import annotations

__all__ = [
    "Permutation", "PermutationGraph",
    "inversions", "build_perm_graph", "is_indecomposable", "is_connected",
    "descents", "single_descent_decompose", "is_threshold",
    "all_permutations", "indecomposable_permutations",
]

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations as _itperms
from typing import Iterator, Optional


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation (1-based values)."""
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"not a permutation of 1..{len(word)}: {word}")

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """
        Parse ``"23541"`` (compact, n <= 9) or ``"12,3,4,..."`` (delimited).

        Errors report the offending character position.
        """
        s = text.strip()
        if not s:
            raise ValueError("empty permutation")
        if "," in s or " " in s:
            tokens = []
            pos = 0
            for tok in s.replace(" ", ",").split(","):
                if tok == "":
                    pos += 1
                    continue
                if not tok.isdigit():
                    raise ValueError(f"bad token {tok!r} at position {pos}")
                tokens.append(int(tok))
                pos += len(tok) + 1
        else:
            tokens = []
            for pos, ch in enumerate(s):
                if not ch.isdigit() or ch == "0":
                    raise ValueError(f"bad character {ch!r} at position {pos}")
                tokens.append(int(ch))
        return cls(tuple(tokens))

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        """pi(i) for a 1-based position i."""
        return self.word[i - 1]

    @cached_property
    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for pos, val in enumerate(self.word, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))


@dataclass(frozen=True)
class PermutationGraph:
    """The inversion graph G_pi on the vertex set [n]."""
    perm: Permutation
    edges: frozenset[tuple[int, int]]  # each edge stored as (smaller, larger)
    adjacency: dict[int, tuple[int, ...]] = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> dict[int, int]:
        return {v: len(self.adjacency[v]) for v in self.vertices}

    @cached_property
    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(len(self.adjacency[v]) for v in self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    @cached_property
    def neighbor_sets(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(nb) for v, nb in self.adjacency.items()}

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))


def inversions(p: Permutation) -> set[tuple[int, int]]:
    """All value pairs (pi_i, pi_j) with i < j and pi_i > pi_j."""
    w = p.word
    return {(w[i], w[j])
            for i in range(len(w))
            for j in range(i + 1, len(w))
            if w[i] > w[j]}


def build_perm_graph(p: Permutation) -> PermutationGraph:
    edges = frozenset((b, a) for a, b in inversions(p))
    adj: dict[int, list[int]] = {v: [] for v in range(1, p.n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    adjacency = {v: tuple(sorted(nb)) for v, nb in adj.items()}
    return PermutationGraph(p, edges, adjacency)


def is_indecomposable(p: Permutation) -> bool:
    """True iff no proper prefix pi_1..pi_k is a permutation of [k]."""
    running_max = 0
    for k, v in enumerate(p.word[:-1], start=1):
        running_max = max(running_max, v)
        if running_max == k:
            return False
    return True


def is_connected(g: PermutationGraph) -> bool:
    """Graph search connectivity (independent of the prefix test above)."""
    if g.n == 0:
        return True
    seen = {1}
    queue = deque([1])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def descents(p: Permutation) -> list[int]:
    """1-based positions i with pi_i > pi_{i+1}."""
    w = p.word
    return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]


def single_descent_decompose(
        p: Permutation) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """
    Split a single-descent word into the value sets of its two increasing runs.

    Returns ``(A1, A2)`` where A1 holds the values before the descent, or
    ``None`` if ``p`` does not have exactly one descent.
    """
    ds = descents(p)
    if len(ds) != 1:
        return None
    k = ds[0]
    return frozenset(p.word[:k]), frozenset(p.word[k:])


def is_threshold(p: Permutation) -> bool:
    """True iff the word strictly decreases and then strictly increases."""
    w = p.word
    i = 0
    while i + 1 < len(w) and w[i] > w[i + 1]:
        i += 1
    while i + 1 < len(w) and w[i] < w[i + 1]:
        i += 1
    return i >= len(w) - 1


def all_permutations(n: int) -> Iterator[Permutation]:
    for w in _itperms(range(1, n + 1)):
        yield Permutation(w)


def indecomposable_permutations(n: int) -> Iterator[Permutation]:
    for p in all_permutations(n):
        if is_indecomposable(p):
            yield p
