"""
Abelian sandpile dynamics on permutation graphs.

Configurations always carry the sink's grain count explicitly; a recurrent
configuration has ``grains[sink] == degree(sink)``.

Recurrence is decided by the round procedure that also defines the
canonical toppling: topple the sink, then repeatedly topple every
currently unstable vertex that has not toppled yet. The configuration is
recurrent iff every vertex topples exactly once.
"""

from __future__ import annotations

__all__ = [
    "Configuration", "OrderedPartition",
    "topple", "stabilize", "is_recurrent", "canonical_toppling", "level",
    "enumerate_recurrent", "enumerate_minimal_recurrent", "level_polynomial",
    "recurrent_mask", "poly_from_exponents", "format_poly", "MAX_BRUTE_FORCE",
]

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import NotConnectedError, SizeGuardError
from .permcore import PermutationGraph, is_connected

MAX_VERTICES = 10
MAX_BRUTE_FORCE = 5_000_000


@dataclass(frozen=True)
class Configuration:
    """Grain counts ``grains[v - 1]`` for v in [n], with a designated sink."""
    sink: int
    grains: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "grains", tuple(int(x) for x in self.grains))
        if not 1 <= self.sink <= len(self.grains):
            raise ValueError(f"sink {self.sink} outside [1, {len(self.grains)}]")
        if any(x < 0 for x in self.grains):
            raise ValueError("grain counts must be nonnegative")

    def __getitem__(self, v: int) -> int:
        return self.grains[v - 1]

    @property
    def n(self) -> int:
        return len(self.grains)

    @property
    def total(self) -> int:
        return sum(self.grains)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.grains)) + ")"


@dataclass(frozen=True)
class OrderedPartition:
    """An ordered set partition P_0, P_1, ..., P_k of [n]."""
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        seen: set[int] = set()
        for part in parts:
            if not part:
                raise ValueError("empty block in ordered partition")
            if seen & part:
                raise ValueError("blocks of an ordered partition must be disjoint")
            seen |= part

    @property
    def n(self) -> int:
        return sum(len(p) for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, j: int) -> frozenset[int]:
        return self.parts[j]

    def covers(self, n: int) -> bool:
        return set().union(*self.parts) == set(range(1, n + 1)) if self.parts else n == 0

    def block_of(self) -> dict[int, int]:
        return {v: j for j, part in enumerate(self.parts) for v in part}

    def __str__(self) -> str:
        sep = "" if self.n <= 9 else ","
        return "-".join(sep.join(map(str, sorted(p))) for p in self.parts)

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "OrderedPartition":
        """
        Parse ``"3-1-24-5"``. Labels inside a block are single digits unless
        the text contains a comma or ``n`` exceeds 9, in which case they are
        comma-separated (``"10-1,2,3,4,5,6,7,8,9"``).
        """
        text = text.strip()
        commas = "," in text or (n is not None and n > 9)
        blocks = []
        for chunk in text.split("-"):
            if commas:
                blocks.append(frozenset(int(x) for x in chunk.split(",") if x))
            else:
                blocks.append(frozenset(int(ch) for ch in chunk))
        return cls(tuple(blocks))

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "OrderedPartition":
        return cls(tuple(frozenset(b) for b in blocks))


def _check_host(g: PermutationGraph, c: Configuration):
    if c.n != g.n:
        raise ValueError(f"configuration has {c.n} entries, graph has {g.n} vertices")


def topple(g: PermutationGraph, c: Configuration, v: int, force: bool = False) -> Configuration:
    """Fire ``v``: it loses deg(v) grains and each neighbor gains one."""
    _check_host(g, c)
    d = g.degree(v)
    if c[v] < d and not force:
        raise ValueError(f"vertex {v} is stable ({c[v]} < {d}) and cannot topple")
    grains = list(c.grains)
    grains[v - 1] -= d
    for w in g.neighbors(v):
        grains[w - 1] += 1
    if grains[v - 1] < 0:
        raise ValueError(f"forced toppling of {v} left a negative grain count")
    return Configuration(c.sink, tuple(grains))


def stabilize(g: PermutationGraph, c: Configuration,
              rng: Optional[random.Random] = None) -> Configuration:
    """
    Topple unstable non-sink vertices until none remain.

    With ``rng`` the next vertex is drawn at random among the unstable ones;
    by the abelian property the result does not depend on it.
    """
    _check_host(g, c)
    if not is_connected(g):
        raise NotConnectedError(f"G_{g.perm} is disconnected")
    grains = list(c.grains)
    deg = g.degree_sequence
    s = c.sink
    unstable = [v for v in g.vertices if v != s and grains[v - 1] >= deg[v - 1]]
    while unstable:
        if rng is None:
            v = unstable.pop()
        else:
            v = unstable.pop(rng.randrange(len(unstable)))
        if grains[v - 1] < deg[v - 1]:
            continue
        grains[v - 1] -= deg[v - 1]
        if grains[v - 1] >= deg[v - 1]:
            unstable.append(v)
        for w in g.neighbors(v):
            grains[w - 1] += 1
            if w != s and grains[w - 1] == deg[w - 1]:
                unstable.append(w)
    return Configuration(s, tuple(grains))


def canonical_toppling(g: PermutationGraph, c: Configuration) -> Optional[OrderedPartition]:
    """Run the toppling rounds from the sink; None if some vertex never fires."""
    deg = g.degree_sequence
    s = c.sink
    grains = list(c.grains)
    fired = [False] * (g.n + 1)
    current = [s]
    parts = []
    count = 0
    while current:
        parts.append(frozenset(current))
        count += len(current)
        for v in current:
            fired[v] = True
            grains[v - 1] -= deg[v - 1]
            for w in g.neighbors(v):
                grains[w - 1] += 1
        current = [v for v in g.vertices if not fired[v] and grains[v - 1] >= deg[v - 1]]
    if count != g.n:
        return None
    return OrderedPartition(tuple(parts))


def is_recurrent(g: PermutationGraph, c: Configuration) -> Optional[OrderedPartition]:
    """
    The canonical toppling of ``c`` if it is recurrent, otherwise None.

    Checks c_s = d_s, stability of every non-sink vertex, and that the
    rounds started from the sink fire every vertex.
    """
    _check_host(g, c)
    if not is_connected(g):
        raise NotConnectedError(f"G_{g.perm} is disconnected")
    s = c.sink
    if c[s] != g.degree(s):
        return None
    if any(c[v] >= g.degree(v) for v in g.vertices if v != s):
        return None
    return canonical_toppling(g, c)


def level(g: PermutationGraph, c: Configuration) -> int:
    return c.total - g.num_edges


def _adjacency_matrix(g: PermutationGraph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int16)
    for u, v in g.edges:
        a[u - 1, v - 1] = a[v - 1, u - 1] = 1
    return a


def recurrent_mask(g: PermutationGraph, sink: int, configs: np.ndarray) -> np.ndarray:
    """Vectorised recurrence test for an (M, n) array of configurations."""
    n = g.n
    deg = np.array(g.degree_sequence, dtype=np.int16)
    adj = _adjacency_matrix(g)
    c = configs.astype(np.int16, copy=True)
    ok = c[:, sink - 1] == deg[sink - 1]
    others = np.arange(n) != sink - 1
    ok &= np.all(c[:, others] < deg[others], axis=1)
    fired = np.zeros_like(c, dtype=bool)
    fired[:, sink - 1] = True
    c -= np.outer(np.ones(len(c), dtype=np.int16), deg * (~others))
    c += adj[sink - 1]
    for _ in range(n - 1):
        u = (c >= deg) & ~fired
        if not u.any():
            break
        ui = u.astype(np.int16)
        c += ui @ adj - ui * deg
        fired |= u
    return ok & fired.all(axis=1)


def _brute_force_recurrent(g: PermutationGraph, s: int) -> list[Configuration]:
    deg = g.degree_sequence
    ranges = [np.arange(deg[v - 1]) if v != s else np.array([deg[s - 1]])
              for v in g.vertices]
    size = 1
    for r in ranges:
        size *= len(r)
    if size > MAX_BRUTE_FORCE:
        raise SizeGuardError(f"{size} stable configurations exceed the brute-force limit")
    grids = np.meshgrid(*ranges, indexing="ij")
    configs = np.stack([x.ravel() for x in grids], axis=1)
    mask = recurrent_mask(g, s, configs)
    return [Configuration(s, tuple(int(x) for x in row)) for row in configs[mask]]


def enumerate_recurrent(g: PermutationGraph, s: int, route: str = "brute") -> list[Configuration]:
    """
    All recurrent configurations of ``g`` with sink ``s``.

    ``route`` is "brute" (filter the stable configurations), "trees" (image
    of the spanning trees under the tree-to-configuration map) or "both",
    which computes the two and raises if they disagree.
    """
    if g.n > MAX_VERTICES:
        raise SizeGuardError(f"n = {g.n} exceeds the enumeration limit of {MAX_VERTICES}")
    if not is_connected(g):
        raise NotConnectedError(f"G_{g.perm} is disconnected")
    if route == "brute":
        return sorted(_brute_force_recurrent(g, s), key=lambda c: c.grains)
    if route == "trees":
        from .bijections import tree_to_config
        from .trees import enumerate_spanning_trees, root_at
        confs = {tree_to_config(g, root_at(t, s)) for t in enumerate_spanning_trees(g)}
        return sorted(confs, key=lambda c: c.grains)
    if route == "both":
        brute = enumerate_recurrent(g, s, "brute")
        via_trees = enumerate_recurrent(g, s, "trees")
        if brute != via_trees:
            raise RuntimeError(f"recurrent enumeration routes disagree on G_{g.perm}, sink {s}")
        return brute
    raise ValueError(f"unknown route {route!r}")


def enumerate_minimal_recurrent(g: PermutationGraph, s: int, route: str = "brute") -> list[Configuration]:
    m = g.num_edges
    return [c for c in enumerate_recurrent(g, s, route) if c.total == m]


def level_polynomial(g: PermutationGraph, s: int, route: str = "brute") -> tuple[int, ...]:
    """Coefficients of sum_c x^level(c), lowest degree first."""
    return poly_from_exponents(level(g, c) for c in enumerate_recurrent(g, s, route))


def poly_from_exponents(exponents: Iterable[int]) -> tuple[int, ...]:
    coeffs: list[int] = []
    for e in exponents:
        if e < 0:
            raise ValueError("negative exponent")
        if e >= len(coeffs):
            coeffs.extend([0] * (e + 1 - len(coeffs)))
        coeffs[e] += 1
    return tuple(coeffs)


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for k, a in enumerate(coeffs):
        if a == 0:
            continue
        if k == 0:
            terms.append(str(a))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if a == 1 else f"{a}{mono}")
    return " + ".join(terms) if terms else "0"
