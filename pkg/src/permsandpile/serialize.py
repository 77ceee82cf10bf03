"""
JSON records for the objects the command line emits.

Every record is a flat dict with a ``kind`` tag; ``to_record`` and
``from_record`` are mutually inverse on each supported type, and
``dumps``/``loads`` wrap them for one-record-per-line streams.
"""

from __future__ import annotations

__all__ = ["to_record", "from_record", "dumps", "loads", "poly_record"]

import json
from typing import Any, Sequence

from .activity import BivariatePolynomial
from .cnab import DotGrid
from .permcore import Permutation, PermutationGraph, build_perm_graph
from .sandpile import Configuration, OrderedPartition
from .trees import LabeledTree, RootedTree, rooted_from_parents


def poly_record(coeffs: Sequence[int], var: str = "x") -> dict[str, Any]:
    """Univariate polynomial as a coefficient list, lowest degree first."""
    return {"kind": "poly", "var": var, "coeffs": [int(a) for a in coeffs]}


def to_record(obj: Any) -> dict[str, Any]:
    if isinstance(obj, PermutationGraph):
        return {"kind": "graph", "perm": list(obj.perm.word), "n": obj.n,
                "edges": [list(e) for e in obj.sorted_edges]}
    if isinstance(obj, Permutation):
        return {"kind": "perm", "word": list(obj.word)}
    if isinstance(obj, Configuration):
        return {"kind": "config", "sink": obj.sink, "grains": list(obj.grains)}
    if isinstance(obj, OrderedPartition):
        return {"kind": "partition", "n": obj.n, "blocks": str(obj)}
    if isinstance(obj, BivariatePolynomial):
        return {"kind": "tutte", "triples": [list(t) for t in obj.to_triples()]}
    if isinstance(obj, RootedTree):
        # parent[v - 1]; the root's entry is 0
        parent = [obj.parent.get(v, 0) if v != obj.root else 0 for v in range(1, obj.n + 1)]
        return {"kind": "rooted_tree", "n": obj.n,
                "edges": [list(e) for e in sorted(obj.tree.edges)],
                "root": obj.root, "parent": parent}
    if isinstance(obj, LabeledTree):
        return {"kind": "tree", "n": obj.n, "edges": [list(e) for e in sorted(obj.edges)]}
    if isinstance(obj, DotGrid):
        return {"kind": "grid", "n": obj.n,
                "leaves": [list(c) for c in sorted(obj.leaves)],
                "internal": [list(c) for c in sorted(obj.internal)]}
    raise TypeError(f"no record format for {type(obj).__name__}")


def from_record(rec: dict[str, Any]) -> Any:
    kind = rec.get("kind")
    if kind == "graph":
        g = build_perm_graph(Permutation(tuple(rec["perm"])))
        if g.n != rec["n"] or {tuple(e) for e in rec["edges"]} != set(g.edges):
            raise ValueError("graph record edges do not match its permutation")
        return g
    if kind == "perm":
        return Permutation(tuple(rec["word"]))
    if kind == "config":
        return Configuration(rec["sink"], tuple(rec["grains"]))
    if kind == "partition":
        return OrderedPartition.parse(rec["blocks"], rec.get("n"))
    if kind == "tutte":
        return BivariatePolynomial.from_triples(rec["triples"])
    if kind == "poly":
        return tuple(rec["coeffs"])
    if kind == "tree":
        return LabeledTree.from_edges(rec["n"], (tuple(e) for e in rec["edges"]))
    if kind == "rooted_tree":
        root = rec["root"]
        parent = {v: p for v, p in enumerate(rec["parent"], start=1) if v != root}
        rt = rooted_from_parents(rec["n"], root, parent)
        if rt.tree.edges != {tuple(e) for e in rec["edges"]}:
            raise ValueError("rooted tree record: parent map and edges disagree")
        return rt
    if kind == "grid":
        return DotGrid(rec["n"], frozenset(tuple(c) for c in rec["leaves"]),
                       frozenset(tuple(c) for c in rec["internal"]))
    raise ValueError(f"unknown record kind {kind!r}")


def dumps(obj: Any, **extra: Any) -> str:
    rec = obj if isinstance(obj, dict) else to_record(obj)
    return json.dumps({**rec, **extra}, sort_keys=True)


def loads(line: str) -> Any:
    return from_record(json.loads(line))
