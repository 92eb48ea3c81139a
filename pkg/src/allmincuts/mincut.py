"""Exact global minimum cut by repeated maximum-adjacency scans."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import GraphError, StaticGraph, UnionFind, contract_bulk
from .kernel import scan_forest


class DisconnectedGraphError(GraphError):
    """The graph has more than one connected component (minimum cut 0)."""


@dataclass
class MinCutResult:
    lam: int
    witness_side: frozenset[int]


def exact_min_cut(g: StaticGraph) -> MinCutResult:
    if g.n < 2:
        raise GraphError("need at least two vertices")
    if not g.is_connected():
        raise DisconnectedGraphError("graph is disconnected")
    labels = np.arange(g.n, dtype=np.int64)
    deg = g.weighted_degrees()
    v = int(np.argmin(deg))
    best = int(deg[v])
    witness = (labels, [v])
    cur = g
    while cur.n > 1:
        q, order, cop, cop_len = scan_forest(cur, 0)
        if cop is not None and cop < best:
            best = cop
            witness = (labels, order[:cop_len])
        uf = UnionFind(cur.n)
        qa = np.array(q, dtype=np.int64)
        mask = qa >= best
        for a, b in zip(cur.sources[mask].tolist(), cur.targets[mask].tolist()):
            uf.union(a, b)
        uf.union(order[-1], order[-2])
        cur, mapping = contract_bulk(cur, uf)
        labels = mapping.labels[labels]
        if cur.n > 1:
            deg = cur.weighted_degrees()
            v = int(np.argmin(deg))
            if deg[v] < best:
                best = int(deg[v])
                witness = (labels, [v])
    lab, side = witness
    chosen = np.zeros(int(lab.max()) + 1, dtype=bool)
    chosen[side] = True
    return MinCutResult(best, frozenset(np.flatnonzero(chosen[lab]).tolist()))
