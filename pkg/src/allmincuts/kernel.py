"""Reductions that shrink a graph while keeping every minimum cut.

All contraction criteria are strict in the current upper bound ``lambda_hat``:
an edge is only contracted when it provably lies on no cut of weight
``lambda_hat`` or less, so cuts of weight exactly the minimum survive.
"""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from heapq import heappop, heappush

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as sparse_components

from .config import LOCAL_RULES
from .graph import (ContractionMapping, GraphError, StaticGraph, UnionFind,
                    contract_bulk, contract_labels)


@dataclass
class DegreeOneRecord:
    leaf: tuple[int, ...]          # original vertices of the removed leaf
    neighbor: int                  # an original vertex encompassed by the neighbour
    lambda_at_contraction: int


@dataclass
class EdgeConnectivityBounds:
    q: np.ndarray                  # lower bound per arc of the graph's CSR layout
    start: int


@dataclass
class KernelState:
    lambda_hat: int
    labels: np.ndarray             # original vertex -> kernel vertex
    degree_one_stack: list[DegreeOneRecord] = field(default_factory=list)
    mapping_history: list[ContractionMapping] = field(default_factory=list)
    rounds: int = 0

    def lower(self, value: int) -> None:
        if value < self.lambda_hat:
            self.lambda_hat = value


def scan_forest(g: StaticGraph, start: int) -> tuple[list[int], list[int], int | None, int]:
    """One maximum-adjacency scan from ``start``.

    Returns per-arc bounds ``q`` (``r(y)`` right after ``x`` scanned the arc
    to the unvisited ``y``; zero if never scanned), the visit order, and the
    smallest cut-of-phase seen with the length of its visited prefix.
    """
    offsets, targets, weights, reverse = g.lists()
    n = g.n
    wdeg = g.weighted_degrees().tolist()
    r = [0] * n
    visited = [False] * n
    q = [0] * len(targets)
    heap = [(0, start)]
    order: list[int] = []
    cut = 0
    best_cut = None
    best_len = 0
    while heap:
        neg, x = heappop(heap)
        if visited[x] or -neg != r[x]:
            continue
        visited[x] = True
        order.append(x)
        cut += wdeg[x] - 2 * r[x]
        if len(order) < n and (best_cut is None or cut < best_cut):
            best_cut, best_len = cut, len(order)
        for a in range(offsets[x], offsets[x + 1]):
            y = targets[a]
            if not visited[y]:
                ry = r[y] + weights[a]
                r[y] = ry
                q[a] = ry
                q[reverse[a]] = ry
                heappush(heap, (-ry, y))
    return q, order, best_cut, best_len


def estimate_lambda(g: StaticGraph, rounds: int = 3) -> int:
    """Upper bound on the minimum cut: min degree, sharpened by clustering.

    Each round merges every vertex with its heaviest neighbour and keeps the
    smallest weighted degree of the coarser graph; every such degree is the
    weight of a real cut, so the bound never drops below the minimum cut.
    """
    if g.n < 2:
        raise GraphError("need at least two vertices")
    best = int(g.weighted_degrees().min())
    cur = g
    for _ in range(rounds):
        if cur.n < 3 or cur.m == 0:
            break
        src = cur.sources
        order = np.lexsort((cur.targets, -cur.weights, src))
        has = cur.degrees() > 0
        pick = order[cur.offsets[:-1][has]]
        a, b = src[pick], cur.targets[pick]
        adj = coo_matrix((np.ones(len(a)), (a, b)), shape=(cur.n, cur.n))
        count, labels = sparse_components(adj, directed=False)
        if count < 2 or count == cur.n:
            break
        cur = contract_labels(cur, labels.astype(np.int64), count)
        best = min(best, int(cur.weighted_degrees().min()))
    return best


def connectivity_lower_bounds(g: StaticGraph, lambda_hat: int | None = None,
                              start: int = 0) -> EdgeConnectivityBounds:
    q, _, _, _ = scan_forest(g, start)
    return EdgeConnectivityBounds(np.array(q, dtype=np.int64), start)


def contract_high_connectivity(g: StaticGraph, bounds: EdgeConnectivityBounds,
                               lambda_hat: int, uf: UnionFind) -> int:
    """Union the endpoints of every edge certified to have connectivity > ``lambda_hat``."""
    src = g.sources
    mask = (bounds.q >= lambda_hat + 1) & (src < g.targets)
    us, vs = src[mask].tolist(), g.targets[mask].tolist()
    for u, v in zip(us, vs):
        uf.union(u, v)
    return len(us)


def _pairwise_rules(g: StaticGraph, lam: int, uf: UnionFind, rules: set[str],
                    lo: int, hi: int, wdeg: list[int]) -> int:
    """Triangle and shared-neighbourhood tests for centres in ``[lo, hi)``."""
    offsets, targets, weights, _ = g.lists()
    n = g.n
    marked = [False] * n
    nbr = [0] * n
    tri_rule = "imbalanced_triangle" in rules
    nbh_rule = "heavy_neighborhood" in rules
    count = 0
    for u in range(lo, hi):
        if marked[u]:
            continue
        marked[u] = True
        a0, a1 = offsets[u], offsets[u + 1]
        for a in range(a0, a1):
            nbr[targets[a]] = weights[a]
        cu = wdeg[u]
        for a in range(a0, a1):
            v = targets[a]
            if marked[v]:
                continue
            marked[v] = True
            ce = weights[a]
            cv = wdeg[v]
            tri_possible = tri_rule and cu > lam and cv > lam
            shared = 0
            tri = False
            for b in range(offsets[v], offsets[v + 1]):
                cuw = nbr[targets[b]]
                if cuw:
                    cvw = weights[b]
                    shared += cuw if cuw < cvw else cvw
                    if tri_possible and cv < 2 * (cvw + ce) and cu < 2 * (cuw + ce):
                        tri = True
            if tri or (nbh_rule and ce + shared > lam):
                uf.union(u, v)
                count += 1
        for a in range(a0, a1):
            nbr[targets[a]] = 0
    return count


def local_contract(g: StaticGraph, lambda_hat: int, uf: UnionFind,
                   rules=LOCAL_RULES, threads: int = 1) -> int:
    """Union endpoints of edges that a local rule proves lie on no light cut."""
    rules = set(rules)
    lam = lambda_hat
    count = 0
    src, tgt, w = g.sources, g.targets, g.weights
    wd = g.weighted_degrees()
    mask = np.zeros(len(w), dtype=bool)
    if "heavy_edge" in rules:
        mask |= w > lam
    if "imbalanced_vertex" in rules:
        ds, dt = wd[src], wd[tgt]
        mask |= ((ds < 2 * w) & (ds > lam)) | ((dt < 2 * w) & (dt > lam))
    mask &= src < tgt
    for u, v in zip(src[mask].tolist(), tgt[mask].tolist()):
        uf.union(u, v)
        count += 1
    if rules & {"imbalanced_triangle", "heavy_neighborhood"}:
        wdeg = wd.tolist()
        if threads <= 1:
            count += _pairwise_rules(g, lam, uf, rules, 0, g.n, wdeg)
        else:
            bounds = np.linspace(0, g.n, threads + 1).astype(int).tolist()
            with ThreadPoolExecutor(threads) as pool:
                parts = pool.map(lambda i: _pairwise_rules(g, lam, uf, rules, bounds[i],
                                                           bounds[i + 1], wdeg), range(threads))
                count += sum(parts)
    return count


def _representatives(labels: np.ndarray, new_n: int) -> np.ndarray:
    rep = np.full(new_n, len(labels), dtype=np.int64)
    np.minimum.at(rep, labels, np.arange(len(labels), dtype=np.int64))
    return rep


def contract_degree_one(g: StaticGraph, state: KernelState, uf: UnionFind) -> int:
    """Union every leaf whose single edge weighs exactly ``lambda_hat`` into its neighbour.

    Leaves with a heavier edge are left to the heavy-edge rule.  Each
    contraction is recorded so the leaf can be put back into the cactus.
    """
    deg = g.degrees()
    wd = g.weighted_degrees()
    lam = state.lambda_hat
    cand = np.flatnonzero((deg == 1) & (wd == lam)).tolist()
    if not cand:
        return 0
    offsets, targets, _, _ = g.lists()
    rep = _representatives(state.labels, g.n)
    order = np.argsort(state.labels, kind="stable")
    starts = np.searchsorted(state.labels[order], np.arange(g.n + 1))
    count = 0
    for v in cand:
        w = targets[offsets[v]]
        if deg[w] == 1 and w < v:
            continue  # an isolated edge: only the lower endpoint becomes a leaf
        leaf = tuple(order[starts[v]:starts[v + 1]].tolist())
        state.degree_one_stack.append(DegreeOneRecord(leaf, int(rep[w]), lam))
        uf.union(v, w)
        count += 1
    return count


def _apply(g: StaticGraph, uf: UnionFind, state: KernelState) -> StaticGraph:
    new_g, mapping = contract_bulk(g, uf)
    if new_g.n == g.n:
        return g
    state.mapping_history.append(mapping)
    state.labels = mapping.labels[state.labels]
    if new_g.n >= 2:
        state.lower(int(new_g.weighted_degrees().min()))
    return new_g


def kernelize(g: StaticGraph, *, connectivity: bool = True, local: bool = True,
              degree_one: bool = True, threshold: float = 0.01, threads: int = 1,
              seed: int = 0, estimate_rounds: int = 3, lambda_hat: int | None = None,
              local_rules=LOCAL_RULES, stats: dict | None = None) -> tuple[StaticGraph, KernelState]:
    """Apply the enabled reductions in rounds until a round removes < ``threshold`` of the vertices."""
    if g.n < 2:
        raise GraphError("need at least two vertices")
    if lambda_hat is None:
        lambda_hat = estimate_lambda(g, estimate_rounds)
    state = KernelState(int(lambda_hat), np.arange(g.n, dtype=np.int64))
    rng = random.Random(seed)
    cur = g
    while cur.n > 1:
        before = cur.n
        state.rounds += 1
        if degree_one:
            # leaves can cascade along paths; repeat until none is left
            while cur.n > 1:
                uf = UnionFind(cur.n)
                if not contract_degree_one(cur, state, uf):
                    break
                cur = _apply(cur, uf, state)
        if connectivity and cur.n > 1:
            uf = UnionFind(cur.n)
            starts = [rng.randrange(cur.n) for _ in range(threads)]
            lam = state.lambda_hat
            if threads <= 1:
                bounds = [connectivity_lower_bounds(cur, lam, starts[0])]
            else:
                with ThreadPoolExecutor(threads) as pool:
                    bounds = list(pool.map(lambda s: connectivity_lower_bounds(cur, lam, s), starts))
            for b in bounds:
                contract_high_connectivity(cur, b, lam, uf)
            cur = _apply(cur, uf, state)
        if local and cur.n > 1:
            uf = UnionFind(cur.n)
            local_contract(cur, state.lambda_hat, uf, local_rules, threads)
            cur = _apply(cur, uf, state)
        if before - cur.n < threshold * before:
            break
    if stats is not None:
        stats["kernel_rounds"] = state.rounds
    return cur, state
