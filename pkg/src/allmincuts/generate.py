"""Instance generators: random test graphs, clustered graphs, instance ladders."""
from __future__ import annotations

import random

import numpy as np

from .build import find_all_mincuts
from .config import PipelineConfig
from .graph import StaticGraph, UnionFind, _from_arcs, build_static, contract_bulk


def random_connected_graph(n: int, rng: random.Random, density: float | None = None,
                           max_weight: int = 1) -> StaticGraph:
    """Random spanning tree plus random extra edges; weights uniform in ``[1, max_weight]``."""
    if density is None:
        density = rng.uniform(0.1, 0.9)
    pairs = {(rng.randrange(v), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                pairs.add((u, v))
    edges = [(u, v, rng.randint(1, max_weight)) for u, v in sorted(pairs)]
    return build_static(edges, n)


def random_tree(n: int, rng: random.Random) -> StaticGraph:
    return build_static([(v, rng.randrange(v), 1) for v in range(1, n)], n)


def cycle_graph(n: int, weight: int = 1) -> StaticGraph:
    return build_static([(i, (i + 1) % n, weight) for i in range(n)], n)


def random_corpus(count: int, seed: int = 0, n_range: tuple[int, int] = (4, 12),
                  max_weight: int = 10) -> list[StaticGraph]:
    """Small connected graphs, alternating unit weights and weights in ``[1, max_weight]``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(*n_range)
        kind = i % 4
        if kind == 3:
            # sparse: tree plus a few chords, rich in cycles and leaves
            g = random_connected_graph(n, rng, density=rng.uniform(0.0, 0.2),
                                       max_weight=1 if i % 8 == 3 else max_weight)
        else:
            g = random_connected_graph(n, rng, max_weight=1 if kind == 0 else max_weight)
        out.append(g)
    return out


def cluster_graph(clusters: int, size: int, degree: int, seed: int = 0,
                  ring: bool = False) -> StaticGraph:
    """Dense random clusters joined by unit-weight bridges.

    The clusters form a random tree, or a ring when ``ring`` is set.

    Each cluster is a ring plus ``size * degree / 2`` random chords, so its
    internal connectivity is at least two and usually far higher.
    """
    rng = np.random.default_rng(seed)
    base = np.arange(clusters, dtype=np.int64)[:, None] * size
    ring_u = (base + np.arange(size)).ravel()
    ring_v = (base + (np.arange(size) + 1) % size).ravel()
    chords = size * degree // 2
    cu = (base + rng.integers(0, size, (clusters, chords))).ravel()
    cv = (base + rng.integers(0, size, (clusters, chords))).ravel()
    if ring:
        parent = np.arange(clusters - 1, dtype=np.int64)
    else:
        parent = np.array([rng.integers(0, c) for c in range(1, clusters)], dtype=np.int64)
    bu = np.arange(1, clusters) * size + rng.integers(0, size, clusters - 1)
    bv = parent * size + rng.integers(0, size, clusters - 1)
    if ring and clusters > 2:
        bu = np.append(bu, rng.integers(0, size))
        bv = np.append(bv, (clusters - 1) * size + rng.integers(0, size))
    src = np.concatenate([ring_u, cu, bu])
    dst = np.concatenate([ring_v, cv, bv])
    keep = src != dst
    src, dst = src[keep], dst[keep]
    # parallel chords collapse to unit edges: keep only distinct pairs
    lo, hi = np.minimum(src, dst), np.maximum(src, dst)
    pairs = np.unique(lo * (clusters * size) + hi)
    lo, hi = pairs // (clusters * size), pairs % (clusters * size)
    w = np.ones(len(lo), dtype=np.int64)
    n = clusters * size
    return _from_arcs(n, np.concatenate([lo, hi]), np.concatenate([hi, lo]), np.concatenate([w, w]))


def generate_instances(g: StaticGraph, depth: int,
                       config: PipelineConfig | None = None) -> list[StaticGraph]:
    """Ladder of harder instances: keep the largest cactus node, contract the rest.

    Every edge not inside the largest node is contracted, which removes
    every minimum cut and raises the minimum cut value.  The ladder stops
    early once the graph collapses to one vertex (that graph is included).
    """
    out = []
    cur = g
    for _ in range(depth):
        if cur.n < 2:
            break
        cactus, _ = find_all_mincuts(cur, config)
        block = max(cactus.nodes, key=lambda p: (len(p), -min(p) if p else 0))
        inside = np.zeros(cur.n, dtype=bool)
        inside[list(block)] = True
        uf = UnionFind(cur.n)
        src, dst = cur.sources, cur.targets
        mask = ~(inside[src] & inside[dst]) & (src < dst)
        for a, b in zip(src[mask].tolist(), dst[mask].tolist()):
            uf.union(a, b)
        cur, _ = contract_bulk(cur, uf)
        out.append(cur)
    return out
