"""Graph containers and contraction primitives.

Two representations are used.  ``StaticGraph`` is an immutable compressed
adjacency (CSR) structure that is rebuilt from scratch whenever a batch of
contractions is applied.  ``DynamicGraph`` is a mutable adjacency list used
inside the recursive cactus construction, where single edges are contracted
one at a time.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_WEIGHT = 2**63 - 1


class GraphError(ValueError):
    pass


class WeightOverflowError(OverflowError):
    pass


def _check_sum(total: int) -> int:
    if total > MAX_WEIGHT:
        raise WeightOverflowError(f"edge weight {total} exceeds 64-bit range")
    return total


class StaticGraph:
    """Undirected weighted graph in CSR form.

    Every undirected edge is stored as two arcs.  ``reverse[a]`` is the index
    of the arc opposite to ``a``.
    """

    __slots__ = ("n", "offsets", "targets", "weights", "reverse", "_lists", "_src")

    def __init__(self, n: int, offsets: np.ndarray, targets: np.ndarray,
                 weights: np.ndarray, reverse: np.ndarray):
        self.n = int(n)
        self.offsets = offsets
        self.targets = targets
        self.weights = weights
        self.reverse = reverse
        self._lists = None
        self._src = None

    @property
    def m(self) -> int:
        return len(self.targets) // 2

    @property
    def sources(self) -> np.ndarray:
        if self._src is None:
            self._src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.offsets))
        return self._src

    def lists(self) -> tuple[list[int], list[int], list[int], list[int]]:
        """Plain-list copies of the CSR arrays (cached) for scalar loops."""
        if self._lists is None:
            self._lists = (self.offsets.tolist(), self.targets.tolist(),
                           self.weights.tolist(), self.reverse.tolist())
        return self._lists

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def weighted_degrees(self) -> np.ndarray:
        csum = np.zeros(len(self.weights) + 1, dtype=np.int64)
        np.cumsum(self.weights, out=csum[1:])
        return csum[self.offsets[1:]] - csum[self.offsets[:-1]]

    def neighbors(self, v: int) -> Iterator[tuple[int, int]]:
        offsets, targets, weights, _ = self.lists()
        for a in range(offsets[v], offsets[v + 1]):
            yield targets[a], weights[a]

    def edges(self) -> list[tuple[int, int, int]]:
        """Undirected edges as ``(u, v, w)`` with ``u < v``."""
        src = self.sources
        keep = src < self.targets
        return list(zip(src[keep].tolist(), self.targets[keep].tolist(),
                        self.weights[keep].tolist()))

    def total_weight(self) -> int:
        return sum(self.weights.tolist()) // 2

    def cut_weight(self, side: Iterable[int]) -> int:
        mask = np.zeros(self.n, dtype=bool)
        mask[list(side)] = True
        crossing = mask[self.sources] & ~mask[self.targets]
        return int(self.weights[crossing].sum())

    def is_connected(self) -> bool:
        return self.n <= 1 or len(connected_components(self)[1]) == 1

    def __repr__(self) -> str:
        return f"StaticGraph(n={self.n}, m={self.m})"


def _from_arcs(n: int, src: np.ndarray, dst: np.ndarray, w: np.ndarray,
               checked: bool = False) -> StaticGraph:
    """Build a CSR graph from a symmetric arc list, summing parallel arcs."""
    if len(src) == 0:
        empty = np.zeros(0, dtype=np.int64)
        return StaticGraph(n, np.zeros(n + 1, dtype=np.int64), empty, empty.copy(), empty.copy())
    if not checked and float(w.sum(dtype=np.float64)) >= 2.0**62:
        return _from_arcs_exact(n, src, dst, w)
    key = src * n + dst
    order = np.argsort(key, kind="stable")
    key = key[order]
    w = w[order]
    starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
    ukey = key[starts]
    uw = np.add.reduceat(w, starts)
    usrc = ukey // n
    udst = ukey - usrc * n
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(usrc, minlength=n), out=offsets[1:])
    reverse = np.searchsorted(ukey, udst * n + usrc)
    return StaticGraph(n, offsets, udst.astype(np.int64), uw.astype(np.int64),
                       reverse.astype(np.int64))


def _from_arcs_exact(n, src, dst, w) -> StaticGraph:
    # Python-int aggregation so that merged weights can be range-checked.
    acc: dict[tuple[int, int], int] = {}
    for a, b, c in zip(src.tolist(), dst.tolist(), w.tolist()):
        acc[(a, b)] = acc.get((a, b), 0) + c
    items = sorted(acc.items())
    for _, c in items:
        _check_sum(c)
    usrc = np.array([k[0] for k, _ in items], dtype=np.int64)
    udst = np.array([k[1] for k, _ in items], dtype=np.int64)
    uw = np.array([c for _, c in items], dtype=np.int64)
    return _from_arcs(n, usrc, udst, uw, checked=True)


def build_static(edges: Iterable[Sequence[int]], n: int) -> StaticGraph:
    """Build a graph from ``(u, v, weight)`` triples.

    Parallel edges are merged by summing their weights and self-loops are
    dropped.  Weights must be positive integers.
    """
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    us, vs, ws = [], [], []
    for edge in edges:
        u, v, w = int(edge[0]), int(edge[1]), int(edge[2])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) references a vertex outside [0, {n})")
        if w < 1:
            raise GraphError(f"edge ({u}, {v}) has non-positive weight {w}")
        if w > MAX_WEIGHT:
            raise WeightOverflowError(f"edge ({u}, {v}) weight {w} exceeds 64-bit range")
        if u == v:
            continue
        us.append(u)
        vs.append(v)
        ws.append(w)
    src = np.array(us + vs, dtype=np.int64)
    dst = np.array(vs + us, dtype=np.int64)
    w = np.array(ws + ws, dtype=np.int64)
    return _from_arcs(n, src, dst, w)


def connected_components(g: StaticGraph) -> tuple[np.ndarray, list[list[int]]]:
    """Component label per vertex and the vertex lists, largest first."""
    offsets, targets, _, _ = g.lists()
    label = [-1] * g.n
    comps: list[list[int]] = []
    for root in range(g.n):
        if label[root] >= 0:
            continue
        cid = len(comps)
        label[root] = cid
        stack = [root]
        members = []
        while stack:
            v = stack.pop()
            members.append(v)
            for a in range(offsets[v], offsets[v + 1]):
                t = targets[a]
                if label[t] < 0:
                    label[t] = cid
                    stack.append(t)
        comps.append(sorted(members))
    order = sorted(range(len(comps)), key=lambda c: (-len(comps[c]), comps[c][0]))
    relabel = np.empty(len(comps), dtype=np.int64)
    relabel[order] = np.arange(len(comps))
    return relabel[np.array(label, dtype=np.int64)] if comps else np.zeros(0, np.int64), \
        [comps[c] for c in order]


def induced_subgraph(g: StaticGraph, vertices: Sequence[int]) -> StaticGraph:
    """Subgraph on ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
    index = np.full(g.n, -1, dtype=np.int64)
    index[np.asarray(vertices, dtype=np.int64)] = np.arange(len(vertices))
    src = index[g.sources]
    dst = index[g.targets]
    keep = (src >= 0) & (dst >= 0)
    return _from_arcs(len(vertices), src[keep], dst[keep], g.weights[keep])


class UnionFind:
    """Disjoint sets with union by rank and path halving.

    ``union`` takes a lock, so marking phases may call it from several
    threads; the resulting partition only depends on the set of unions.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.parent)

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        with self._lock:
            ra, rb = self.find(a), self.find(b)
            if ra == rb:
                return False
            if self.rank[ra] < self.rank[rb]:
                ra, rb = rb, ra
            self.parent[rb] = ra
            if self.rank[ra] == self.rank[rb]:
                self.rank[ra] += 1
            return True

    def labels(self) -> tuple[np.ndarray, int]:
        """Compact class ids, numbered by each class's lowest member."""
        roots = [self.find(v) for v in range(len(self.parent))]
        ids: dict[int, int] = {}
        out = [ids.setdefault(r, len(ids)) for r in roots]
        return np.array(out, dtype=np.int64), len(ids)


@dataclass(frozen=True)
class ContractionMapping:
    """Surjection from the vertices of a graph onto its contraction."""

    labels: np.ndarray
    new_n: int

    def __post_init__(self):
        if len(self.labels) and (self.labels.min() < 0 or self.labels.max() >= self.new_n):
            raise GraphError("contraction mapping is out of range")

    @property
    def old_n(self) -> int:
        return len(self.labels)

    def preimage(self, new_vertices: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.new_n, dtype=bool)
        mask[list(new_vertices)] = True
        return np.flatnonzero(mask[self.labels])


def contract_labels(g: StaticGraph, labels: np.ndarray, new_n: int) -> StaticGraph:
    src = labels[g.sources]
    dst = labels[g.targets]
    keep = src != dst
    return _from_arcs(new_n, src[keep], dst[keep], g.weights[keep])


def contract_bulk(g: StaticGraph, uf: UnionFind) -> tuple[StaticGraph, ContractionMapping]:
    """Contract every union-find class of ``g`` into a single vertex."""
    if len(uf) != g.n:
        raise GraphError("union-find size does not match the graph")
    labels, new_n = uf.labels()
    return contract_labels(g, labels, new_n), ContractionMapping(labels, new_n)


def min_weighted_degree(g) -> tuple[int, int]:
    """Vertex of minimum weighted degree (lowest id on ties) and its degree."""
    if g.n == 0:
        raise GraphError("empty graph has no minimum degree")
    if isinstance(g, StaticGraph):
        deg = g.weighted_degrees()
        v = int(np.argmin(deg))
        return v, int(deg[v])
    best_v, best = 0, None
    for v in range(g.n):
        d = g.weighted_degree(v)
        if best is None or d < best:
            best_v, best = v, d
    return best_v, best


class DynamicGraph:
    """Mutable adjacency list supporting single-edge contraction.

    Each arc is a list ``[target, weight, reverse_index]``.  Vertex ids are
    kept dense: when a vertex disappears the highest id is moved into its
    slot.  ``members[v]`` lists the original vertices that ``v`` encompasses
    and ``current_of[x]`` is the current vertex containing original ``x``.
    """

    def __init__(self, n: int):
        self.adj: list[list[list[int]]] = [[] for _ in range(n)]
        self.members: list[list[int]] = [[v] for v in range(n)]
        self.current_of: list[int] = list(range(n))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "DynamicGraph":
        return cls.from_static(build_static(edges, n))

    @classmethod
    def from_static(cls, g: StaticGraph, members: list[list[int]] | None = None,
                    n_original: int | None = None) -> "DynamicGraph":
        offsets, targets, weights, reverse = g.lists()
        dg = cls.__new__(cls)
        adj = []
        for v in range(g.n):
            lo = offsets[v]
            adj.append([[targets[a], weights[a], reverse[a] - offsets[targets[a]]]
                        for a in range(lo, offsets[v + 1])])
        dg.adj = adj
        if members is None:
            dg.members = [[v] for v in range(g.n)]
            dg.current_of = list(range(g.n))
        else:
            dg.members = members
            size = n_original if n_original is not None else sum(map(len, members))
            dg.current_of = [-1] * size
            for v, mem in enumerate(members):
                for x in mem:
                    dg.current_of[x] = v
        return dg

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def weighted_degree(self, v: int) -> int:
        return sum(arc[1] for arc in self.adj[v])

    def edge_weight(self, u: int, v: int) -> int:
        for arc in self.adj[u]:
            if arc[0] == v:
                return arc[1]
        return 0

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, arc[0], arc[1]) for u in range(self.n) for arc in self.adj[u] if u < arc[0]]

    def to_static(self) -> StaticGraph:
        return build_static(self.edges(), self.n)

    def check(self) -> None:
        """Raise if reverse pointers or member bookkeeping are inconsistent."""
        seen = 0
        for u, arcs in enumerate(self.adj):
            targets = set()
            for i, (w, c, r) in enumerate(arcs):
                if w == u or w in targets:
                    raise GraphError(f"vertex {u} has a self-loop or parallel arc")
                targets.add(w)
                back = self.adj[w][r]
                if back[0] != u or back[1] != c or back[2] != i:
                    raise GraphError(f"arc ({u}, {i}) has an inconsistent reverse")
            for x in self.members[u]:
                if self.current_of[x] != u:
                    raise GraphError(f"original vertex {x} is not mapped to {u}")
            seen += len(self.members[u])
        if seen != len(self.current_of):
            raise GraphError("member lists do not partition the original vertices")

    def _remove_arc(self, x: int, idx: int) -> None:
        arcs = self.adj[x]
        last = arcs.pop()
        if idx < len(arcs):
            arcs[idx] = last
            self.adj[last[0]][last[2]][2] = idx

    def contract_edge(self, e: tuple[int, int]) -> int:
        u, i = e
        if not (0 <= u < self.n and 0 <= i < len(self.adj[u])):
            raise GraphError(f"invalid edge id {e}")
        return self.merge(u, self.adj[u][i][0])

    def merge(self, u: int, v: int) -> int:
        """Merge ``v`` into ``u`` (adjacent or not); returns the survivor's id."""
        if u == v:
            raise GraphError("cannot merge a vertex with itself")
        adj = self.adj
        adj_v = adj[v]
        for arc in adj_v:
            if arc[0] == u:
                self._remove_arc(u, arc[2])
                break
        adj_u = adj[u]
        pos = {arc[0]: j for j, arc in enumerate(adj_u)}
        for w, c, r in adj_v:
            if w == u:
                continue
            j = pos.get(w)
            if j is not None:
                arc_u = adj_u[j]
                total = _check_sum(arc_u[1] + c)
                arc_u[1] = total
                adj[w][arc_u[2]][1] = total
                self._remove_arc(w, r)
            else:
                j = len(adj_u)
                adj_u.append([w, c, r])
                back = adj[w][r]
                back[0] = u
                back[2] = j
                pos[w] = j
        adj[v] = []
        moved = self.members[v]
        self.members[u].extend(moved)
        for x in moved:
            self.current_of[x] = u
        self.members[v] = []
        return self._drop_vertex(v, u)

    def _drop_vertex(self, v: int, keep: int) -> int:
        last = self.n - 1
        if v != last:
            arcs = self.adj[last]
            self.adj[v] = arcs
            for arc in arcs:
                self.adj[arc[0]][arc[2]][0] = v
            self.members[v] = self.members[last]
            for x in self.members[v]:
                self.current_of[x] = v
        self.adj.pop()
        self.members.pop()
        return v if keep == last else keep

    def contract_classes(self, labels: Sequence[int], new_n: int) -> "DynamicGraph":
        """New graph with every class of ``labels`` merged into one vertex."""
        members: list[list[int]] = [[] for _ in range(new_n)]
        for v, lab in enumerate(labels):
            members[lab].extend(self.members[v])
        acc: dict[tuple[int, int], int] = {}
        for u, arcs in enumerate(self.adj):
            lu = labels[u]
            for w, c, _ in arcs:
                lw = labels[w]
                if lu < lw:
                    acc[(lu, lw)] = acc.get((lu, lw), 0) + c
        g = build_static([(a, b, c) for (a, b), c in acc.items()], new_n)
        return DynamicGraph.from_static(g, members, len(self.current_of))


def contract_edge(g: DynamicGraph, e: tuple[int, int]) -> int:
    return g.contract_edge(e)
