"""Cactus representation of all minimum cuts.

A cactus is stored structurally: tree edges as node pairs and every cycle as
its node sequence.  Tree edges stand for weight ``lam`` and cycle edges for
``lam / 2``, so odd ``lam`` never needs fractional arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable


class CactusError(RuntimeError):
    """Internal inconsistency while building or editing a cactus."""


@dataclass
class Cactus:
    nodes: list[frozenset[int]]
    tree_edges: list[tuple[int, int]]
    cycles: list[list[int]]
    lam: int

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.tree_edges) + sum(len(c) for c in self.cycles)

    @property
    def n_vertices(self) -> int:
        return sum(len(p) for p in self.nodes)

    def edges(self) -> list[tuple[int, int, str, int | None]]:
        """All edges as ``(u, v, kind, cycle_id)``; ``kind`` is tree or cycle."""
        out: list[tuple[int, int, str, int | None]] = [(a, b, "tree", None) for a, b in self.tree_edges]
        for cid, cyc in enumerate(self.cycles):
            for i, a in enumerate(cyc):
                out.append((a, cyc[(i + 1) % len(cyc)], "cycle", cid))
        return out

    def node_of(self) -> dict[int, int]:
        return {x: i for i, p in enumerate(self.nodes) for x in p}

    def duplicate_pair_nodes(self) -> set[int]:
        """Empty nodes lying on exactly two cycles and no tree edge.

        Isolating such a node on either of its cycles yields the same vertex
        bipartition, so one of the two pairs is skipped when counting cuts.
        """
        tree_deg = [0] * self.n_nodes
        for a, b in self.tree_edges:
            tree_deg[a] += 1
            tree_deg[b] += 1
        on_cycles = [0] * self.n_nodes
        for cyc in self.cycles:
            for a in cyc:
                on_cycles[a] += 1
        return {v for v in range(self.n_nodes)
                if not self.nodes[v] and tree_deg[v] == 0 and on_cycles[v] == 2}

    @property
    def num_cuts(self) -> int:
        return (len(self.tree_edges) + sum(comb(len(c), 2) for c in self.cycles)
                - len(self.duplicate_pair_nodes()))

    def builder(self) -> "CactusBuilder":
        b = CactusBuilder()
        for p in self.nodes:
            b.add_node(p)
        for a, c in self.tree_edges:
            b.add_tree_edge(a, c)
        for cyc in self.cycles:
            b.add_cycle(list(cyc))
        return b

    @classmethod
    def single(cls, vertices: Iterable[int], lam: int = 0) -> "Cactus":
        return cls([frozenset(vertices)], [], [], lam)


def structural_violations(c: Cactus, n: int | None = None) -> list[str]:
    """Invariant violations of ``c`` (empty list when the cactus is valid)."""
    problems = []
    seen: set[int] = set()
    for i, p in enumerate(c.nodes):
        if seen & p:
            problems.append(f"node {i} repeats vertices {sorted(seen & p)}")
        seen |= p
    if n is not None:
        if seen != set(range(n)):
            problems.append("node sets do not partition the vertex set")
        if c.n_nodes > max(2 * n, 1):
            problems.append(f"cactus has {c.n_nodes} nodes for {n} vertices")
    pairs: set[frozenset[int]] = set()
    degree = [0] * c.n_nodes
    for a, b, kind, _ in c.edges():
        if a == b:
            problems.append(f"self-loop at node {a}")
        key = frozenset((a, b))
        if key in pairs:
            problems.append(f"nodes {a} and {b} joined twice")
        pairs.add(key)
        degree[a] += 1
        degree[b] += 1
    for cid, cyc in enumerate(c.cycles):
        if len(cyc) < 3:
            problems.append(f"cycle {cid} has fewer than three nodes")
        if len(set(cyc)) != len(cyc):
            problems.append(f"cycle {cid} is not simple")
    for i in range(len(c.cycles)):
        for j in range(i + 1, len(c.cycles)):
            if len(set(c.cycles[i]) & set(c.cycles[j])) > 1:
                problems.append(f"cycles {i} and {j} share more than one node")
    # connected, and no cycles besides the listed ones: |E| - |cycles| = |V| - 1
    if c.n_nodes and c.n_edges - len(c.cycles) != c.n_nodes - 1:
        problems.append("cactus is not a tree of cycles")
    adj: list[list[int]] = [[] for _ in range(c.n_nodes)]
    for a, b, _, _ in c.edges():
        adj[a].append(b)
        adj[b].append(a)
    if c.n_nodes:
        reach = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        if len(reach) != c.n_nodes:
            problems.append("cactus is disconnected")
    for i, p in enumerate(c.nodes):
        if not p and degree[i] <= 2 and c.n_nodes > 1:
            problems.append(f"empty node {i} has degree {degree[i]}")
    return problems


@dataclass
class CactusBuilder:
    """Mutable cactus used while the representation is being assembled."""

    pi: list[set[int]] = field(default_factory=list)
    alive: list[bool] = field(default_factory=list)
    tree: list[set[int]] = field(default_factory=list)
    cyc: list[set[int]] = field(default_factory=list)
    cycles: dict[int, list[int]] = field(default_factory=dict)
    loc: dict[int, int] = field(default_factory=dict)
    _next_cycle: int = 0

    def add_node(self, members: Iterable[int] = ()) -> int:
        x = len(self.pi)
        self.pi.append(set())
        self.alive.append(True)
        self.tree.append(set())
        self.cyc.append(set())
        self.add_members(x, members)
        return x

    def add_members(self, x: int, members: Iterable[int]) -> None:
        p = self.pi[x]
        loc = self.loc
        for v in members:
            p.add(v)
            loc[v] = x

    def remove_members(self, x: int, members: Iterable[int]) -> None:
        p = self.pi[x]
        for v in members:
            if v not in p:
                raise CactusError(f"vertex {v} is not in node {x}")
            p.remove(v)
            del self.loc[v]

    def node_of(self, v: int) -> int:
        try:
            return self.loc[v]
        except KeyError:
            raise CactusError(f"vertex {v} is not represented in the cactus") from None

    def nodes(self) -> list[int]:
        return [x for x, ok in enumerate(self.alive) if ok]

    def add_tree_edge(self, a: int, b: int) -> None:
        if a == b or b in self.tree[a]:
            raise CactusError(f"invalid tree edge ({a}, {b})")
        self.tree[a].add(b)
        self.tree[b].add(a)

    def remove_tree_edge(self, a: int, b: int) -> None:
        self.tree[a].remove(b)
        self.tree[b].remove(a)

    def add_cycle(self, nodes: list[int]) -> int | None:
        if len(nodes) == 2:
            self.add_tree_edge(nodes[0], nodes[1])
            return None
        if len(nodes) < 2 or len(set(nodes)) != len(nodes):
            raise CactusError(f"invalid cycle {nodes}")
        cid = self._next_cycle
        self._next_cycle += 1
        self.cycles[cid] = nodes
        for x in nodes:
            self.cyc[x].add(cid)
        return cid

    def _drop(self, x: int) -> None:
        if self.tree[x] or self.cyc[x] or self.pi[x]:
            raise CactusError(f"node {x} still has edges or vertices")
        self.alive[x] = False

    def merge_into(self, p: int, r: int) -> None:
        """Replace node ``p`` by node ``r``: edges and vertices move to ``r``."""
        if p == r:
            return
        for nb in list(self.tree[p]):
            self.remove_tree_edge(p, nb)
            self.add_tree_edge(r, nb)
        for cid in list(self.cyc[p]):
            nodes = self.cycles[cid]
            nodes[nodes.index(p)] = r
            self.cyc[r].add(cid)
        self.cyc[p].clear()
        moved = list(self.pi[p])
        self.remove_members(p, moved)
        self.add_members(r, moved)
        self._drop(p)

    def absorb(self, other: "CactusBuilder",
               translate: Callable[[int], Iterable[int]] | None = None) -> dict[int, int]:
        """Copy ``other`` into this builder; returns the node id map."""
        idmap: dict[int, int] = {}
        for x in other.nodes():
            if translate is None:
                members: Iterable[int] = other.pi[x]
            else:
                members = [y for v in other.pi[x] for y in translate(v)]
            idmap[x] = self.add_node(members)
        for x in other.nodes():
            for nb in other.tree[x]:
                if x < nb:
                    self.add_tree_edge(idmap[x], idmap[nb])
        for nodes in other.cycles.values():
            self.add_cycle([idmap[x] for x in nodes])
        return idmap

    def add_leaf(self, anchor: int, members: Iterable[int]) -> int:
        leaf = self.add_node(members)
        self.add_tree_edge(anchor, leaf)
        return leaf

    def insert_between(self, a: int, b: int, members: Iterable[int]) -> int:
        """Insert a new node on the connection between adjacent nodes ``a`` and ``b``.

        A tree edge becomes a three-node cycle; a cycle edge is split.  The
        connection may also run through an empty star centre of degree three,
        which is equivalent to a three-node cycle over its neighbours.
        """
        if b in self.tree[a]:
            self.remove_tree_edge(a, b)
            v = self.add_node(members)
            self.add_cycle([a, v, b])
            return v
        for cid in self.cyc[a] & self.cyc[b]:
            nodes = self.cycles[cid]
            i, j = nodes.index(a), nodes.index(b)
            size = len(nodes)
            if (i + 1) % size == j:
                v = self.add_node(members)
                nodes.insert(i + 1, v)
                self.cyc[v].add(cid)
                return v
            if (j + 1) % size == i:
                v = self.add_node(members)
                nodes.insert(j + 1, v)
                self.cyc[v].add(cid)
                return v
        for r in self.tree[a] & self.tree[b]:
            if not self.pi[r] and not self.cyc[r] and len(self.tree[r]) == 3:
                (c,) = self.tree[r] - {a, b}
                for nb in (a, b, c):
                    self.remove_tree_edge(r, nb)
                self._drop(r)
                v = self.add_node(members)
                self.add_cycle([a, v, b, c])
                return v
        raise CactusError(f"nodes {a} and {b} are not adjacent in the cactus")

    def normalize(self, candidates: Iterable[int] | None = None) -> None:
        """Remove empty nodes that only duplicate cuts or produce empty sides."""
        work = list(self.nodes() if candidates is None else candidates)
        while work:
            x = work.pop()
            if not self.alive[x] or self.pi[x]:
                continue
            t, c = len(self.tree[x]), len(self.cyc[x])
            if c == 0 and t in (1, 2):
                nbs = list(self.tree[x])
                for nb in nbs:
                    self.remove_tree_edge(x, nb)
                if t == 2:
                    self.add_tree_edge(nbs[0], nbs[1])
                self._drop(x)
                work.extend(nbs)
            elif c == 1 and t == 0:
                (cid,) = self.cyc[x]
                nodes = self.cycles[cid]
                nodes.remove(x)
                self.cyc[x].clear()
                self._drop(x)
                if len(nodes) == 2:
                    del self.cycles[cid]
                    for y in nodes:
                        self.cyc[y].discard(cid)
                    self.add_tree_edge(nodes[0], nodes[1])
                work.extend(nodes)
            elif c == 1 and t == 1:
                (w,) = self.tree[x]
                (cid,) = self.cyc[x]
                self.remove_tree_edge(x, w)
                nodes = self.cycles[cid]
                nodes[nodes.index(x)] = w
                self.cyc[w].add(cid)
                self.cyc[x].clear()
                self._drop(x)
                work.append(w)

    def relabel_vertices(self, translate: Callable[[int], Iterable[int]]) -> None:
        self.loc = {}
        for x in self.nodes():
            old = self.pi[x]
            self.pi[x] = set()
            self.add_members(x, [y for v in old for y in translate(v)])

    def to_cactus(self, lam: int) -> Cactus:
        """Freeze into a ``Cactus`` with a canonical node numbering.

        Non-empty nodes are ordered by their smallest vertex, empty nodes
        follow in creation order; cycles start at their smallest node.
        """
        live = self.nodes()
        full = sorted((x for x in live if self.pi[x]), key=lambda x: min(self.pi[x]))
        empty = [x for x in live if not self.pi[x]]
        new_id = {x: i for i, x in enumerate(full + empty)}
        nodes = [frozenset(self.pi[x]) for x in full + empty]
        tree_edges = sorted((min(new_id[a], new_id[b]), max(new_id[a], new_id[b]))
                            for a in live for b in self.tree[a] if a < b)
        cycles = []
        for seq in self.cycles.values():
            ids = [new_id[x] for x in seq]
            k = ids.index(min(ids))
            ids = ids[k:] + ids[:k]
            if ids[1] > ids[-1]:
                ids = [ids[0]] + ids[1:][::-1]
            cycles.append(ids)
        cycles.sort()
        return Cactus(nodes, tree_edges, cycles, lam)
