"""Exact integer maximum flow and the residual-graph SCC decomposition.

An undirected edge of weight ``c`` is modelled as the arc pair ``(u, v)`` and
``(v, u)``, each of capacity ``c``, that act as each other's residual twin.
Flow is antisymmetric, so pushing ``f`` along ``(u, v)`` leaves residual
``c - f`` on ``(u, v)`` and ``c + f`` on ``(v, u)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import DynamicGraph, GraphError, StaticGraph


def _arc_lists(g) -> tuple[int, list[int], list[int], list[int], list[int]]:
    if isinstance(g, StaticGraph):
        offsets, targets, weights, reverse = g.lists()
        return g.n, offsets, targets, weights, reverse
    if isinstance(g, DynamicGraph):
        offsets = [0]
        for arcs in g.adj:
            offsets.append(offsets[-1] + len(arcs))
        targets, weights, reverse = [], [], []
        for arcs in g.adj:
            for w, c, r in arcs:
                targets.append(w)
                weights.append(c)
                reverse.append(offsets[w] + r)
        return g.n, offsets, targets, weights, reverse
    raise TypeError(f"unsupported graph type {type(g).__name__}")


@dataclass
class FlowResult:
    """Maximum flow between ``s`` and ``t`` with per-arc flow values.

    Arc indices follow the CSR layout of the input graph (for a
    ``DynamicGraph`` the arcs of vertex ``v`` are numbered consecutively).
    """

    value: int
    s: int
    t: int
    n: int
    offsets: list[int]
    targets: list[int]
    capacity: list[int]
    reverse: list[int]
    flow: list[int]

    def residual(self, a: int) -> int:
        return self.capacity[a] - self.flow[a]

    def source_side(self) -> set[int]:
        """Vertices reachable from ``s`` in the residual graph."""
        seen = {self.s}
        stack = [self.s]
        while stack:
            v = stack.pop()
            for a in range(self.offsets[v], self.offsets[v + 1]):
                w = self.targets[a]
                if w not in seen and self.capacity[a] > self.flow[a]:
                    seen.add(w)
                    stack.append(w)
        return seen


def max_flow(g, s: int, t: int) -> FlowResult:
    """Dinic's algorithm on the undirected graph ``g``."""
    if s == t:
        raise GraphError("source and sink must differ")
    n, offsets, targets, cap, reverse = _arc_lists(g)
    if not (0 <= s < n and 0 <= t < n):
        raise GraphError("source or sink out of range")
    flow = [0] * len(targets)
    source_of = [0] * len(targets)
    for v in range(n):
        for a in range(offsets[v], offsets[v + 1]):
            source_of[a] = v
    total = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for a in range(offsets[v], offsets[v + 1]):
                w = targets[a]
                if level[w] < 0 and cap[a] > flow[a]:
                    level[w] = level[v] + 1
                    queue.append(w)
        if level[t] < 0:
            break
        ptr = offsets[:-1]
        path: list[int] = []
        v = s
        while True:
            if v == t:
                push = min(cap[a] - flow[a] for a in path)
                for a in path:
                    flow[a] += push
                    flow[reverse[a]] -= push
                total += push
                # resume from the tail of the first saturated arc
                for i, a in enumerate(path):
                    if cap[a] == flow[a]:
                        del path[i:]
                        v = source_of[a]
                        break
                continue
            end = offsets[v + 1]
            a = ptr[v]
            lv = level[v] + 1
            while a < end and not (level[targets[a]] == lv and cap[a] > flow[a]):
                a += 1
            ptr[v] = a
            if a < end:
                path.append(a)
                v = targets[a]
            else:
                if v == s:
                    break
                level[v] = -1
                a = path.pop()
                v = source_of[a]
                ptr[v] += 1
    return FlowResult(total, s, t, n, offsets, targets, cap, reverse, flow)


@dataclass
class SccPartition:
    """Strongly connected components of a residual graph.

    Component ids are in reverse topological order of the residual arcs
    (Tarjan's output order), so an arc between components always goes from
    a higher id to a lower or equal one.
    """

    comp: list[int]
    count: int
    s_comp: int
    t_comp: int

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v, c in enumerate(self.comp):
            out[c].append(v)
        return out


def strongly_connected_components(n: int, successors) -> tuple[list[int], int]:
    """Iterative Tarjan.  ``successors(v)`` returns an iterable of targets."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    count = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            for w in it:
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(successors(w))))
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = count
                        if w == v:
                            break
                    count += 1
    return comp, count


def residual_sccs(g, flow: FlowResult) -> SccPartition:
    """SCCs of the residual graph of a maximum flow on ``g``."""
    offsets, targets, cap, fl = flow.offsets, flow.targets, flow.capacity, flow.flow
    if g is not None and g.n != flow.n:
        raise GraphError("flow does not belong to this graph")

    def successors(v):
        return [targets[a] for a in range(offsets[v], offsets[v + 1]) if cap[a] > fl[a]]

    comp, count = strongly_connected_components(flow.n, successors)
    return SccPartition(comp, count, comp[flow.s], comp[flow.t])
