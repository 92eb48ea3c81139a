"""Cut extraction from a cactus: enumeration, most balanced cut, conductance."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .cactus import Cactus
from .graph import StaticGraph


@dataclass(frozen=True)
class CutSelection:
    edges: tuple[tuple[int, int], ...]   # one tree edge or two edges of a cycle
    side: frozenset[int]
    side_weight: int
    score: Fraction | int | None

    @property
    def is_empty(self) -> bool:
        return not self.edges

    @classmethod
    def none(cls) -> "CutSelection":
        return cls((), frozenset(), 0, None)


@dataclass(frozen=True)
class CutObjective:
    """Objective over minimum cuts driven by the lighter side's node weight.

    ``score(light, total, lam)`` must improve monotonically as the lighter
    side grows, so maximizing ``min(a, total - a)`` also optimizes the score.
    """

    name: str
    node_weight: Callable[[frozenset[int]], int]
    score: Callable[[int, int, int], Fraction | int]
    maximize: bool


BALANCE = CutObjective("balance", len, lambda light, total, lam: light, True)


def conductance_objective(g: StaticGraph) -> CutObjective:
    deg = g.weighted_degrees()

    def weight(members: frozenset[int]) -> int:
        return int(deg[list(members)].sum()) if members else 0

    def score(light: int, total: int, lam: int) -> Fraction:
        return Fraction(lam, light)

    return CutObjective("conductance", weight, score, False)


def balance_in_cycle(weights: list[int], total: int | None = None,
                     counter: list[int] | None = None) -> tuple[int, tuple[int, int]]:
    """Best ``min(w(arc), total - w(arc))`` over contiguous arcs of a cycle.

    Two queues sweep around the cycle, always moving the head of the heavier
    one to the tail of the other.  The sweep ends when node 0 becomes the
    head of the first queue for the second time.  Returns the best value and
    the arc as ``(start, length)``; ``counter`` receives the number of moves.
    """
    i = len(weights)
    if i < 3:
        raise ValueError("a cycle has at least three nodes")
    if total is None:
        total = sum(weights)
    q1: deque[int] = deque()
    q2: deque[int] = deque(range(i))
    w1, w2 = 0, total
    best, arc = -1, (0, 0)
    moves = 0
    times_head = 0
    while True:
        if q1 and q2:
            value = min(w1, w2)
            if value > best:
                best, arc = value, (q1[0], len(q1))
        was_head = bool(q1) and q1[0] == 0
        if q2 and (w1 <= w2 or not q1):
            x = q2.popleft()
            q1.append(x)
            w1 += weights[x]
            w2 -= weights[x]
        else:
            x = q1.popleft()
            q2.append(x)
            w1 -= weights[x]
            w2 += weights[x]
        moves += 1
        if q1 and q1[0] == 0 and not was_head:
            times_head += 1
            if times_head == 2:
                break
        if moves > 3 * i:
            raise AssertionError("cycle scan exceeded its move bound")
    if counter is not None:
        counter.append(moves)
    return best, arc


class _Tree:
    """DFS skeleton of a cactus with every cycle hung below its entry node."""

    def __init__(self, cactus: Cactus, weight: Callable[[frozenset[int]], int]):
        n = cactus.n_nodes
        tree_adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in cactus.tree_edges:
            tree_adj[a].append(b)
            tree_adj[b].append(a)
        cycles_of: list[list[int]] = [[] for _ in range(n)]
        for cid, cyc in enumerate(cactus.cycles):
            for x in cyc:
                cycles_of[x].append(cid)
        self.order: list[int] = []
        self.parent: dict[int, tuple[str, int]] = {}
        self.entry: dict[int, int] = {}
        self.entered: dict[int, list[int]] = {}
        seen = [False] * n
        done_cycles = [False] * len(cactus.cycles)
        stack = [0]
        seen[0] = True
        while stack:
            v = stack.pop()
            self.order.append(v)
            for cid in reversed(cycles_of[v]):
                if not done_cycles[cid]:
                    done_cycles[cid] = True
                    self.entry[cid] = v
                    self.entered.setdefault(v, []).append(cid)
                    for x in cactus.cycles[cid]:
                        if x != v:
                            seen[x] = True
                            self.parent[x] = ("cycle", cid)
                            stack.append(x)
            for w in reversed(tree_adj[v]):
                if not seen[w]:
                    seen[w] = True
                    self.parent[w] = ("tree", v)
                    stack.append(w)
        self.sub = [weight(p) for p in cactus.nodes]
        for v in reversed(self.order):
            link = self.parent.get(v)
            if link is None:
                continue
            up = link[1] if link[0] == "tree" else self.entry[link[1]]
            self.sub[up] += self.sub[v]
        self.total = self.sub[0]


def _side(cactus: Cactus, removed: set[frozenset[int]], start: int) -> frozenset[int]:
    adj: list[list[int]] = [[] for _ in range(cactus.n_nodes)]
    for a, b, _, _ in cactus.edges():
        if frozenset((a, b)) not in removed:
            adj[a].append(b)
            adj[b].append(a)
    seen = {start}
    stack = [start]
    out: set[int] = set()
    while stack:
        v = stack.pop()
        out |= cactus.nodes[v]
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(out)


def best_cut_by_objective(cactus: Cactus, objective: CutObjective = BALANCE,
                          g: StaticGraph | None = None) -> CutSelection:
    if cactus.n_nodes < 2:
        return CutSelection.none()
    tree = _Tree(cactus, objective.node_weight)
    total, sub = tree.total, tree.sub
    best_light = -1
    best_edges: tuple[tuple[int, int], ...] = ()
    best_start = 0
    for v in tree.order:
        link = tree.parent.get(v)
        if link is not None and link[0] == "tree":
            light = min(sub[v], total - sub[v])
            if light > best_light:
                best_light, best_edges, best_start = light, ((link[1], v),), v
        for cid in tree.entered.get(v, ()):
            cyc = cactus.cycles[cid]
            c0 = v
            k = cyc.index(c0)
            ring = cyc[k:] + cyc[:k]
            weights = [sub[x] for x in ring]
            weights[0] = total - sum(weights[1:])
            light, (start, length) = balance_in_cycle(weights, total)
            if light > best_light:
                i = len(ring)
                first, last = start, (start + length - 1) % i
                best_light = light
                best_edges = ((ring[first - 1], ring[first]), (ring[last], ring[(last + 1) % i]))
                best_start = ring[first]
    removed = {frozenset(e) for e in best_edges}
    side = _side(cactus, removed, best_start)
    side_weight = objective.node_weight(side)
    light = min(side_weight, total - side_weight)
    return CutSelection(best_edges, side, side_weight, objective.score(light, total, cactus.lam))


def most_balanced_cut(cactus: Cactus, n: int | None = None) -> CutSelection:
    return best_cut_by_objective(cactus, BALANCE)


def enumerate_min_cuts(cactus: Cactus) -> Iterator[frozenset[int]]:
    """Every minimum cut once, as the side holding the smallest vertex."""
    if cactus.n_nodes < 2:
        return
    everything = frozenset().union(*cactus.nodes)
    anchor = min(everything)

    def canon(side: frozenset[int]) -> frozenset[int]:
        return side if anchor in side else everything - side

    for a, b in cactus.tree_edges:
        yield canon(_side(cactus, {frozenset((a, b))}, a))
    twice = cactus.duplicate_pair_nodes()
    seen_twice: set[int] = set()
    for cyc in cactus.cycles:
        i = len(cyc)
        ring_edges = {frozenset((cyc[j], cyc[(j + 1) % i])) for j in range(i)}
        hanging = [_side(cactus, {e for e in ring_edges if cyc[j] in e}, cyc[j]) for j in range(i)]
        for p in range(i):
            acc: frozenset[int] = frozenset()
            for q in range(p + 1, i):
                # the arc cyc[p+1 .. q] cut off by the edges leaving cyc[p] and cyc[q]
                acc = acc | hanging[q]
                if q == p + 1:
                    isolated = cyc[q]
                elif p == 0 and q == i - 1:
                    isolated = cyc[0]
                else:
                    isolated = None
                if isolated in seen_twice:
                    continue
                yield canon(acc)
        seen_twice.update(x for x in cyc if x in twice)
