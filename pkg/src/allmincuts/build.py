"""Construction of the cactus of all minimum cuts.

The recursion picks an edge ``(s, t)``.  If every ``s``-``t`` cut is heavier
than the minimum cut, the edge is contracted.  Otherwise the strongly
connected components of the residual graph of a maximum flow are ordered
into a poset whose closed sets are exactly the minimum ``s``-``t`` cuts.
That poset is turned into a small cactus with one node per component, every
component with several vertices is solved recursively with the rest of the
graph contracted to one vertex, and the resulting cacti are glued in.
"""
from __future__ import annotations

import random
import sys
import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .cactus import Cactus, CactusBuilder, CactusError
from .config import PipelineConfig
from .flow import FlowResult, SccPartition, max_flow, residual_sccs
from .graph import DynamicGraph, GraphError, StaticGraph, UnionFind, build_static
from .kernel import (DegreeOneRecord, KernelState, connectivity_lower_bounds,
                     contract_high_connectivity, kernelize, local_contract)
from .mincut import DisconnectedGraphError, exact_min_cut

_SENTINEL = -1


@dataclass
class DegreeTwoRecord:
    kind: str                      # "leaf" or "cycle"
    members: tuple[int, ...]
    u0: int                        # vertex encompassed by the heavier neighbour
    u1: int
    c0: int
    c1: int


@dataclass
class _Context:
    strategy: str
    rng: random.Random
    kernel_in_recursion: bool
    degree_one_in_recursion: bool
    degree_two: bool
    every: int
    local_rules: tuple[str, ...]
    stats: dict = field(default_factory=dict)

    def bump(self, key: str, amount: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + amount


# ---------------------------------------------------------------- selection

def _bfs_last(g: DynamicGraph, root: int) -> tuple[int, list[int]]:
    parent = [-1] * g.n
    parent[root] = root
    queue = deque([root])
    last = root
    while queue:
        v = queue.popleft()
        last = v
        for w, _, _ in g.adj[v]:
            if parent[w] < 0:
                parent[w] = v
                queue.append(w)
    return last, parent


def _arc_index(g: DynamicGraph, u: int, v: int) -> int:
    for i, arc in enumerate(g.adj[u]):
        if arc[0] == v:
            return i
    raise GraphError(f"no edge between {u} and {v}")


def select_edge(g: DynamicGraph, strategy: str = "heavy",
                rng: random.Random | None = None) -> tuple[int, int]:
    """Pick the edge to run the next flow on; returns ``(u, arc index)``."""
    if g.n < 2 or not any(g.adj):
        raise GraphError("graph has no edges")
    if strategy in ("heavy", "weightedheavy"):
        if strategy == "heavy":
            score = [len(a) for a in g.adj]
        else:
            score = [sum(arc[1] for arc in a) for a in g.adj]
        u = max(range(g.n), key=lambda v: (score[v], -v))
        v = max((arc[0] for arc in g.adj[u]), key=lambda w: (score[w], -w))
        return u, _arc_index(g, u, v)
    rng = rng or random.Random(0)
    if strategy == "random":
        k = rng.randrange(sum(len(a) for a in g.adj))
        for u, arcs in enumerate(g.adj):
            if k < len(arcs):
                return u, k
            k -= len(arcs)
    if strategy == "central":
        a, _ = _bfs_last(g, rng.randrange(g.n))
        b, parent = _bfs_last(g, a)
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        if path[0] > path[-1]:
            path.reverse()
        i = (len(path) - 1) // 2
        return path[i], _arc_index(g, path[i], path[i + 1])
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------- reductions

def degree_two_contract(g: DynamicGraph, lam: int) -> tuple[int, list[DegreeTwoRecord]]:
    """Contract degree-two vertices whose cuts can be restored afterwards."""
    records: list[DegreeTwoRecord] = []
    count = 0
    v = 0
    while v < g.n:
        arcs = g.adj[v]
        if len(arcs) == 2 and g.n > 2:
            (u0, c0, _), (u1, c1, _) = arcs
            if c0 < c1 or (c0 == c1 and u1 < u0):
                u0, c0, u1, c1 = u1, c1, u0, c0
            cv = c0 + c1
            if cv < lam:
                raise GraphError(f"vertex cut {cv} is below the minimum cut {lam}")
            if c0 != c1 or cv == lam:
                if cv == lam:
                    kind = "leaf" if c0 != c1 else "cycle"
                    records.append(DegreeTwoRecord(kind, tuple(g.members[v]), g.members[u0][0],
                                                   g.members[u1][0], c0, c1))
                g.merge(u0, v)
                count += 1
                continue  # slot v now holds another vertex
        v += 1
    return count, records


def _degree_one_pass(g: DynamicGraph, lam: int) -> list[DegreeTwoRecord]:
    records = []
    changed = True
    while changed and g.n > 1:
        changed = False
        v = 0
        while v < g.n and g.n > 1:
            arcs = g.adj[v]
            if len(arcs) == 1:
                w, c, _ = arcs[0]
                if c < lam:
                    raise GraphError(f"vertex cut {c} is below the minimum cut {lam}")
                if c == lam:
                    records.append(DegreeTwoRecord("leaf", tuple(g.members[v]), g.members[w][0],
                                                   g.members[w][0], c, 0))
                g.merge(w, v)
                changed = True
                continue
            v += 1
    return records


def _recursion_kernel(g: DynamicGraph, lam: int, ctx: _Context) -> DynamicGraph:
    sg = g.to_static()
    uf = UnionFind(sg.n)
    bounds = connectivity_lower_bounds(sg, lam, ctx.rng.randrange(sg.n))
    contract_high_connectivity(sg, bounds, lam, uf)
    local_contract(sg, lam, uf, ctx.local_rules)
    labels, new_n = uf.labels()
    if new_n == g.n:
        return g
    ctx.bump("recursion_kernel_removed", g.n - new_n)
    return g.contract_classes(labels.tolist(), new_n)


# ---------------------------------------------------------------- reinsertion

def _reinsert(b: CactusBuilder, records) -> None:
    for rec in reversed(records):
        if isinstance(rec, DegreeOneRecord):
            members, a_rep, b_rep, kind = rec.leaf, rec.neighbor, rec.neighbor, "leaf"
        else:
            members, a_rep, b_rep, kind = rec.members, rec.u0, rec.u1, rec.kind
        a = b.node_of(a_rep)
        b.remove_members(b.node_of(members[0]), members)
        if kind == "leaf" or b.node_of(b_rep) == a:
            b.add_leaf(a, members)
        else:
            b.insert_between(a, b.node_of(b_rep), members)


def reinsert_degree_one(cactus: Cactus, records: list[DegreeOneRecord], lam: int) -> Cactus:
    b = cactus.builder()
    _reinsert(b, [r for r in records if r.lambda_at_contraction == lam])
    return b.to_cactus(lam)


def reinsert_degree_two(cactus: Cactus, records: list[DegreeTwoRecord]) -> Cactus:
    b = cactus.builder()
    _reinsert(b, records)
    return b.to_cactus(cactus.lam)


# ---------------------------------------------------------------- merging

def merge_cacti(component: Cactus, subs: dict[int, tuple[Cactus, int]]) -> Cactus:
    """Replace node ``i`` of ``component`` by ``subs[i] = (cactus, attachment vertex)``.

    Edges at node ``i`` move to the sub-cactus node holding the attachment
    vertex; the attachment vertex is dropped if ``component`` does not
    contain it.
    """
    b = component.builder()
    for node, (sub, attach) in subs.items():
        inside = attach in b.loc
        if inside:
            b.remove_members(b.node_of(attach), [attach])
        b.absorb(sub.builder())
        r = b.node_of(attach)
        if not inside:
            b.remove_members(r, [attach])
        b.merge_into(node, r)
    b.normalize()
    return b.to_cactus(component.lam)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _component_structure(g: DynamicGraph, lam: int, fr: FlowResult, scc: SccPartition,
                         cb: CactusBuilder, anchor: list[int]) -> None:
    """Add the cactus of all minimum ``s``-``t`` cuts over the components.

    A component ``a`` lies below ``b`` when ``a`` is reachable from ``b`` in
    the residual graph; closed sets are the ``s`` sides of minimum cuts.
    Components comparable with all others form a chain of junctions and
    single-arc cycles; the remaining ones come in groups of two parallel
    chains, each group forming one cycle.
    """
    k, comp = scc.count, scc.comp
    S, T = scc.s_comp, scc.t_comp
    offsets, targets, cap, flow = fr.offsets, fr.targets, fr.capacity, fr.flow
    succ: list[set[int]] = [set() for _ in range(k)]
    for v in range(fr.n):
        cv = comp[v]
        for a in range(offsets[v], offsets[v + 1]):
            if cap[a] > flow[a]:
                cw = comp[targets[a]]
                if cw != cv:
                    succ[cv].add(cw)
    cutc = [0] * k
    between: dict[tuple[int, int], int] = {}
    for u, arcs in enumerate(g.adj):
        cu = comp[u]
        for w, c, _ in arcs:
            cw = comp[w]
            if cu != cw:
                cutc[cu] += c
                if cu < cw:
                    between[(cu, cw)] = between.get((cu, cw), 0) + c
    down = [0] * k
    pred: list[list[int]] = [[] for _ in range(k)]
    for c in range(k):
        m = 1 << c
        for a in succ[c]:
            m |= down[a]
            pred[a].append(c)
        down[c] = m
    up = [0] * k
    for c in range(k - 1, -1, -1):
        m = 1 << c
        for p in pred[c]:
            m |= up[p]
        up[c] = m
    full = (1 << k) - 1
    incomparable = [full ^ (down[c] | up[c]) for c in range(k)]

    uf = UnionFind(k)
    for c in range(k):
        for d in _bits(incomparable[c]):
            uf.union(c, d)
    group_members: dict[int, list[int]] = {}
    for c in range(k):
        if incomparable[c]:
            group_members.setdefault(uf.find(c), []).append(c)

    def pair_cut(a: int, b: int) -> int:
        return cutc[a] + cutc[b] - 2 * between.get((min(a, b), max(a, b)), 0)

    seq: list[tuple] = []
    seen_groups: set[int] = set()
    for c in range(k):
        if incomparable[c]:
            root = uf.find(c)
            if root in seen_groups:
                continue
            seen_groups.add(root)
            members = group_members[root]
            a = members[0]
            chain_a = [x for x in members if not (incomparable[a] >> x) & 1]
            chain_b = [x for x in members if (incomparable[a] >> x) & 1]
            mask_b = sum(1 << x for x in chain_b)
            for x in chain_a:
                if incomparable[x] & mask_b != mask_b:
                    raise CactusError("incomparable components do not form two chains")
            seq.append(("G", [anchor[x] for x in chain_a], [anchor[x] for x in chain_b]))
        elif c in (S, T) or cutc[c] != lam:
            seq.append(("J", anchor[c]))
        else:
            if seq and seq[-1][0] == "R" and pair_cut(seq[-1][2], c) == lam:
                seq[-1][1].append(anchor[c])
                seq[-1] = ("R", seq[-1][1], c)
            else:
                seq.append(("R", [anchor[c]], c))
    items: list[tuple] = []
    for item in seq:
        if item[0] != "J" and (not items or items[-1][0] != "J"):
            items.append(("J", cb.add_node()))
        items.append(item)
    for i, item in enumerate(items):
        if item[0] == "J":
            if i and items[i - 1][0] == "J":
                cb.add_tree_edge(items[i - 1][1], item[1])
        elif item[0] == "R":
            cb.add_cycle([items[i - 1][1]] + item[1] + [items[i + 1][1]])
        else:
            cb.add_cycle([items[i - 1][1]] + item[1] + [items[i + 1][1]] + item[2][::-1])


def _decompose(g: DynamicGraph, lam: int, fr: FlowResult, ctx: _Context,
               depth: int) -> CactusBuilder:
    scc = residual_sccs(g, fr)
    parts = scc.members()
    cb = CactusBuilder()
    anchor = [cb.add_node(g.members[p[0]] if len(p) == 1 else ()) for p in parts]
    _component_structure(g, lam, fr, scc, cb, anchor)
    comp = scc.comp
    for c, part in enumerate(parts):
        if len(part) < 2:
            continue
        loc = {v: i for i, v in enumerate(part)}
        if c == scc.s_comp:
            x = loc[fr.s]
        elif c == scc.t_comp:
            x = loc[fr.t]
        else:
            x = len(part)
        edges = []
        for v in part:
            lv = loc[v]
            for w, wt, _ in g.adj[v]:
                if comp[w] == c:
                    if v < w:
                        edges.append((lv, loc[w], wt))
                else:
                    edges.append((lv, x, wt))
        size = len(part) + (x == len(part))
        sub = DynamicGraph.from_static(build_static(edges, size))
        sb = _solve(sub, lam, ctx, depth + 1)
        members = g.members

        def translate(i: int, part=part):
            return members[part[i]] if i < len(part) else (_SENTINEL,)

        cb.absorb(sb, translate)
        if x == len(part):
            r = cb.node_of(_SENTINEL)
            cb.remove_members(r, [_SENTINEL])
        else:
            r = cb.node_of(members[part[x]][0])
        cb.merge_into(anchor[c], r)
    cb.normalize()
    return cb


def _solve(g: DynamicGraph, lam: int, ctx: _Context, depth: int) -> CactusBuilder:
    """Cactus (over ``g.members`` ids) of all cuts of weight ``lam`` in ``g``."""
    ctx.stats["max_depth"] = max(ctx.stats.get("max_depth", 0), depth)
    records: list[DegreeTwoRecord] = []
    if ctx.kernel_in_recursion and depth and depth % ctx.every == 0 and g.n > 2:
        g = _recursion_kernel(g, lam, ctx)
    while True:
        if g.n > 1 and ctx.degree_one_in_recursion:
            records.extend(_degree_one_pass(g, lam))
        if g.n > 2 and ctx.degree_two:
            records.extend(degree_two_contract(g, lam)[1])
        if g.n == 1:
            b = CactusBuilder()
            b.add_node(g.members[0])
            break
        e = select_edge(g, ctx.strategy, ctx.rng)
        s, t = e[0], g.adj[e[0]][e[1]][0]
        fr = max_flow(g, s, t)
        ctx.bump("flows")
        if fr.value > lam:
            g.contract_edge(e)
            continue
        if fr.value < lam:
            raise GraphError(f"found an s-t cut of weight {fr.value} below {lam}")
        b = _decompose(g, lam, fr, ctx, depth)
        break
    _reinsert(b, records)
    return b


def recursive_cactus(g: DynamicGraph, lam: int, strategy: str = "heavy", *,
                     config: PipelineConfig | None = None, stats: dict | None = None) -> Cactus:
    """Cactus of all cuts of weight ``lam`` (the exact minimum) in ``g``."""
    ctx = _make_context(config or PipelineConfig(strategy=strategy), stats)
    ctx.strategy = strategy
    b = _solve(g, lam, ctx, 0)
    return b.to_cactus(lam)


def _make_context(config: PipelineConfig, stats: dict | None) -> _Context:
    flags = config.flags
    return _Context(config.strategy, random.Random(config.seed), flags.kernel_in_recursion,
                    flags.degree_one_in_recursion, flags.degree_two,
                    config.recursion_kernel_every, tuple(config.local_rules),
                    stats if stats is not None else {})


def _ensure_recursion_limit(n: int) -> None:
    need = 4 * n + 1000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def find_all_mincuts(g: StaticGraph, config: PipelineConfig | None = None,
                     stats: dict | None = None) -> tuple[Cactus, int]:
    """Cactus of all minimum cuts of the connected graph ``g`` and the minimum cut value."""
    config = config or PipelineConfig()
    flags = config.flags
    if stats is None:
        stats = {}
    ctx = _make_context(config, stats)
    if g.n == 0:
        raise GraphError("empty graph")
    if g.n == 1:
        return Cactus.single([0], 0), 0
    if not g.is_connected():
        raise DisconnectedGraphError("graph is disconnected")
    _ensure_recursion_limit(g.n)
    stats["n"], stats["m"] = g.n, g.m
    t0 = time.perf_counter()
    if flags.kernelizes:
        kernel, state = kernelize(g, connectivity=flags.connectivity, local=flags.local,
                                  degree_one=flags.degree_one, threshold=config.threshold,
                                  threads=config.threads, seed=config.seed,
                                  estimate_rounds=config.estimate_rounds,
                                  local_rules=config.local_rules, stats=stats)
    else:
        kernel = g
        state = KernelState(int(g.weighted_degrees().min()), np.arange(g.n, dtype=np.int64))
    t1 = time.perf_counter()
    stats["kernel_n"] = kernel.n
    stats["time_kernel"] = t1 - t0
    if kernel.n >= 2:
        lam_kernel = exact_min_cut(kernel).lam
        lam = min(lam_kernel, state.lambda_hat)
    else:
        lam_kernel = None
        lam = state.lambda_hat
    t2 = time.perf_counter()
    stats["time_mincut"] = t2 - t1
    stats["lambda"] = lam
    order = np.argsort(state.labels, kind="stable")
    starts = np.searchsorted(state.labels[order], np.arange(kernel.n + 1)).tolist()
    order = order.tolist()
    groups = [order[starts[v]:starts[v + 1]] for v in range(kernel.n)]
    if lam_kernel == lam:
        stats["core_n"] = kernel.n
        dg = DynamicGraph.from_static(kernel)
        b = _solve(dg, lam, ctx, 0)
        b.relabel_vertices(lambda v: groups[v])
    else:
        stats["core_n"] = 1 if kernel.n == 1 else 0
        b = CactusBuilder()
        b.add_node(range(g.n))
    t3 = time.perf_counter()
    stats["time_recursion"] = t3 - t2
    _reinsert(b, [r for r in state.degree_one_stack if r.lambda_at_contraction == lam])
    stats["time_reinsert"] = time.perf_counter() - t3
    return b.to_cactus(lam), lam
