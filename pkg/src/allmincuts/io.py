"""Graph readers and writers, and the cactus text format."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .cactus import Cactus
from .graph import GraphError, StaticGraph, _from_arcs, build_static


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(path) -> list[str]:
    return Path(path).read_text().splitlines()


def parse_metis(path) -> StaticGraph:
    """METIS adjacency format: header ``n m [fmt [ncon]]`` then one line per vertex."""
    raw = _lines(path)
    body = [(i + 1, line) for i, line in enumerate(raw) if not line.lstrip().startswith("%")]
    if not body:
        raise ParseError("missing header")
    hline, header = body[0]
    try:
        head = [int(x) for x in header.split()]
    except ValueError:
        raise ParseError("header must be integers", hline) from None
    if len(head) < 2 or len(head) > 4 or head[0] < 0 or head[1] < 0:
        raise ParseError("header must read 'n m [fmt [ncon]]'", hline)
    n, m = head[0], head[1]
    fmt = f"{head[2]:03d}" if len(head) > 2 else "000"
    if any(ch not in "01" for ch in fmt) or len(fmt) != 3:
        raise ParseError(f"unsupported fmt {head[2]}", hline)
    has_size, has_vweight, has_eweight = (ch == "1" for ch in fmt)
    ncon = head[3] if len(head) > 3 else (1 if has_vweight else 0)
    skip = int(has_size) + (ncon if has_vweight else 0)
    rows = body[1:]
    # trailing blank lines after the last vertex are tolerated
    while len(rows) > n and not rows[-1][1].strip():
        rows.pop()
    if len(rows) != n:
        raise ParseError(f"expected {n} vertex lines, found {len(rows)}")
    src, dst, wts, line_of = [], [], [], []
    step = 2 if has_eweight else 1
    for v, (lineno, line) in enumerate(rows):
        try:
            vals = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError("non-integer token", lineno) from None
        vals = vals[skip:]
        if len(vals) % step:
            raise ParseError("neighbour without weight", lineno)
        for j in range(0, len(vals), step):
            u = vals[j] - 1
            if not 0 <= u < n:
                raise ParseError(f"neighbour {vals[j]} out of range", lineno)
            if u == v:
                raise ParseError("self-loop", lineno)
            w = vals[j + 1] if has_eweight else 1
            if w <= 0:
                raise ParseError(f"non-positive weight {w}", lineno)
            src.append(v)
            dst.append(u)
            wts.append(w)
            line_of.append(lineno)
    s = np.array(src, dtype=np.int64)
    d = np.array(dst, dtype=np.int64)
    w = np.array(wts, dtype=np.int64)
    fwd = np.lexsort((d, s))
    bwd = np.lexsort((s, d))
    if len(s) % 2 or not (np.array_equal(s[fwd], d[bwd]) and np.array_equal(d[fwd], s[bwd])
                          and np.array_equal(w[fwd], w[bwd])):
        bad = _first_asymmetric(src, dst, wts)
        raise ParseError("adjacency is not symmetric", line_of[bad])
    if len(s) // 2 != m:
        raise ParseError(f"header announces {m} edges but the lists hold {len(s) // 2}", hline)
    try:
        return _from_arcs(n, s, d, w)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def _first_asymmetric(src, dst, wts) -> int:
    count: dict[tuple[int, int, int], int] = {}
    for a, b, w in zip(src, dst, wts):
        key = (a, b, w) if a < b else (b, a, w)
        count[key] = count.get(key, 0) + (1 if a < b else -1)
    for i, (a, b, w) in enumerate(zip(src, dst, wts)):
        key = (a, b, w) if a < b else (b, a, w)
        if count[key]:
            return i
    return 0


def _edge_lines(path, one_based: bool, prefix: str | None):
    edges = []
    n = 0
    declared = None
    for lineno, line in enumerate(_lines(path), 1):
        parts = line.split()
        if not parts or parts[0] in ("c", "#", "%") or parts[0].startswith("#"):
            continue
        if prefix is not None:
            if parts[0] == "p":
                try:
                    declared = int(parts[2])
                except (IndexError, ValueError):
                    raise ParseError("malformed problem line", lineno) from None
                continue
            if parts[0] not in (prefix, "a"):
                raise ParseError(f"unknown line type {parts[0]!r}", lineno)
            parts = parts[1:]
        try:
            vals = [int(x) for x in parts]
        except ValueError:
            raise ParseError("non-integer token", lineno) from None
        if len(vals) not in (2, 3):
            raise ParseError("expected 'u v [weight]'", lineno)
        u, v = vals[0] - one_based, vals[1] - one_based
        w = vals[2] if len(vals) == 3 else 1
        if u < 0 or v < 0 or w <= 0:
            raise ParseError("invalid vertex id or weight", lineno)
        edges.append((u, v, w))
        n = max(n, u + 1, v + 1)
    if declared is not None:
        if n > declared:
            raise ParseError(f"vertex id exceeds declared count {declared}")
        n = declared
    try:
        return build_static(edges, n)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def parse_dimacs(path) -> StaticGraph:
    """DIMACS style: ``p edge n m`` and ``e u v [w]`` lines, 1-based."""
    return _edge_lines(path, True, "e")


def parse_edgelist(path) -> StaticGraph:
    """Plain ``u v [w]`` lines with 0-based ids; ``#`` starts a comment."""
    return _edge_lines(path, False, None)


READERS = {"metis": parse_metis, "dimacs": parse_dimacs, "edgelist": parse_edgelist}


def read_graph(path, fmt: str = "metis") -> StaticGraph:
    try:
        return READERS[fmt](path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def format_metis(g: StaticGraph) -> str:
    weighted = bool(g.m) and bool((g.weights != 1).any())
    lines = [f"{g.n} {g.m} 1" if weighted else f"{g.n} {g.m}"]
    for v in range(g.n):
        if weighted:
            lines.append(" ".join(f"{u + 1} {w}" for u, w in g.neighbors(v)))
        else:
            lines.append(" ".join(str(u + 1) for u, _ in g.neighbors(v)))
    return "\n".join(lines) + "\n"


def write_metis(g: StaticGraph, path) -> None:
    Path(path).write_text(format_metis(g))


def format_cactus(c: Cactus) -> str:
    lines = [f"{c.n_nodes} {c.n_edges} {c.lam} {c.num_cuts}"]
    for a, b, kind, cid in c.edges():
        lines.append(f"{a} {b} {kind} {'-' if cid is None else cid}")
    for i, p in enumerate(c.nodes):
        lines.append(f"{i}: {' '.join(map(str, sorted(p)))}".rstrip())
    return "\n".join(lines) + "\n"


def write_cactus(c: Cactus, path) -> None:
    Path(path).write_text(format_cactus(c))


def parse_cactus(path) -> Cactus:
    raw = [line for line in _lines(path) if line.strip()]
    try:
        n_nodes, n_edges, lam, _ = (int(x) for x in raw[0].split())
        tree, cycle_edges = [], {}
        for line in raw[1:1 + n_edges]:
            a, b, kind, cid = line.split()
            if kind == "tree":
                tree.append((int(a), int(b)))
            else:
                cycle_edges.setdefault(int(cid), []).append((int(a), int(b)))
        nodes = []
        for line in raw[1 + n_edges:1 + n_edges + n_nodes]:
            _, _, rest = line.partition(":")
            nodes.append(frozenset(int(x) for x in rest.split()))
    except (ValueError, IndexError):
        raise ParseError("malformed cactus file") from None
    cycles = []
    for cid in sorted(cycle_edges):
        seq = [a for a, _ in cycle_edges[cid]]
        cycles.append(seq)
    return Cactus(nodes, tree, cycles, lam)
