"""Brute-force ground truth for small graphs."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .balance import enumerate_min_cuts
from .cactus import Cactus, structural_violations
from .graph import GraphError, StaticGraph

MAX_BRUTE_FORCE_N = 20


@dataclass(frozen=True)
class CutSet:
    lam: int
    cuts: frozenset[frozenset[int]]   # each cut as the side holding vertex 0


def _side_bits(n: int) -> np.ndarray:
    """Row ``v`` tells for every bipartition whether ``v`` is on vertex 0's side."""
    masks = np.arange(1 << (n - 1), dtype=np.int64)
    bits = np.empty((n, len(masks)), dtype=bool)
    bits[0] = True
    for v in range(1, n):
        bits[v] = ((masks >> (v - 1)) & 1) == 0
    return bits


def _all_cut_weights(g: StaticGraph) -> tuple[np.ndarray, np.ndarray]:
    if not 2 <= g.n <= MAX_BRUTE_FORCE_N:
        raise GraphError(f"brute force needs 2 <= n <= {MAX_BRUTE_FORCE_N}")
    bits = _side_bits(g.n)
    weights = np.zeros(bits.shape[1], dtype=np.int64)
    for u, v, w in g.edges():
        weights += w * (bits[u] != bits[v])
    return bits, weights


def brute_force_min_cuts(g: StaticGraph) -> CutSet:
    bits, weights = _all_cut_weights(g)
    # mask 0 puts every vertex on vertex 0's side
    proper = np.ones(len(weights), dtype=bool)
    proper[0] = False
    lam = int(weights[proper].min())
    chosen = np.flatnonzero(proper & (weights == lam))
    cuts = frozenset(frozenset(np.flatnonzero(bits[:, c]).tolist()) for c in chosen)
    return CutSet(lam, cuts)


def brute_force_st_cut(g: StaticGraph, s: int, t: int) -> int:
    if s == t:
        raise GraphError("source and sink must differ")
    bits, weights = _all_cut_weights(g)
    return int(weights[bits[s] != bits[t]].min())


def brute_force_best_cut(g: StaticGraph, objective: str = "balance"):
    """Best value over all minimum cuts: max balance, or min conductance."""
    ref = brute_force_min_cuts(g)
    if objective == "balance":
        return max(min(len(c), g.n - len(c)) for c in ref.cuts)
    deg = g.weighted_degrees()
    total = int(deg.sum())
    best = None
    for c in ref.cuts:
        a = int(deg[list(c)].sum())
        score = Fraction(ref.lam, min(a, total - a))
        if best is None or score < best:
            best = score
    return best


@dataclass
class VerifyReport:
    lam: int
    expected_lam: int | None
    missing: list[frozenset[int]] = field(default_factory=list)
    spurious: list[frozenset[int]] = field(default_factory=list)
    weight_mismatches: list[tuple[frozenset[int], int]] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    duplicates: int = 0

    @property
    def ok(self) -> bool:
        return not (self.missing or self.spurious or self.weight_mismatches or self.violations
                    or self.duplicates
                    or (self.expected_lam is not None and self.lam != self.expected_lam))


def cactus_cuts(g: StaticGraph, cactus: Cactus) -> tuple[list[frozenset[int]], list[tuple[frozenset[int], int]]]:
    """Cuts derived from the cactus and those whose weight in ``g`` differs from lambda."""
    cuts = list(enumerate_min_cuts(cactus))
    bad = []
    for c in cuts:
        w = g.cut_weight(c)
        if w != cactus.lam:
            bad.append((c, w))
    return cuts, bad


def verify_sound(g: StaticGraph, cactus: Cactus) -> VerifyReport:
    """Checks that need no enumeration of all bipartitions (any graph size)."""
    cuts, bad = cactus_cuts(g, cactus)
    rep = VerifyReport(cactus.lam, None, weight_mismatches=bad,
                       violations=structural_violations(cactus, g.n))
    rep.duplicates = len(cuts) - len(set(cuts))
    return rep


def verify_cactus(g: StaticGraph, cactus: Cactus) -> VerifyReport:
    """Compare the cactus's cuts with brute force (n <= 20)."""
    rep = verify_sound(g, cactus)
    ref = brute_force_min_cuts(g)
    rep.expected_lam = ref.lam
    got = set(enumerate_min_cuts(cactus))
    rep.missing = sorted(ref.cuts - got, key=sorted)
    rep.spurious = sorted(got - ref.cuts, key=sorted)
    return rep
