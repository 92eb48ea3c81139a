"""Command-line interface."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .balance import BALANCE, best_cut_by_objective, conductance_objective
from .build import find_all_mincuts
from .cactus import Cactus, CactusError
from .config import STRATEGIES, VARIANTS, PipelineConfig
from .generate import cluster_graph, cycle_graph, generate_instances
from .graph import GraphError, StaticGraph, connected_components, induced_subgraph
from .io import ParseError, format_cactus, format_metis, read_graph, write_metis
from .oracle import MAX_BRUTE_FORCE_N, verify_cactus, verify_sound

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 2, 3, 4, 5

log = logging.getLogger("allmincuts")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, output: bool = True) -> None:
    p.add_argument("-i", "--input", required=True)
    if output:
        p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["metis", "dimacs", "edgelist"], default="metis")
    p.add_argument("--strategy", choices=STRATEGIES, default="heavy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--variant", choices=list(VARIANTS), default="full")
    p.add_argument("--threshold", type=float, default=0.01)
    comp = p.add_mutually_exclusive_group()
    comp.add_argument("--largest-component", dest="require_connected", action="store_false",
                      help="run on the largest connected component (default)")
    comp.add_argument("--require-connected", dest="require_connected", action="store_true")
    p.set_defaults(require_connected=False)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="allmincuts", description="All minimum cuts of a graph as a cactus.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(sub.add_parser("cactus", help="compute the cactus and write it"))
    _common(sub.add_parser("balanced", help="most balanced minimum cut"))
    p = sub.add_parser("objective", help="best minimum cut for an objective")
    _common(p)
    p.add_argument("--objective", choices=["balance", "conductance"], default="balance")
    p.add_argument("--conductance", dest="objective", action="store_const", const="conductance")
    _common(sub.add_parser("verify", help="compare with brute force (n <= 20) or check soundness"),
            output=False)
    p = sub.add_parser("bench", help="per-stage timings for each variant")
    _common(p)
    p.add_argument("--variants", default="all",
                   help="comma separated variant names, or 'all'")
    p = sub.add_parser("generate", help="write instance ladders or synthetic graphs")
    p.add_argument("-i", "--input")
    p.add_argument("--format", choices=["metis", "dimacs", "edgelist"], default="metis")
    p.add_argument("-o", "--output", required=True, help="output path prefix")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--synthetic", choices=["clusters", "cluster-ring", "cycle"])
    p.add_argument("--clusters", type=int, default=1000)
    p.add_argument("--size", type=int, default=100)
    p.add_argument("--degree", type=int, default=20)
    p.add_argument("-n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("echo", help="parse a graph and write it back as METIS")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--format", choices=["metis", "dimacs", "edgelist"], default="metis")
    p.add_argument("-o", "--output")
    return parser


def _config(args) -> PipelineConfig:
    return PipelineConfig(strategy=args.strategy, seed=args.seed, threads=args.threads,
                          variant=args.variant, threshold=args.threshold)


def _load(args) -> tuple[StaticGraph, StaticGraph, list[int]]:
    """The input graph, the graph to solve and the ids of its vertices in the input."""
    g = read_graph(args.input, args.format)
    if g.n == 0:
        raise GraphError("graph has no vertices")
    labels, comps = connected_components(g)
    if len(comps) == 1:
        return g, g, list(range(g.n))
    if args.require_connected:
        raise GraphError(f"graph has {len(comps)} connected components")
    log.warning("graph has %d components; using the largest (%d of %d vertices)",
                len(comps), len(comps[0]), g.n)
    keep = sorted(comps[0])
    return g, induced_subgraph(g, keep), keep


def _to_input_ids(c: Cactus, ids: list[int]) -> Cactus:
    return Cactus([frozenset(ids[v] for v in p) for p in c.nodes], c.tree_edges, c.cycles, c.lam)


def _emit(text: str, path) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _solve(args, stats=None):
    g, h, ids = _load(args)
    cactus, lam = find_all_mincuts(h, _config(args), stats)
    return g, h, ids, cactus, lam


def _cmd_cactus(args) -> int:
    _, _, ids, cactus, _ = _solve(args)
    _emit(format_cactus(_to_input_ids(cactus, ids)), args.output)
    return EXIT_OK


def _selection_text(sel, ids, label: str) -> str:
    if sel.is_empty:
        return "no cut: the graph has a single vertex\n"
    side = sorted(ids[v] for v in sel.side)
    return f"{label} {sel.score}\nside {' '.join(map(str, side))}\n"


def _cmd_balanced(args) -> int:
    _, h, ids, cactus, lam = _solve(args)
    sel = best_cut_by_objective(cactus, BALANCE)
    _emit(f"lambda {lam}\n" + _selection_text(sel, ids, "balance"), args.output)
    return EXIT_OK


def _cmd_objective(args) -> int:
    _, h, ids, cactus, lam = _solve(args)
    objective = BALANCE if args.objective == "balance" else conductance_objective(h)
    sel = best_cut_by_objective(cactus, objective, h)
    _emit(f"lambda {lam}\n" + _selection_text(sel, ids, objective.name), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    _, h, _, cactus, lam = _solve(args)
    if h.n < 2:
        print("ok: single vertex")
        return EXIT_OK
    report = verify_cactus(h, cactus) if h.n <= MAX_BRUTE_FORCE_N else verify_sound(h, cactus)
    mode = "brute force" if h.n <= MAX_BRUTE_FORCE_N else "soundness only"
    if report.ok:
        print(f"ok ({mode}): lambda {lam}, {cactus.num_cuts} minimum cuts")
        return EXIT_OK
    print(f"mismatch ({mode}): lambda {report.lam} expected {report.expected_lam}; "
          f"{len(report.missing)} missing, {len(report.spurious)} spurious, "
          f"{len(report.weight_mismatches)} wrong weight, {report.duplicates} duplicated")
    for v in report.violations:
        print(f"violation: {v}")
    return EXIT_MISMATCH


def _cmd_bench(args) -> int:
    g, h, ids = _load(args)
    names = list(VARIANTS) if args.variants == "all" else args.variants.split(",")
    out = []
    for name in names:
        if name not in VARIANTS:
            raise GraphError(f"unknown variant {name!r}")
        args.variant = name
        stats: dict = {}
        t0 = time.perf_counter()
        cactus, lam = find_all_mincuts(h, _config(args), stats)
        total = time.perf_counter() - t0
        kernel_n = stats.get("kernel_n", h.n)
        rows = [("kernel", h.n, kernel_n, stats.get("time_kernel", 0.0)),
                ("mincut", kernel_n, kernel_n, stats.get("time_mincut", 0.0)),
                ("recursion", stats.get("core_n", 0), cactus.n_nodes, stats.get("time_recursion", 0.0)),
                ("reinsert", cactus.n_nodes, cactus.n_nodes, stats.get("time_reinsert", 0.0)),
                ("total", h.n, cactus.n_nodes, total)]
        for stage, vin, vout, elapsed in rows:
            out.append(json.dumps({"variant": name, "stage": stage, "vertices_in": vin,
                                   "vertices_out": vout, "elapsed": round(elapsed, 6),
                                   "lambda": lam}))
    _emit("\n".join(out) + "\n", args.output)
    return EXIT_OK


def _cmd_generate(args) -> int:
    if args.synthetic == "clusters":
        graphs = [cluster_graph(args.clusters, args.size, args.degree, args.seed)]
    elif args.synthetic == "cluster-ring":
        graphs = [cluster_graph(args.clusters, args.size, args.degree, args.seed, ring=True)]
    elif args.synthetic == "cycle":
        graphs = [cycle_graph(args.n)]
    elif args.input:
        g = read_graph(args.input, args.format)
        labels, comps = connected_components(g)
        if len(comps) > 1:
            log.warning("using the largest of %d components", len(comps))
            g = induced_subgraph(g, sorted(comps[0]))
        graphs = generate_instances(g, args.depth)
    else:
        raise GraphError("generate needs --input or --synthetic")
    for k, g in enumerate(graphs, 1):
        path = f"{args.output}.{k}.metis" if len(graphs) > 1 or args.input else args.output
        write_metis(g, path)
        print(f"{path}: n={g.n} m={g.m}")
    return EXIT_OK


def _cmd_echo(args) -> int:
    g = read_graph(args.input, args.format)
    _emit(format_metis(g), args.output)
    return EXIT_OK


COMMANDS = {"cactus": _cmd_cactus, "balanced": _cmd_balanced, "objective": _cmd_objective,
            "verify": _cmd_verify, "bench": _cmd_bench, "generate": _cmd_generate,
            "echo": _cmd_echo}


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (GraphError, CactusError, OverflowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
