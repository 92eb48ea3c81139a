"""All minimum cuts of a weighted graph, represented as a cactus."""
from .balance import (BALANCE, CutObjective, CutSelection, balance_in_cycle, best_cut_by_objective,
                      conductance_objective, enumerate_min_cuts, most_balanced_cut)
from .build import (DegreeTwoRecord, degree_two_contract, find_all_mincuts, merge_cacti,
                    recursive_cactus, reinsert_degree_one, reinsert_degree_two, select_edge)
from .cactus import Cactus, CactusBuilder, CactusError, structural_violations
from .config import STRATEGIES, VARIANTS, PipelineConfig, Variant
from .flow import FlowResult, SccPartition, max_flow, residual_sccs
from .graph import (ContractionMapping, DynamicGraph, GraphError, StaticGraph, UnionFind,
                    WeightOverflowError, build_static, contract_bulk)
from .kernel import (DegreeOneRecord, EdgeConnectivityBounds, KernelState,
                     connectivity_lower_bounds, contract_degree_one, contract_high_connectivity,
                     estimate_lambda, kernelize, local_contract)
from .mincut import DisconnectedGraphError, MinCutResult, exact_min_cut

__all__ = [name for name in dir() if not name.startswith("_")]
