"""Single-source shortest paths with negative integer weights in near-linear time."""

from .context import ExecutionContext
from .errors import (BudgetExhausted, GraphError, InternalError, MonteCarloError,
                     NegativeIntraPartEdge, NegativeWeightPresent, NegSSSPError,
                     ParseError, PartitionNotDag)
from .graph import (GadgetMapping, Graph, VertexPartition, add_dummy_source, add_prices,
                    apply_price, build_graph, induced_subgraph, max_neg_magnitude,
                    reduce_out_degree, remove_edges, scale_weights, shift_all_weights,
                    shift_negative_weights, strongly_connected_components)
from .io import (GeneratorSpec, bench, generate, parse_dimacs, parse_result,
                 write_dimacs, write_result)
from .ldd import LddParams, LddResult, bounded_ball, low_diam_decomposition
from .rng import GeometricParam, Rng, rng_new, sample_geometric
from .scaledown import ScaleDownInput, scale_down
from .solver import (SsspResult, find_any_cycle, find_thresh, goldberg_solve,
                     make_nonneg_potentials, solve, sp_las_vegas, sp_main, sp_monte_carlo)
from .sssp import (UNREACHABLE, NegativeCycle, ShortestPathTree, StepBudget, bellman_ford,
                   dijkstra, elim_neg, fix_dag_edges, sp_with_few_neg_edges)
from .verify import verify_negative_cycle, verify_tree

__version__ = "0.1.0"
