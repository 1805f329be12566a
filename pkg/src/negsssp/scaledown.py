"""ScaleDown: halve the most negative weight with a price function.

Given ``w(e) >= -2B`` and (for graphs without negative cycles) shortest
paths in ``G^B`` from a dummy source that use at most ``delta`` negative
edges, :func:`scale_down` returns an integral price function ``phi`` with
``w_phi(e) >= -B``. On graphs with a negative cycle it may run out of budget;
whenever it does return, the output has been checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import ExecutionContext
from .errors import InternalError
from .graph import Graph, edges_within, scc_labels, VertexPartition
from .ldd import LddParams, low_diam_decomposition
from .sssp import elim_neg, fix_dag_edges


@dataclass(frozen=True)
class ScaleDownInput:
    G: Graph
    Delta: int
    B: int

    def __post_init__(self):
        if self.B < 1:
            raise ValueError("B must be a positive integer")
        if self.Delta < 1:
            raise ValueError("Delta must be positive")
        low = -2 * self.B
        for e, x in enumerate(self.G.w):
            if x < low:
                raise ValueError(f"edge {e} has weight {x} < -2B = {low}")


def scale_down(inp: ScaleDownInput, ctx: ExecutionContext) -> list[int]:
    return _scale_down(inp.G, inp.Delta, inp.B, ctx, 0)


def _scale_down(g: Graph, delta: int, b: int, ctx: ExecutionContext, depth: int) -> list[int]:
    n = g.n
    counters = ctx.counters
    counters["scale_down_calls"] += 1
    if depth > counters["scale_down_max_depth"]:
        counters["scale_down_max_depth"] = depth
    w = g.w
    wb = [x + b if x < 0 else x for x in w]
    if n == 0:
        return []
    if not wb or min(wb) >= 0:
        # G^B is already nonnegative, so phi = 0 meets the stronger Phase 3 goal.
        counters["scale_down_trivial"] += 1
        return [0] * n

    if delta <= 2:
        phi2 = [0] * n
    else:
        d = -(-delta // 2)
        src, dst, out = g.src, g.dst, g.out

        # Phase 0: decompose G^B_{>=0} into pieces of weak diameter d*B.
        clamped = g.with_weights([x if x > 0 else 0 for x in wb])
        params = LddParams(D=d * b, global_n=max(2, ctx.global_n),
                           c_sample=ctx.c_sample, p_numerator=ctx.p_numerator)
        rem = low_diam_decomposition(clamped, params, ctx.rng, ctx.budget).removed
        alive = [True] * g.m
        for e in rem:
            alive[e] = False
        labels, k = scc_labels(n, out, dst, alive)

        # Phase 1: recurse on the edges inside the SCCs (weights from G).
        h = edges_within(g, labels)
        phi1_h = _scale_down(h, d, b, ctx, depth + 1)
        phi1 = phi1_h

        # Phase 2: make the DAG edges of G^B \ E_rem nonnegative.
        keep = [e for e in range(g.m) if alive[e]]
        dag = Graph(n, [src[e] for e in keep], [dst[e] for e in keep],
                    [wb[e] + phi1[src[e]] - phi1[dst[e]] for e in keep])
        partition = VertexPartition.from_labels(labels, range(k))
        psi = fix_dag_edges(dag, partition)
        phi2 = [a + c for a, c in zip(phi1, psi)]
        if ctx.debug:
            for e in keep:
                if wb[e] + phi2[src[e]] - phi2[dst[e]] < 0:
                    raise InternalError("edge of G^B outside E_rem negative after Phase 2")

    # Phase 3: ElimNeg on (G^B_s)_{phi2} with phi2(s) = 0.
    src, dst = g.src, g.dst
    s = n
    m = g.m
    w3 = [x + phi2[u] - phi2[v] for u, v, x in zip(src, dst, wb)]
    w3.extend(-p for p in phi2)
    g3 = Graph(n + 1, src + [s] * n, dst + list(range(n)), w3,
               g.out + [list(range(m, m + n))])
    psi3 = elim_neg(g3, s, ctx.budget)
    phi3 = [phi2[v] + psi3[v] for v in range(n)]
    for u, v, x in zip(src, dst, wb):
        if x + phi3[u] - phi3[v] < 0:
            raise InternalError("ScaleDown output leaves a negative edge in G^B")
    return phi3
