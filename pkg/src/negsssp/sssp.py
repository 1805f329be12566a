"""Shortest-path building blocks: Dijkstra, Bellman-Ford, ElimNeg, FixDAGEdges.

Distances are Python integers; unreachable vertices carry ``UNREACHABLE``
(``math.inf``), which compares and adds correctly against integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from .errors import (BudgetExhausted, NegativeIntraPartEdge, NegativeWeightPresent,
                     PartitionNotDag)
from .graph import Graph, VertexPartition

UNREACHABLE = math.inf
INF = math.inf


@dataclass
class ShortestPathTree:
    source: int
    dist: list
    parent: list  # edge id or None

    def path_edges(self, v: int, g: Graph) -> list[int]:
        """Edge ids of the tree path from the source to ``v``."""
        path = []
        while self.parent[v] is not None:
            e = self.parent[v]
            path.append(e)
            v = g.src[e]
        path.reverse()
        return path


@dataclass
class NegativeCycle:
    vertices: list[int]
    edges: list[int]
    weight: int


class StepBudget:
    """Counts heap pushes, pops and edge relaxations against a limit.

    ``limit=None`` only counts. Exceeding the limit raises
    :class:`BudgetExhausted`; the check runs once per charged batch, so a
    caller overshoots by at most one batch.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def charge(self, k: int = 1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"step budget {self.limit} exhausted")

    @property
    def remaining(self):
        return None if self.limit is None else self.limit - self.used


def _require_nonnegative(g: Graph):
    for e, x in enumerate(g.w):
        if x < 0:
            raise NegativeWeightPresent(f"edge {e} has negative weight {x}")


def dijkstra(g: Graph, s: int, budget: StepBudget | None = None) -> ShortestPathTree:
    """Single-source shortest paths for nonnegative weights (binary heap, lazy deletion)."""
    _require_nonnegative(g)
    n = g.n
    dist = [INF] * n
    parent = [None] * n
    done = [False] * n
    dist[s] = 0
    heap = [(0, s)]
    out, dst, w = g.out, g.dst, g.w
    ops = 1
    while heap:
        d, v = heappop(heap)
        ops += 1
        if done[v]:
            continue
        done[v] = True
        for e in out[v]:
            x = dst[e]
            nd = d + w[e]
            ops += 1
            if nd < dist[x]:
                dist[x] = nd
                parent[x] = e
                heappush(heap, (nd, x))
                ops += 1
        if budget is not None:
            budget.charge(ops)
            ops = 0
    if budget is not None and ops:
        budget.charge(ops)
    return ShortestPathTree(s, dist, parent)


def _walk_cycle(g: Graph, parent: list, v: int) -> NegativeCycle:
    """Follow parent edges from ``v`` into the cycle they must contain."""
    for _ in range(g.n):
        v = g.src[parent[v]]
    start = v
    edges = []
    while True:
        e = parent[v]
        edges.append(e)
        v = g.src[e]
        if v == start:
            break
    edges.reverse()
    verts = [g.src[e] for e in edges]
    return NegativeCycle(verts, edges, sum(g.w[e] for e in edges))


def bellman_ford(g: Graph, s: int, budget: StepBudget | None = None):
    """Exact distances from ``s`` or a negative cycle reachable from ``s``.

    Returns a :class:`ShortestPathTree` or a :class:`NegativeCycle`. This is
    the O(nm) baseline used as the test oracle.
    """
    n = g.n
    dist = [INF] * n
    parent = [None] * n
    dist[s] = 0
    src, dst, w = g.src, g.dst, g.w
    m = g.m
    last = None
    for _ in range(n):
        last = None
        for e in range(m):
            du = dist[src[e]]
            if du is INF:
                continue
            nd = du + w[e]
            x = dst[e]
            if nd < dist[x]:
                dist[x] = nd
                parent[x] = e
                last = x
        if budget is not None:
            budget.charge(m)
        if last is None:
            return ShortestPathTree(s, dist, parent)
    return _walk_cycle(g, parent, last)


def elim_neg(g: Graph, s: int, budget: StepBudget | None = None,
             stats: dict | None = None) -> list[int]:
    """Distances from ``s`` by alternating Dijkstra and Bellman-Ford phases.

    Requires ``s`` to reach every vertex. Returns ``d`` with ``d[v] =
    dist(s, v)``, a price function making every edge nonnegative. The work is
    proportional to ``n`` plus the number of negative edges on shortest
    paths, times a log factor.

    With a negative cycle reachable from ``s`` the phases never settle; the
    budget runs out, or the iteration count exceeds ``n`` (no shortest path
    needs more than ``n - 1`` negative edges), which certifies the cycle.
    ``stats`` (if given) receives ``pushes``, ``pops`` and ``iterations``.
    """
    n = g.n
    out, dst, w = g.out, g.dst, g.w
    d = [INF] * n
    d[s] = 0
    inq = [False] * n
    marked = [False] * n
    heap = [(0, s)]
    inq[s] = True
    pushes, pops, iterations = 1, 0, 0
    charge = budget.charge if budget is not None else None
    if charge:
        charge(1)
    while True:
        iterations += 1
        if iterations > n + 1:
            if stats is not None:
                stats.update(pushes=pushes, pops=pops, iterations=iterations)
            raise BudgetExhausted("labels still changing after n+1 rounds",
                                  certified=True)
        # Dijkstra phase over the nonnegative edges.
        mark_list = []
        while heap:
            dv, v = heappop(heap)
            pops += 1
            if dv != d[v] or not inq[v]:
                if charge:
                    charge(1)
                continue
            inq[v] = False
            if not marked[v]:
                marked[v] = True
                mark_list.append(v)
            ops = 1
            for e in out[v]:
                wt = w[e]
                if wt < 0:
                    continue
                x = dst[e]
                nd = dv + wt
                ops += 1
                if nd < d[x]:
                    d[x] = nd
                    inq[x] = True
                    heappush(heap, (nd, x))
                    pushes += 1
                    ops += 1
            if charge:
                charge(ops)
        # Bellman-Ford phase: relax all out-edges of marked vertices.
        ops = 0
        for v in mark_list:
            marked[v] = False
            dv = d[v]
            for e in out[v]:
                x = dst[e]
                nd = dv + w[e]
                ops += 1
                if nd < d[x]:
                    d[x] = nd
                    inq[x] = True
                    heappush(heap, (nd, x))
                    pushes += 1
                    ops += 1
        if charge and ops:
            charge(ops)
        if not any(inq[x] for _, x in heap):
            break
    if stats is not None:
        stats.update(pushes=pushes, pops=pops, iterations=iterations)
    for v in range(n):
        if d[v] is INF:
            raise ValueError(f"source {s} does not reach vertex {v}")
    return d


def fix_dag_edges(g: Graph, partition: VertexPartition) -> list[int]:
    """Price function, constant on each part, that makes cross-part edges nonnegative.

    Each part must have no negative internal edge and the contracted graph
    must be acyclic. The parts are processed in topological order; each part
    is shifted down by the most negative weight entering it.
    """
    part_of = partition.part_of
    k = len(partition.parts)
    rank = [0] * k
    for i, p in enumerate(partition.order):
        rank[p] = i
    mu = [0] * k
    succ = [[] for _ in range(k)]
    indeg = [0] * k
    for u, v, x in zip(g.src, g.dst, g.w):
        pu, pv = part_of[u], part_of[v]
        if pu == pv:
            if x < 0:
                raise NegativeIntraPartEdge(f"edge ({u}, {v}) of weight {x} inside a part")
            continue
        succ[pu].append(pv)
        indeg[pv] += 1
        if x < mu[pv]:
            mu[pv] = x
    # Kahn's algorithm, ties broken by the partition's own order.
    heap = [(rank[p], p) for p in range(k) if indeg[p] == 0]
    heap.sort()
    topo = []
    while heap:
        _, p = heappop(heap)
        topo.append(p)
        for q in succ[p]:
            indeg[q] -= 1
            if indeg[q] == 0:
                heappush(heap, (rank[q], q))
    if len(topo) != k:
        raise PartitionNotDag("contracting the parts leaves a cycle")
    shift = [0] * k
    total = 0
    for j, p in enumerate(topo):
        if j > 0:
            total += mu[p]
        shift[p] = total
    return [shift[part_of[v]] for v in range(g.n)]


def sp_with_few_neg_edges(g: Graph, s: int, k: int) -> list:
    """Estimates exact for every vertex with a shortest path using at most ``k`` negative edges.

    Runs ``k + 1`` rounds of a Dijkstra pass over the nonnegative edges
    (seeded with all current estimates) followed by one relaxation of every
    negative edge. Estimates never drop below the true distance.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = g.n
    out, dst, w = g.out, g.dst, g.w
    neg = [e for e in range(g.m) if w[e] < 0]
    src = g.src
    d = [INF] * n
    d[s] = 0
    for _ in range(k + 1):
        heap = [(d[v], v) for v in range(n) if d[v] is not INF]
        heap.sort()
        done = [False] * n
        while heap:
            dv, v = heappop(heap)
            if done[v] or dv != d[v]:
                continue
            done[v] = True
            for e in out[v]:
                wt = w[e]
                if wt < 0:
                    continue
                x = dst[e]
                nd = dv + wt
                if nd < d[x]:
                    d[x] = nd
                    heappush(heap, (nd, x))
        for e in neg:
            du = d[src[e]]
            if du is INF:
                continue
            nd = du + w[e]
            if nd < d[dst[e]]:
                d[dst[e]] = nd
    return d

