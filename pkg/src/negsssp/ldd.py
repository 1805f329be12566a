"""Low-diameter decomposition of directed graphs with nonnegative weights.

:func:`low_diam_decomposition` returns a set of edge ids whose removal leaves
only strongly connected components of weak diameter at most ``D``: any two
vertices of a component are within distance ``D`` of each other in the input
graph. The guarantee is unconditional; randomness only affects how many
edges are removed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from heapq import heappop, heappush

from .errors import NegativeWeightPresent
from .graph import Graph
from .rng import GeometricParam, Rng, sample_geometric
from .sssp import StepBudget

IN, OUT = "in", "out"


@dataclass(frozen=True)
class LddParams:
    D: int
    global_n: int
    c_sample: float = 4.0
    p_numerator: int = 80

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("D must be at least 1")
        if self.global_n < 2:
            raise ValueError("global_n must be at least 2")

    @property
    def samples(self) -> int:
        return max(1, math.ceil(self.c_sample * math.log(self.global_n)))


@dataclass
class LddResult:
    removed: set
    stats: dict = field(default_factory=dict)


def _ball(g: Graph, alive, v: int, radius: int, direction: str, budget=None) -> dict:
    """Truncated Dijkstra inside the alive vertices; returns ``{u: dist}``."""
    if direction == OUT:
        adj, far = g.out, g.dst
    else:
        adj, far = g.inc, g.src
    w = g.w
    dist = {v: 0}
    done = {}
    heap = [(0, v)]
    ops = 0
    while heap:
        d, u = heappop(heap)
        ops += 1
        if u in done:
            continue
        done[u] = d
        for e in adj[u]:
            x = far[e]
            if x not in alive:
                continue
            nd = d + w[e]
            ops += 1
            if nd <= radius and nd < dist.get(x, nd + 1):
                dist[x] = nd
                heappush(heap, (nd, x))
                ops += 1
    if budget is not None:
        budget.charge(ops)
    return done


def _boundary(g: Graph, alive, ball, direction: str) -> list[int]:
    """Edges of ``G[alive]`` leaving an out-ball or entering an in-ball."""
    res = []
    if direction == OUT:
        for u in ball:
            for e in g.out[u]:
                x = g.dst[e]
                if x in alive and x not in ball:
                    res.append(e)
    else:
        for u in ball:
            for e in g.inc[u]:
                x = g.src[e]
                if x in alive and x not in ball:
                    res.append(e)
    return res


def bounded_ball(g: Graph, v: int, radius: int, direction: str = OUT):
    """``Ball(v, radius)`` in the given direction and its boundary edges.

    Returns ``(vertex set, boundary edge id set)``. Weights must be nonnegative.
    """
    if direction not in (IN, OUT):
        raise ValueError("direction must be 'in' or 'out'")
    for e, x in enumerate(g.w):
        if x < 0:
            raise NegativeWeightPresent(f"edge {e} has negative weight {x}")
    alive = range(g.n)
    ball = _ball(g, alive, v, radius, direction)
    return set(ball), set(_boundary(g, alive, ball, direction))


def low_diam_decomposition(g: Graph, params: LddParams, rng: Rng,
                           budget: StepBudget | None = None) -> LddResult:
    """Randomized ball carving with shredding fallbacks.

    Phase 1 marks every vertex in-light, out-light or heavy by counting how
    many of ``k`` sampled vertices lie within ``D/4`` of it. Phase 2 carves
    balls of geometric radius around light vertices (smallest id first),
    cuts their boundary and recurses inside each ball. Whatever survives
    must lie within ``D/2`` of one survivor in both directions; if not, or
    if a radius or ball comes out too large, the call removes every edge of
    its input instead.
    """
    for e, x in enumerate(g.w):
        if x < 0:
            raise NegativeWeightPresent(f"edge {e} has negative weight {x}")
    stats = {"boundary": 0, "premature": 0, "max_depth": 0, "calls": 0,
             "participation": [0] * g.n, "max_recursive_fraction": 0.0}
    removed = set()
    w_max = max(g.w, default=0)
    ctx = _Ldd(g, params, rng, budget, stats, removed, w_max)
    ctx.run(list(range(g.n)), 0)
    stats["max_participation"] = max(stats["participation"], default=0)
    return LddResult(removed, stats)


class _Ldd:
    def __init__(self, g, params, rng, budget, stats, removed, w_max):
        self.g = g
        self.params = params
        self.rng = rng
        self.budget = budget
        self.stats = stats
        self.removed = removed
        self.w_max = w_max
        self.p = GeometricParam.for_ldd(params.global_n, params.D, params.p_numerator)
        self.samples = params.samples

    def _shred(self, verts, inside):
        g = self.g
        for u in verts:
            for e in g.out[u]:
                if g.dst[e] in inside:
                    self.removed.add(e)
        self.stats["premature"] += 1

    def run(self, verts: list[int], depth: int):
        g, stats, D = self.g, self.stats, self.params.D
        stats["calls"] += 1
        if depth > stats["max_depth"]:
            stats["max_depth"] = depth
        part = stats["participation"]
        for u in verts:
            part[u] += 1
        n0 = len(verts)
        if n0 <= 1:
            # A lone vertex is heavy and passes the clean-up check: nothing to cut.
            return
        # ``start`` holds the vertices of this call's input graph, ``alive``
        # the ones not yet carved away.
        start = set(verts)
        alive = set(verts)
        quarter = D // 4
        half = D // 2

        # Phase 1: light/heavy marking from k sampled vertices.
        k = self.samples
        in_count = {}
        out_count = {}
        cache = {}
        for _ in range(k):
            s = verts[self.rng.randbelow(n0)]
            if s not in cache:
                cache[s] = (_ball(g, start, s, quarter, OUT, self.budget),
                            _ball(g, start, s, quarter, IN, self.budget))
            out_ball, in_ball = cache[s]
            for u in out_ball:  # s is in Ball_in(u)
                in_count[u] = in_count.get(u, 0) + 1
            for u in in_ball:  # s is in Ball_out(u)
                out_count[u] = out_count.get(u, 0) + 1
        light = []
        kind = {}
        limit = 6 * k
        for u in verts:
            if 10 * in_count.get(u, 0) <= limit:
                kind[u] = IN
                light.append(u)
            elif 10 * out_count.get(u, 0) <= limit:
                kind[u] = OUT
                light.append(u)

        # Phase 2: carve balls around light vertices.
        r_max = n0 * self.w_max + 1
        certain = self.p.num == self.p.den
        for v in light:
            if v not in alive:
                continue
            r = 1 if certain else sample_geometric(self.rng, self.p, r_max)
            if 4 * r > D:
                self._shred(verts, start)
                return
            direction = kind[v]
            ball = _ball(g, alive, v, r, direction, self.budget)
            if 10 * len(ball) > 7 * n0:
                self._shred(verts, start)
                return
            boundary = _boundary(g, alive, ball, direction)
            stats["boundary"] += len(boundary)
            self.removed.update(boundary)
            frac = len(ball) / n0
            if frac > stats["max_recursive_fraction"]:
                stats["max_recursive_fraction"] = frac
            if len(ball) == 1:
                # Same bookkeeping as a recursive call on a lone vertex.
                stats["calls"] += 1
                if depth + 1 > stats["max_depth"]:
                    stats["max_depth"] = depth + 1
                part[v] += 1
                alive.discard(v)
                continue
            inner = sorted(ball)
            self.run(inner, depth + 1)
            alive.difference_update(inner)

        # Clean up: survivors must be within D/2 of one of them both ways.
        if alive:
            rest = sorted(alive)
            v = rest[0]
            out_ball = _ball(g, start, v, half, OUT, self.budget)
            in_ball = _ball(g, start, v, half, IN, self.budget)
            if any(u not in out_ball or u not in in_ball for u in rest):
                self._shred(verts, start)
