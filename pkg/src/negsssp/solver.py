"""Outer algorithms: SPmain, bit scaling, Monte-Carlo and Las-Vegas wrappers, solve.

Every tree returned from this module has passed :func:`verify_tree` and every
cycle has passed :func:`verify_negative_cycle`, so results are correct
regardless of the random choices made along the way; randomness only
affects running time and the number of restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .context import ExecutionContext
from .errors import BudgetExhausted, InternalError, MonteCarloError
from .graph import (Graph, max_neg_magnitude, reduce_out_degree, scale_weights,
                    shift_all_weights)
from .scaledown import ScaleDownInput, scale_down
from .sssp import (INF, NegativeCycle, ShortestPathTree, StepBudget, dijkstra)
from .verify import verify_negative_cycle, verify_tree


@dataclass
class SsspResult:
    """Exactly one of ``tree`` and ``cycle`` is set."""

    tree: ShortestPathTree | None = None
    cycle: NegativeCycle | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.tree is None) == (self.cycle is None):
            raise ValueError("SsspResult needs exactly one of tree and cycle")

    @property
    def kind(self) -> str:
        return "tree" if self.tree is not None else "cycle"


class _Restart(Exception):
    pass


def _log2_ceil(n: int) -> int:
    return max(1, (max(n, 2) - 1).bit_length())


def _enter(g: Graph, ctx: ExecutionContext):
    if ctx.global_n < g.n:
        ctx.global_n = g.n


def _tree_weights(g: Graph, tree_parent: list, root: int, weights) -> list:
    """Re-sum ``weights`` along tree paths from ``root``."""
    n = g.n
    children = [[] for _ in range(n)]
    for v, e in enumerate(tree_parent):
        if e is not None:
            children[g.src[e]].append(e)
    dist = [INF] * n
    dist[root] = 0
    stack = [root]
    while stack:
        u = stack.pop()
        du = dist[u]
        for e in children[u]:
            x = g.dst[e]
            dist[x] = du + weights[e]
            stack.append(x)
    return dist


def _check_min_weight(g: Graph, low: int):
    for e, x in enumerate(g.w):
        if x < low:
            raise ValueError(f"edge {e} has weight {x} < {low}")


def _spmain_prices(g: Graph, ctx: ExecutionContext) -> tuple[list[int], list[int]]:
    """The scaling loop of SPmain on ``w_bar = 2n * w``.

    Returns ``(w_bar, phi_t)`` with ``w_bar_phi_t(e) >= -1`` for every edge.
    """
    n = g.n
    wbar = [x * 2 * n for x in g.w]
    big_b = 1
    while big_b < 2 * n:
        big_b <<= 1
    phi = [0] * n
    src, dst = g.src, g.dst
    for i in range(1, big_b.bit_length()):
        b = big_b >> i
        gi = g.with_weights([x + phi[u] - phi[v] for u, v, x in zip(src, dst, wbar)])
        psi = scale_down(ScaleDownInput(gi, n, b), ctx)
        phi = [a + c for a, c in zip(phi, psi)]
    return wbar, phi


def sp_main(g: Graph, s: int, ctx: ExecutionContext) -> tuple[ShortestPathTree, list[int]]:
    """Shortest path tree from ``s`` for weights ``>= -1``.

    Runs ``log2(B)`` rounds of ScaleDown on the ``2n``-scaled graph, then
    Dijkstra on ``w_bar_phi + 1``. The tree's distances are re-summed in the
    original weights. Also returns the final price function. Never returns
    on a graph with a negative cycle (the budget runs out instead).
    """
    _check_min_weight(g, -1)
    _enter(g, ctx)
    wbar, phi = _spmain_prices(g, ctx)
    src, dst = g.src, g.dst
    wstar = [x + phi[u] - phi[v] + 1 for u, v, x in zip(src, dst, wbar)]
    if any(x < 0 for x in wstar):
        raise InternalError("G* has a negative edge")
    t = dijkstra(g.with_weights(wstar), s, ctx.budget)
    dist = _tree_weights(g, t.parent, s, g.w)
    return ShortestPathTree(s, dist, t.parent), phi


def make_nonneg_potentials(g: Graph, ctx: ExecutionContext) -> list[int]:
    """Exact potential ``phi(v) = min_u dist(u, v)`` for weights ``>= -1``.

    After the SPmain loop, Dijkstra from a dummy source on ``w_bar_phi + 1``
    finds shortest paths in ``w_bar``; their ``w_bar`` lengths are multiples
    of ``2n`` and dividing gives the potential. ``w_phi >= 0`` is checked.
    """
    _check_min_weight(g, -1)
    _enter(g, ctx)
    n = g.n
    if n == 0:
        return []
    wbar, phi = _spmain_prices(g, ctx)
    top = max(phi)
    src, dst = g.src, g.dst
    m = g.m
    wstar = [x + phi[u] - phi[v] + 1 for u, v, x in zip(src, dst, wbar)]
    if any(x < 0 for x in wstar):
        raise InternalError("G* has a negative edge")
    wstar.extend(top - p + 1 for p in phi)
    gd = Graph(n + 1, src + [n] * n, dst + list(range(n)), wstar,
               g.out + [list(range(m, m + n))])
    t = dijkstra(gd, n, ctx.budget)
    dist = _tree_weights(gd, t.parent, n, wbar + [0] * n)
    scale = 2 * n
    pot = []
    for v in range(n):
        q, r = divmod(dist[v], scale)
        if r:
            raise InternalError("dummy-source distance is not a multiple of 2n")
        pot.append(q)
    for u, v, x in zip(src, dst, g.w):
        if x + pot[u] - pot[v] < 0:
            raise InternalError("potential leaves a negative edge")
    return pot


def bit_scaling_weights(w: list[int], t: int, i: int) -> list[int]:
    """Level-``i`` weights ``ceil(w / 2**(t-i))``."""
    k = t - i
    return [-((-x) >> k) for x in w]


def goldberg_solve(g: Graph, ctx: ExecutionContext, trace: list | None = None) -> list[int]:
    """Price function with ``w_phi >= 0`` for arbitrary integer weights.

    Rounds the weights to ``t + 1`` levels, ``t = ceil(log2 W_G)``; level 0
    has weights ``>= -1``. Each level is reweighted by twice the previous
    potential (again ``>= -1``) and repaired with
    :func:`make_nonneg_potentials`. Levels that are already nonnegative
    after reweighting are skipped. ``trace`` receives ``(level_weights,
    phi_i)`` per level.
    """
    _enter(g, ctx)
    n = g.n
    t = _log2_ceil(max_neg_magnitude(g))
    src, dst = g.src, g.dst
    phi = [0] * n
    for i in range(t + 1):
        wi = bit_scaling_weights(g.w, t, i)
        lw = [x + 2 * (phi[u] - phi[v]) for u, v, x in zip(src, dst, wi)]
        if lw and min(lw) < -1:
            raise InternalError("bit-scaling level has a weight below -1")
        if lw and min(lw) < 0:
            psi = make_nonneg_potentials(g.with_weights(lw), ctx)
        else:
            psi = [0] * n
        phi = [2 * a + c for a, c in zip(phi, psi)]
        if trace is not None:
            trace.append((wi, list(phi)))
    return phi


def _mc_potential(g: Graph, ctx: ExecutionContext) -> list[int]:
    """Repeat :func:`goldberg_solve` under fresh per-attempt budgets.

    Raises :class:`MonteCarloError` if every attempt runs out, or as soon as
    one attempt proves a negative cycle.
    """
    _enter(g, ctx)
    lg = _log2_ceil(g.n)
    attempts = ctx.mc_attempts_factor * lg
    limit = ctx.budget_factor * max(g.m, 1) * lg ** 5
    counters = ctx.counters
    for _ in range(attempts):
        counters["mc_attempts"] += 1
        budget = StepBudget(limit)
        try:
            phi = goldberg_solve(g, ctx.with_budget(budget))
        except BudgetExhausted as exc:
            counters["mc_failures"] += 1
            if exc.certified:
                counters["mc_certified"] += 1
                break
            continue
        finally:
            ctx.budget.charge(budget.used)
        for u, v, x in zip(g.src, g.dst, g.w):
            if x + phi[u] - phi[v] < 0:
                raise InternalError("Monte-Carlo potential leaves a negative edge")
        return phi
    raise MonteCarloError("no Monte-Carlo attempt finished within its budget")


def _tree_from_potential(g: Graph, s: int, phi: list[int], budget=None) -> ShortestPathTree:
    gp = g.with_weights([x + phi[u] - phi[v] for u, v, x in zip(g.src, g.dst, g.w)])
    t = dijkstra(gp, s, budget)
    ps = phi[s]
    dist = [d if d == INF else d - ps + phi[v] for v, d in enumerate(t.dist)]
    return ShortestPathTree(s, dist, t.parent)


def _certified_tree(g: Graph, tree: ShortestPathTree) -> ShortestPathTree:
    bad = verify_tree(g, tree)
    if bad:
        raise InternalError("tree failed its certificate: " + bad[0])
    return tree


def sp_monte_carlo(g: Graph, s: int, ctx: ExecutionContext) -> SsspResult:
    """Shortest path tree or :class:`MonteCarloError`.

    A negative cycle always produces the error; without one, each attempt
    succeeds with constant probability. Returned trees are certified.
    """
    before = ctx.counters["mc_attempts"]
    phi = _mc_potential(g, ctx)
    tree = _certified_tree(g, _tree_from_potential(g, s, phi, ctx.budget))
    return SsspResult(tree=tree, diagnostics={
        "attempts": ctx.counters["mc_attempts"] - before, "steps": ctx.budget.used})


def find_thresh(h: Graph, s: int, ctx: ExecutionContext, trace: list | None = None) -> int:
    """Smallest ``B >= 0`` with no negative cycle in ``H^{+B}`` (binary search).

    Each probe runs :func:`sp_monte_carlo` on ``H^{+q}``; an error moves the
    lower end past ``q``, a tree moves the upper end to ``q``. ``trace``
    receives ``(lo, hi, q, ok)`` per probe.
    """
    lo, hi = 0, max_neg_magnitude(h)
    while lo != hi:
        q = (lo + hi) // 2
        ctx.counters["find_thresh_probes"] += 1
        try:
            sp_monte_carlo(shift_all_weights(h, q), s, ctx)
            ok = True
        except MonteCarloError:
            ok = False
        if trace is not None:
            trace.append((lo, hi, q, ok))
        if ok:
            hi = q
        else:
            lo = q + 1
    return hi


def find_any_cycle(g: Graph) -> NegativeCycle | None:
    """Some directed cycle of ``g`` (by DFS back edge), or ``None`` if acyclic.

    The returned object has the cycle shape; its weight is the edge sum in
    ``g`` and need not be negative.
    """
    n = g.n
    color = [0] * n
    out, dst = g.out, g.dst
    for root in range(n):
        if color[root]:
            continue
        color[root] = 1
        stack = [(root, 0)]
        via = []  # edge ids along the DFS path
        while stack:
            v, i = stack[-1]
            edges = out[v]
            if i < len(edges):
                stack[-1] = (v, i + 1)
                e = edges[i]
                x = dst[e]
                if color[x] == 0:
                    color[x] = 1
                    stack.append((x, 0))
                    via.append(e)
                elif color[x] == 1:
                    cyc = [e]
                    j = len(via) - 1
                    u = v
                    while u != x:
                        f = via[j]
                        cyc.append(f)
                        u = g.src[f]
                        j -= 1
                    cyc.reverse()
                    return NegativeCycle([g.src[f] for f in cyc], cyc,
                                         sum(g.w[f] for f in cyc))
            else:
                color[v] = 2
                stack.pop()
                if via:
                    via.pop()
    return None


def _extract_cycle(g: Graph, s: int, b: int, ctx: ExecutionContext) -> NegativeCycle:
    """Lines 7-12 of the Las-Vegas algorithm for a threshold ``b > 0``."""
    n = g.n
    scaled = scale_weights(g, n ** 3)
    h = shift_all_weights(scaled, b)
    try:
        phi = _mc_potential(h, ctx)
    except MonteCarloError:
        raise _Restart("Monte-Carlo failed on the shifted graph")
    wn = [x + phi[u] - phi[v] for u, v, x in zip(h.src, h.dst, h.w)]
    if any(x < 0 for x in wn):
        raise InternalError("G_nonneg has a negative edge")
    keep = [e for e in range(g.m) if wn[e] <= n]
    small = Graph(n, [g.src[e] for e in keep], [g.dst[e] for e in keep],
                  [g.w[e] for e in keep], origin=keep)
    found = find_any_cycle(small)
    if found is None:
        raise _Restart("G_{<=n} is acyclic")
    edges = [keep[e] for e in found.edges]
    cyc = NegativeCycle([g.src[e] for e in edges], edges, sum(g.w[e] for e in edges))
    if cyc.weight >= 0:
        raise _Restart("cycle of G_{<=n} is not negative")
    return cyc


def _las_vegas_once(g: Graph, s: int, ctx: ExecutionContext):
    n = g.n
    b = find_thresh(scale_weights(g, n ** 3), s, ctx)
    if b == 0:
        try:
            return sp_monte_carlo(g, s, ctx).tree
        except MonteCarloError:
            raise _Restart("Monte-Carlo failed with threshold 0")
    if ctx.debug and b < n * n:
        raise InternalError(f"threshold {b} below n^2 = {n * n}")
    return _extract_cycle(g, s, b, ctx)


def _with_restarts(fn, ctx: ExecutionContext):
    restarts = 0
    while True:
        try:
            return fn(), restarts
        except _Restart:
            restarts += 1
            ctx.counters["restarts"] += 1
            if restarts > ctx.max_restarts:
                raise InternalError(f"gave up after {ctx.max_restarts} restarts")


def sp_las_vegas(g: Graph, s: int, ctx: ExecutionContext) -> SsspResult:
    """Shortest path tree or a negative cycle, for weights ``>= -1``.

    Scales weights by ``n**3``, finds the cycle threshold ``B`` and either
    returns a Monte-Carlo tree (``B = 0``) or a cycle among the near-tight
    edges of the ``B``-shifted graph. Any check that fails triggers a
    restart, up to ``ctx.max_restarts``.
    """
    _check_min_weight(g, -1)
    _enter(g, ctx)
    out, restarts = _with_restarts(lambda: _las_vegas_once(g, s, ctx), ctx)
    diag = {"restarts": restarts, "steps": ctx.budget.used,
            "attempts": ctx.counters["mc_attempts"]}
    if isinstance(out, NegativeCycle):
        bad = verify_negative_cycle(g, out)
        if bad:
            raise InternalError("cycle failed its certificate: " + bad[0])
        return SsspResult(cycle=out, diagnostics=diag)
    return SsspResult(tree=_certified_tree(g, out), diagnostics=diag)


def _level_potential(g: Graph, s: int, ctx: ExecutionContext):
    """Las-Vegas step for one bit-scaling level: a potential or a negative cycle.

    The threshold-zero branch is tried first; a Monte-Carlo success proves
    the level has no negative cycle, which is the only case in which the
    threshold search would answer zero.
    """
    try:
        return _mc_potential(g, ctx)
    except MonteCarloError:
        pass

    def once():
        n = g.n
        b = find_thresh(scale_weights(g, n ** 3), s, ctx)
        if b == 0:
            try:
                return _mc_potential(g, ctx)
            except MonteCarloError:
                raise _Restart("Monte-Carlo failed with threshold 0")
        if ctx.debug and b < n * n:
            raise InternalError(f"threshold {b} below n^2 = {n * n}")
        return _extract_cycle(g, s, b, ctx)

    out, restarts = _with_restarts(once, ctx)
    return out


def _map_cycle(cyc: NegativeCycle, g_in: Graph, edge_map) -> NegativeCycle:
    edges = [edge_map[e] for e in cyc.edges if edge_map[e] is not None]
    return NegativeCycle([g_in.src[e] for e in edges], edges, sum(g_in.w[e] for e in edges))


def solve(g: Graph, s: int, ctx: ExecutionContext | None = None, *, seed: int = 0) -> SsspResult:
    """Single-source shortest paths with arbitrary integer weights.

    Returns a certified tree from ``s``, or a certified negative cycle if the
    graph has one anywhere (reachable from ``s`` or not). Unreachable
    vertices get distance ``UNREACHABLE``.
    """
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} out of range")
    if ctx is None:
        ctx = ExecutionContext.seeded(seed)
    gg, gadget = reduce_out_degree(g)
    ctx.global_n = max(2, gg.n)
    root = gadget.rep[s]
    before = dict(ctx.counters)

    def diagnostics():
        c = ctx.counters
        return {"restarts": c["restarts"] - before.get("restarts", 0),
                "attempts": c["mc_attempts"] - before.get("mc_attempts", 0),
                "steps": ctx.budget.used}

    t = _log2_ceil(max_neg_magnitude(gg))
    src, dst = gg.src, gg.dst
    phi = [0] * gg.n
    for i in range(t + 1):
        wi = bit_scaling_weights(gg.w, t, i)
        lw = [x + 2 * (phi[u] - phi[v]) for u, v, x in zip(src, dst, wi)]
        if lw and min(lw) < 0:
            got = _level_potential(gg.with_weights(lw), root, ctx)
            if isinstance(got, NegativeCycle):
                cyc = _map_cycle(got, g, gadget.edge_map)
                bad = verify_negative_cycle(g, cyc)
                if bad:
                    raise InternalError("cycle failed its certificate: " + bad[0])
                return SsspResult(cycle=cyc, diagnostics=diagnostics())
            psi = got
        else:
            psi = [0] * gg.n
        phi = [2 * a + c for a, c in zip(phi, psi)]

    inner = _tree_from_potential(gg, root, phi, ctx.budget)
    dist = [inner.dist[gadget.rep[v]] for v in range(g.n)]
    parent = [None] * g.n
    for v in range(g.n):
        if v == s or dist[v] == INF:
            continue
        x = gadget.rep[v]
        while True:
            e = inner.parent[x]
            if gadget.edge_map[e] is not None:
                parent[v] = gadget.edge_map[e]
                break
            x = gg.src[e]
    tree = _certified_tree(g, ShortestPathTree(s, dist, parent))
    return SsspResult(tree=tree, diagnostics=diagnostics())
