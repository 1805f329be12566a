"""DIMACS I/O, instance generators and the benchmark harness.

The ``sp`` dialect used here allows negative arc weights::

    c comment
    p sp <n> <m>
    s <source>            (optional)
    a <u> <v> <w>         (1-based vertices)
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .context import ExecutionContext
from .errors import GraphError, ParseError
from .graph import Graph, build_graph
from .rng import Rng
from .sssp import INF, NegativeCycle, StepBudget, bellman_ford

MODES = ("raw", "hidden", "planted")


def parse_dimacs(text: str) -> tuple[Graph, int | None]:
    """Parse a DIMACS ``sp`` file; returns the graph (0-based) and the declared source."""
    n = m = None
    source = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        try:
            if tag == "p":
                if n is not None:
                    raise ParseError(f"line {lineno}: second problem line")
                if len(parts) != 4 or parts[1] != "sp":
                    raise ParseError(f"line {lineno}: expected 'p sp <n> <m>'")
                n, m = int(parts[2]), int(parts[3])
                if n < 0 or m < 0:
                    raise ParseError(f"line {lineno}: negative size")
            elif tag == "a":
                if n is None:
                    raise ParseError(f"line {lineno}: arc before problem line")
                if len(parts) != 4:
                    raise ParseError(f"line {lineno}: expected 'a <u> <v> <w>'")
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
                if not (1 <= u <= n and 1 <= v <= n):
                    raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
                edges.append((u - 1, v - 1, w))
            elif tag == "s":
                if n is None or len(parts) != 2:
                    raise ParseError(f"line {lineno}: expected 's <v>' after problem line")
                source = int(parts[1]) - 1
                if not 0 <= source < n:
                    raise ParseError(f"line {lineno}: source out of range")
            else:
                raise ParseError(f"line {lineno}: unknown line type {tag!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ParseError("missing problem line")
    if len(edges) != m:
        raise ParseError(f"problem line declares {m} arcs, found {len(edges)}")
    try:
        return build_graph(n, edges), source
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def write_dimacs(g: Graph, source: int | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"c {comment}")
    lines.append(f"p sp {g.n} {g.m}")
    if source is not None:
        lines.append(f"s {source + 1}")
    for u, v, w in zip(g.src, g.dst, g.w):
        lines.append(f"a {u + 1} {v + 1} {w}")
    return "\n".join(lines) + "\n"


def write_result(res) -> str:
    """Text form of a solver result.

    Trees print one ``v <id> <dist|inf> <parent-arc|->`` line per vertex;
    cycles print ``cycle <v1> ... <vk> weight <w>``. Ids are 1-based.
    """
    if res.cycle is not None:
        c = res.cycle
        return "cycle " + " ".join(str(v + 1) for v in c.vertices) + f" weight {c.weight}\n"
    t = res.tree
    lines = []
    for v, (d, e) in enumerate(zip(t.dist, t.parent)):
        ds = "inf" if d == INF else str(d)
        es = "-" if e is None else str(e + 1)
        lines.append(f"v {v + 1} {ds} {es}")
    return "\n".join(lines) + "\n"


def parse_result(text: str, g: Graph):
    """Inverse of :func:`write_result`; cycle edges are recovered from ``g``.

    Returns a :class:`ShortestPathTree` or a :class:`NegativeCycle`. The
    tree's source is the vertex with distance 0 and no parent.
    """
    from .sssp import ShortestPathTree

    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if lines and lines[0][0] == "cycle":
        parts = lines[0]
        if len(parts) < 4 or parts[-2] != "weight":
            raise ParseError("malformed cycle line")
        verts = [int(x) - 1 for x in parts[1:-2]]
        edges = []
        k = len(verts)
        for i, u in enumerate(verts):
            nxt = verts[(i + 1) % k]
            cand = [e for e in g.out[u] if g.dst[e] == nxt] if 0 <= u < g.n else []
            if not cand:
                raise ParseError(f"no arc {u + 1} -> {nxt + 1}")
            edges.append(min(cand, key=lambda e: g.w[e]))
        return NegativeCycle(verts, edges, int(parts[-1]))
    dist = [INF] * g.n
    parent = [None] * g.n
    source = None
    for parts in lines:
        if parts[0] != "v" or len(parts) != 4:
            raise ParseError(f"malformed result line {' '.join(parts)!r}")
        v = int(parts[1]) - 1
        if not 0 <= v < g.n:
            raise ParseError(f"vertex {v + 1} out of range")
        dist[v] = INF if parts[2] == "inf" else int(parts[2])
        parent[v] = None if parts[3] == "-" else int(parts[3]) - 1
        if dist[v] == 0 and parent[v] is None and source is None:
            source = v
    if source is None:
        raise ParseError("no source vertex (distance 0, no parent)")
    return ShortestPathTree(source, dist, parent)


@dataclass(frozen=True)
class GeneratorSpec:
    """Random instance description.

    ``mode`` is ``raw`` (independent uniform weights), ``hidden`` (nonnegative
    weights disguised by a random potential, so no negative cycle) or
    ``planted`` (a random simple cycle of total weight -1 plus raw edges).
    """

    n: int
    m: int
    lo: int
    hi: int
    mode: str = "raw"
    seed: int = 0


def _random_endpoints(rng: Rng, n: int):
    return rng.randbelow(n), rng.randbelow(n)


def generate(spec: GeneratorSpec) -> Graph:
    n, m, lo, hi, mode = spec.n, spec.m, spec.lo, spec.hi, spec.mode
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if lo > hi:
        raise ValueError("empty weight range")
    if m > 0 and n < 1:
        raise ValueError("edges need at least one vertex")
    rng = Rng(spec.seed)
    edges = []
    if mode == "raw":
        for _ in range(m):
            u, v = _random_endpoints(rng, n)
            edges.append((u, v, rng.randint(lo, hi)))
    elif mode == "hidden":
        if hi < 0:
            raise ValueError("hidden-potential mode needs hi >= 0")
        span = max(0, -lo)
        pi = [rng.randint(0, span) for _ in range(n)]
        while len(edges) < m:
            u, v = _random_endpoints(rng, n)
            delta = pi[u] - pi[v]
            low = max(0, lo - delta)
            high = hi - delta
            if low > high:
                continue
            edges.append((u, v, rng.randint(low, high) + delta))
    else:
        if lo > -1:
            raise ValueError("planted-cycle mode needs lo <= -1")
        if n < 1 or m < 1:
            raise ValueError("planted-cycle mode needs at least one vertex and edge")
        length = 1 + rng.randbelow(min(n, m))
        order = list(range(n))
        for i in range(n - 1, 0, -1):
            j = rng.randbelow(i + 1)
            order[i], order[j] = order[j], order[i]
        cyc = order[:length]
        weights = [lo] * length
        total = lo * length
        while total < -1:
            i = rng.randbelow(length)
            if weights[i] < hi:
                weights[i] += 1
                total += 1
        edges = [(cyc[i], cyc[(i + 1) % length], weights[i]) for i in range(length)]
        while len(edges) < m:
            u, v = _random_endpoints(rng, n)
            edges.append((u, v, rng.randint(lo, hi)))
        # Shuffle so the cycle edges are not always the first ids.
        for i in range(len(edges) - 1, 0, -1):
            j = rng.randbelow(i + 1)
            edges[i], edges[j] = edges[j], edges[i]
    return build_graph(n, edges)


def bench(families: list[dict], seed: int = 0) -> list[dict]:
    """Run :func:`solve` and Bellman-Ford on one generated instance per family.

    Each family is a dict with ``name``, ``n``, ``m``, ``lo``, ``hi`` and
    ``mode``; the report has one row per family with step counts, wall time
    and restart/attempt statistics.
    """
    from .solver import solve

    rows = []
    for i, fam in enumerate(families):
        spec = GeneratorSpec(fam["n"], fam["m"], fam["lo"], fam["hi"], fam.get("mode", "hidden"),
                             fam.get("seed", seed + i))
        g = generate(spec)
        ctx = ExecutionContext.seeded(spec.seed)
        t0 = time.perf_counter()
        res = solve(g, 0, ctx)
        t1 = time.perf_counter()
        bf_budget = StepBudget()
        bf = bellman_ford(g, 0, bf_budget)
        t2 = time.perf_counter()
        rows.append({
            "family": fam.get("name", f"family{i}"), "n": g.n, "m": g.m, "mode": spec.mode,
            "result": res.kind, "solver_steps": ctx.budget.used,
            "bf_steps": bf_budget.used, "bf_result": "cycle" if isinstance(bf, NegativeCycle) else "tree",
            "restarts": res.diagnostics["restarts"], "attempts": res.diagnostics["attempts"],
            "solver_seconds": round(t1 - t0, 4), "bf_seconds": round(t2 - t1, 4),
        })
    return rows


def format_table(rows: list[dict], columns=None) -> str:
    """Tab-separated table with a header line."""
    if not rows:
        return ""
    columns = columns or list(rows[0])
    lines = ["\t".join(columns)]
    for r in rows:
        lines.append("\t".join(str(r[c]) for c in columns))
    return "\n".join(lines) + "\n"
