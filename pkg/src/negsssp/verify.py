"""Certificates for solver output.

Both checkers return a list of human-readable violations; an empty list
means the object is certified.
"""

from __future__ import annotations

from .graph import Graph
from .sssp import INF, NegativeCycle, ShortestPathTree


def verify_tree(g: Graph, tree: ShortestPathTree) -> list[str]:
    """Check the relaxation certificate of a shortest path tree.

    Passing proves the distances are exact and that no negative cycle is
    reachable from the source.
    """
    bad = []
    n = g.n
    s = tree.source
    dist, parent = tree.dist, tree.parent
    if len(dist) != n or len(parent) != n:
        return [f"tree covers {len(dist)} vertices, graph has {n}"]
    if dist[s] != 0:
        bad.append(f"dist(source) = {dist[s]}, expected 0")
    if parent[s] is not None:
        bad.append("source has a parent edge")
    for v in range(n):
        e = parent[v]
        if e is None:
            if v != s and dist[v] != INF:
                bad.append(f"vertex {v} has finite distance but no parent")
            continue
        if not 0 <= e < g.m or g.dst[e] != v:
            bad.append(f"parent edge {e} of vertex {v} does not end at {v}")
            continue
        u = g.src[e]
        if dist[v] == INF or dist[u] == INF or dist[u] + g.w[e] != dist[v]:
            bad.append(f"parent edge {e} of vertex {v} is not tight")
    for e in range(g.m):
        u, v, x = g.src[e], g.dst[e], g.w[e]
        if dist[u] == INF:
            continue
        if dist[v] == INF:
            bad.append(f"vertex {v} marked unreachable but edge {e} enters it from {u}")
        elif dist[u] + x < dist[v]:
            bad.append(f"edge {e} ({u}->{v}) violates the triangle inequality")
    if not bad:
        # Tight parent edges with finite labels cannot form a cycle unless it
        # has weight zero; make sure every parent chain reaches the source.
        state = [0] * n  # 0 unknown, 1 on current chain, 2 reaches source
        state[s] = 2
        for v in range(n):
            if dist[v] == INF or state[v] == 2:
                continue
            chain = []
            x = v
            while state[x] == 0:
                state[x] = 1
                chain.append(x)
                x = g.src[parent[x]]
            if state[x] == 1:
                bad.append(f"parent pointers from vertex {v} form a cycle")
                break
            for y in chain:
                state[y] = 2
    return bad


def verify_negative_cycle(g: Graph, cycle: NegativeCycle) -> list[str]:
    """Check that the cycle chains head to tail, closes, and has negative weight in ``g``."""
    bad = []
    edges = cycle.edges
    if not edges:
        return ["cycle has no edges"]
    if len(cycle.vertices) != len(edges):
        bad.append("vertex and edge lists differ in length")
    k = len(edges)
    for i, e in enumerate(edges):
        if not 0 <= e < g.m:
            return [f"invalid edge id {e}"]
        nxt = edges[(i + 1) % k]
        if 0 <= nxt < g.m and g.dst[e] != g.src[nxt]:
            bad.append(f"edge {e} does not chain into edge {nxt}")
        if i < len(cycle.vertices) and cycle.vertices[i] != g.src[e]:
            bad.append(f"vertex {cycle.vertices[i]} is not the tail of edge {e}")
    total = sum(g.w[e] for e in edges)
    if total != cycle.weight:
        bad.append(f"recorded weight {cycle.weight} differs from edge sum {total}")
    if total >= 0:
        bad.append(f"cycle weight {total} is not negative")
    return bad
