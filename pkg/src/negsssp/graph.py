"""Directed weighted multigraphs and the weight transforms used by the solver.

Vertices are ``0..n-1``. Edges are identified by their position in the edge
list; every transform that keeps the topology also keeps the edge ids, so a
price function or an edge set computed on one graph can be applied to another.

Weights are plain Python integers. The guard ``|w| <= 2**90`` mirrors a
128-bit signed representation with enough headroom for the ``n**3`` and
``2n`` scalings done by the solver on graphs with up to ``2**20`` vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphError

WEIGHT_GUARD = 1 << 90


class Graph:
    """Immutable directed multigraph with integer edge weights.

    ``src``, ``dst`` and ``w`` are parallel lists indexed by edge id and
    ``out[v]`` lists the out-edge ids of ``v`` in insertion order. ``origin``
    is an optional back-reference from each edge to an edge id of the graph
    this one was derived from (set by :func:`remove_edges` and
    :func:`induced_subgraph`).

    Treat all attributes as read-only: derived graphs share the topology
    lists with their parent.
    """

    __slots__ = ("n", "src", "dst", "w", "out", "origin", "_inc")

    def __init__(self, n, src, dst, w, out=None, origin=None):
        self.n = n
        self.src = src
        self.dst = dst
        self.w = w
        if out is None:
            out = [[] for _ in range(n)]
            for e, u in enumerate(src):
                out[u].append(e)
        self.out = out
        self.origin = origin
        self._inc = None

    @property
    def m(self) -> int:
        return len(self.src)

    @property
    def inc(self) -> list[list[int]]:
        """In-edge ids of every vertex, in edge-id order (built lazily)."""
        if self._inc is None:
            inc = [[] for _ in range(self.n)]
            for e, v in enumerate(self.dst):
                inc[v].append(e)
            self._inc = inc
        return self._inc

    def edges(self) -> list[tuple[int, int, int]]:
        return list(zip(self.src, self.dst, self.w))

    def edge(self, e: int) -> tuple[int, int, int]:
        return self.src[e], self.dst[e], self.w[e]

    def with_weights(self, w: list[int]) -> "Graph":
        """Same topology (shared), new weights."""
        g = Graph(self.n, self.src, self.dst, w, self.out, self.origin)
        g._inc = self._inc
        return g

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    def max_out_degree(self) -> int:
        return max((len(o) for o in self.out), default=0)

    def min_weight(self) -> int | None:
        return min(self.w, default=None)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.src == other.src
                and self.dst == other.dst and self.w == other.w)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexPartition:
    """Disjoint vertex sets covering ``0..n-1``.

    ``order`` lists part indices; for DAG partitions (e.g. SCCs) it is a
    topological order of the contracted graph.
    """

    parts: list[list[int]]
    part_of: list[int]
    order: list[int]

    @classmethod
    def from_labels(cls, labels: Sequence[int], order=None) -> "VertexPartition":
        k = max(labels, default=-1) + 1
        parts = [[] for _ in range(k)]
        for v, c in enumerate(labels):
            parts[c].append(v)
        return cls(parts, list(labels), list(range(k)) if order is None else list(order))

    def __len__(self):
        return len(self.parts)


@dataclass(frozen=True)
class GadgetMapping:
    """Correspondence between an original graph and its degree-reduced copy.

    ``edge_map[e]`` is ``None`` for the zero-weight cycle edges added by the
    gadget and the original edge id otherwise.
    """

    orig_n: int
    rep: list[int]
    owner: list[int]
    edge_map: list[int | None]


def build_graph(n: int, edges: Iterable[tuple[int, int, int]]) -> Graph:
    """Validate ``edges`` and build a graph on ``n`` vertices."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    src, dst, w = [], [], []
    for i, (u, v, wt) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {i} endpoint out of range: ({u}, {v}) with n={n}")
        wt = int(wt)
        if abs(wt) > WEIGHT_GUARD:
            raise GraphError(f"edge {i} weight {wt} exceeds the 2**90 guard")
        src.append(u)
        dst.append(v)
        w.append(wt)
    return Graph(n, src, dst, w)


def _checked(w: list[int]) -> list[int]:
    for x in w:
        if x > WEIGHT_GUARD or x < -WEIGHT_GUARD:
            raise GraphError(f"weight {x} exceeds the 2**90 guard")
    return w


def max_neg_magnitude(g: Graph) -> int:
    """``max(2, -min weight)``: the magnitude of the most negative weight."""
    if not g.w:
        return 2
    return max(2, -min(g.w))


def add_dummy_source(g: Graph, weights: Sequence[int] | None = None) -> tuple[Graph, int]:
    """Append a vertex ``s = n`` with an edge ``(s, v)`` to every vertex.

    The new edges get ids ``m..m+n-1`` and weight 0 unless ``weights`` gives
    them explicitly. Existing edge ids are unchanged.
    """
    n, m = g.n, g.m
    s = n
    src = g.src + [s] * n
    dst = g.dst + list(range(n))
    w = g.w + ([0] * n if weights is None else list(weights))
    out = g.out + [list(range(m, m + n))]
    return Graph(n + 1, src, dst, w, out), s


def shift_negative_weights(g: Graph, b: int) -> Graph:
    """``G^B``: add ``b`` to every negative edge weight."""
    if b < 1:
        raise ValueError("B must be a positive integer")
    return g.with_weights([x + b if x < 0 else x for x in g.w])


def shift_all_weights(g: Graph, b: int) -> Graph:
    """``G^{+B}``: add ``b`` to every edge weight."""
    if b < 0:
        raise ValueError("B must be nonnegative")
    if b == 0:
        return g
    return g.with_weights(_checked([x + b for x in g.w]))


def scale_weights(g: Graph, c: int) -> Graph:
    if c < 1:
        raise ValueError("scale factor must be a positive integer")
    if c == 1:
        return g
    return g.with_weights(_checked([x * c for x in g.w]))


def reweighted(g: Graph, phi: Sequence[int]) -> list[int]:
    """The weight list ``w(u,v) + phi(u) - phi(v)``."""
    if len(phi) != g.n:
        raise ValueError(f"price function has length {len(phi)}, graph has {g.n} vertices")
    return [x + phi[u] - phi[v] for u, v, x in zip(g.src, g.dst, g.w)]


def apply_price(g: Graph, phi: Sequence[int]) -> Graph:
    """``G_phi`` with ``w_phi(u,v) = w(u,v) + phi(u) - phi(v)``."""
    return g.with_weights(_checked(reweighted(g, phi)))


def add_prices(phi: Sequence[int], psi: Sequence[int]) -> list[int]:
    if len(phi) != len(psi):
        raise ValueError("price functions differ in length")
    return [a + b for a, b in zip(phi, psi)]


def remove_edges(g: Graph, removed: Iterable[int]) -> Graph:
    """``G \\ S`` on the same vertex set; ``origin`` maps back to ``g``'s ids."""
    drop = set(removed)
    for e in drop:
        if not 0 <= e < g.m:
            raise GraphError(f"invalid edge id {e}")
    keep = [e for e in range(g.m) if e not in drop]
    return Graph(g.n, [g.src[e] for e in keep], [g.dst[e] for e in keep],
                 [g.w[e] for e in keep], origin=keep)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """``G[V']`` relabelled densely.

    Returns the subgraph and the list mapping new vertex ids to old ones; the
    subgraph's ``origin`` maps its edges to ``g``'s edge ids.
    """
    verts = sorted(set(vertices))
    index = {}
    for i, v in enumerate(verts):
        if not 0 <= v < g.n:
            raise GraphError(f"invalid vertex {v}")
        index[v] = i
    src, dst, w, origin = [], [], [], []
    for v in verts:
        for e in g.out[v]:
            x = g.dst[e]
            if x in index:
                src.append(index[v])
                dst.append(index[x])
                w.append(g.w[e])
                origin.append(e)
    return Graph(len(verts), src, dst, w, origin=origin), verts


def edges_within(g: Graph, labels: Sequence[int]) -> Graph:
    """Keep only edges whose endpoints share a label; vertex ids unchanged."""
    keep = [e for e in range(g.m) if labels[g.src[e]] == labels[g.dst[e]]]
    return Graph(g.n, [g.src[e] for e in keep], [g.dst[e] for e in keep],
                 [g.w[e] for e in keep], origin=keep)


def scc_labels(n: int, out: Sequence[Sequence[int]], dst: Sequence[int],
               alive: Sequence[bool] | None = None) -> tuple[list[int], int]:
    """Iterative Tarjan over edge lists.

    Returns per-vertex component labels numbered in topological order of the
    condensation (sources first), and the number of components. Edges with
    ``alive[e]`` false are ignored.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack = []
    found = []  # components in reverse topological order
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            edges = out[v]
            descended = False
            while i < len(edges):
                e = edges[i]
                i += 1
                if alive is not None and not alive[e]:
                    continue
                x = dst[e]
                if index[x] == -1:
                    work[-1] = (v, i)
                    index[x] = low[x] = counter
                    counter += 1
                    stack.append(x)
                    on_stack[x] = True
                    work.append((x, 0))
                    descended = True
                    break
                if on_stack[x] and index[x] < low[v]:
                    low[v] = index[x]
            if descended:
                continue
            work.pop()
            if work:
                p = work[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
            if low[v] == index[v]:
                members = []
                while True:
                    x = stack.pop()
                    on_stack[x] = False
                    members.append(x)
                    if x == v:
                        break
                found.append(members)
    k = len(found)
    for j, members in enumerate(found):
        for x in members:
            comp[x] = k - 1 - j
    return comp, k


def strongly_connected_components(g: Graph) -> VertexPartition:
    """Maximal SCCs, indexed so that every cross edge goes to a larger index."""
    labels, k = scc_labels(g.n, g.out, g.dst)
    return VertexPartition.from_labels(labels, range(k))


def reduce_out_degree(g: Graph) -> tuple[Graph, GadgetMapping]:
    """Replace each vertex by a zero-weight cycle so every out-degree is at most 2.

    Vertex ``v`` becomes a cycle of ``max(1, indeg + outdeg)`` nodes; each
    incident edge gets its own node (out-edges first, in adjacency order, then
    in-edges). A cycle of length one is just the vertex, with no self-loop.
    """
    n = g.n
    ports = [len(g.out[v]) + len(g.inc[v]) for v in range(n)]
    rep = []
    owner = []
    base = 0
    for v in range(n):
        rep.append(base)
        size = max(1, ports[v])
        owner.extend([v] * size)
        base += size
    out_node = [0] * g.m
    in_node = [0] * g.m
    for v in range(n):
        slot = rep[v]
        for e in g.out[v]:
            out_node[e] = slot
            slot += 1
        for e in g.inc[v]:
            in_node[e] = slot
            slot += 1
    src, dst, w, edge_map = [], [], [], []
    for e in range(g.m):
        src.append(out_node[e])
        dst.append(in_node[e])
        w.append(g.w[e])
        edge_map.append(e)
    for v in range(n):
        size = max(1, ports[v])
        if size == 1:
            continue
        first = rep[v]
        for i in range(size):
            src.append(first + i)
            dst.append(first + (i + 1) % size)
            w.append(0)
            edge_map.append(None)
    return Graph(base, src, dst, w), GadgetMapping(n, rep, owner, edge_map)
