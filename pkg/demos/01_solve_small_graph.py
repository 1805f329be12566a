"""Solve a small graph with negative edges, then plant a negative cycle.

Run with ``python3 demos/01_solve_small_graph.py``.
"""

from negsssp import build_graph, solve, verify_negative_cycle, verify_tree

# A six-vertex graph where the cheapest route to vertex 5 takes two negative arcs.
edges = [(0, 1, 4), (0, 2, 2), (2, 1, -3), (1, 3, 5), (2, 4, 6), (3, 4, -4), (4, 5, 1), (3, 5, 7)]
g = build_graph(6, edges)
res = solve(g, 0, seed=1)
print("kind:", res.kind)
for v, (d, p) in enumerate(zip(res.tree.dist, res.tree.parent)):
    arc = "-" if p is None else f"{g.src[p]} -> {g.dst[p]}"
    print(f"  vertex {v}: dist {d}, reached via arc {arc}")
print("tree certificate violations:", verify_tree(g, res.tree))

# Closing 5 -> 2 with weight -2 creates the cycle 2 -> 1 -> 3 -> 4 -> 5 -> 2 of weight -3.
g2 = build_graph(6, edges + [(5, 2, -2)])
res2 = solve(g2, 0, seed=1)
print("\nwith a back arc, kind:", res2.kind)
print("  cycle vertices:", res2.cycle.vertices, "weight:", res2.cycle.weight)
print("  cycle certificate violations:", verify_negative_cycle(g2, res2.cycle))
