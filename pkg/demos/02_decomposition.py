"""Watch the randomized decomposition cut a ring as the diameter bound grows.

A unit-weight directed ring on 64 vertices has weak diameter 63. With a small
bound the decomposition must cut it; with a generous bound it usually keeps
every arc. Run with ``python3 demos/02_decomposition.py``.
"""

import statistics

from negsssp import LddParams, Rng, build_graph, low_diam_decomposition

n = 64
ring = build_graph(n, [(i, (i + 1) % n, 1) for i in range(n)])
for D in (8, 16, 64, 256, 1024):
    removed = [len(low_diam_decomposition(ring, LddParams(D=D, global_n=n), Rng(s)).removed)
               for s in range(100)]
    print(f"D = {D:>4}: mean arcs removed {statistics.mean(removed):6.2f} of {n}, "
          f"runs with no cut {sum(r == 0 for r in removed)}/100")
