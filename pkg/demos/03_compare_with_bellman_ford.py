"""Compare the solver against Bellman-Ford on generated instances.

The solver's work counter grows with its polylog factors, so on these small
sizes Bellman-Ford is far cheaper. The point is agreement, not speed.
Run with ``python3 demos/03_compare_with_bellman_ford.py``.
"""

from negsssp import ExecutionContext, NegativeCycle, StepBudget, bellman_ford, generate, solve
from negsssp.io import GeneratorSpec

for mode in ("hidden", "planted", "raw"):
    for seed in range(3):
        g = generate(GeneratorSpec(24, 72, -8, 15, mode, seed))
        ctx = ExecutionContext.seeded(seed)
        res = solve(g, 0, ctx)
        budget = StepBudget()
        bf = bellman_ford(g, 0, budget)
        if isinstance(bf, NegativeCycle):
            bf_kind = "cycle"
            agree = res.kind == "cycle"
        else:
            bf_kind = "tree"
            # Bellman-Ford only sees cycles reachable from the source.
            agree = res.kind == "cycle" or res.tree.dist == bf.dist
        print(f"{mode:>7} seed {seed}: solver {res.kind:<5} ({ctx.budget.used:>9} steps), "
              f"Bellman-Ford {bf_kind:<5} ({budget.used:>6} steps), consistent: {agree}")
