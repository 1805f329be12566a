"""Execution context threaded through the randomized routines."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace

from .rng import Rng
from .sssp import StepBudget


@dataclass
class ExecutionContext:
    """Seeded RNG, shared step budget and tunable constants.

    ``budget`` is shared by reference with every nested call. ``global_n``
    is the vertex count of the top-level problem; the decomposition sizes
    its sample and its radius distribution from it.
    """

    rng: Rng = field(default_factory=Rng)
    budget: StepBudget = field(default_factory=StepBudget)
    global_n: int = 2
    c_sample: float = 4.0
    p_numerator: int = 80
    budget_factor: int = 64
    mc_attempts_factor: int = 3
    max_restarts: int = 100
    debug: bool = False
    counters: Counter = field(default_factory=Counter)

    @classmethod
    def seeded(cls, seed: int = 0, **kw) -> "ExecutionContext":
        return cls(rng=Rng(seed), **kw)

    def with_budget(self, budget: StepBudget) -> "ExecutionContext":
        """A view sharing everything except the budget."""
        return replace(self, budget=budget)
