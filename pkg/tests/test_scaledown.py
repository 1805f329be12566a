import math

import pytest
from hypothesis import given, strategies as st

from negsssp import (BudgetExhausted, ExecutionContext, ScaleDownInput, StepBudget, build_graph,
                     generate, scale_down)
from negsssp.io import GeneratorSpec

from oracles import edge_list, has_negative_cycle
from strategies import steep_graph


def _check(g, phi, b):
    assert len(phi) == g.n
    assert all(x + phi[u] - phi[v] >= -b for u, v, x in g.edges())


def test_delta_two_example():
    g = build_graph(3, [(0, 1, -8), (1, 2, -8), (0, 2, 3)])
    phi = scale_down(ScaleDownInput(g, 2, 4), ExecutionContext.seeded(0, global_n=3))
    _check(g, phi, 4)


def test_nonnegative_graph():
    g = build_graph(4, [(0, 1, 3), (1, 2, 0), (2, 0, 5), (3, 1, 1)])
    for delta, b in [(1, 1), (4, 8), (7, 3)]:
        phi = scale_down(ScaleDownInput(g, delta, b), ExecutionContext.seeded(1, global_n=4))
        assert all(x + phi[u] - phi[v] >= 0 for u, v, x in g.edges())


def test_input_validation():
    g = build_graph(2, [(0, 1, -9)])
    with pytest.raises(ValueError):
        ScaleDownInput(g, 2, 4)
    with pytest.raises(ValueError):
        ScaleDownInput(g, 0, 8)
    with pytest.raises(ValueError):
        ScaleDownInput(g, 2, 0)


def test_empty_graphs():
    ctx = ExecutionContext.seeded(0)
    assert scale_down(ScaleDownInput(build_graph(0, []), 1, 1), ctx) == []
    assert scale_down(ScaleDownInput(build_graph(3, []), 3, 2), ctx) == [0, 0, 0]


@given(st.integers(1, 40), st.integers(0, 120), st.integers(1, 16), st.integers(0, 2**32))
@pytest.mark.parametrize("steep", [False, True])
def test_postcondition_on_hidden_instances(steep, n, m, b, seed):
    if steep:
        g = steep_graph(n, m, b, seed)
    else:
        g = generate(GeneratorSpec(n, m, -2 * b, 3 * b, "hidden", seed))
    ctx = ExecutionContext.seeded(seed, global_n=max(2, n), debug=True)
    phi = scale_down(ScaleDownInput(g, n, b), ctx)
    _check(g, phi, b)
    assert ctx.counters["scale_down_max_depth"] <= math.ceil(math.log2(n)) + 1


def test_recursive_inputs_stay_cycle_free(monkeypatch):
    from negsssp import scaledown

    seen = []
    real = scaledown._scale_down

    def spy(g, delta, b, ctx, depth):
        seen.append(has_negative_cycle(g.n, edge_list(g)))
        return real(g, delta, b, ctx, depth)

    monkeypatch.setattr(scaledown, "_scale_down", spy)
    for seed in range(10):
        g = generate(GeneratorSpec(30, 90, -16, 24, "hidden", seed))
        scaledown.scale_down(ScaleDownInput(g, 30, 8), ExecutionContext.seeded(seed, global_n=30))
    assert len(seen) > 10 and not any(seen)


def test_negative_cycle_runs_out_of_budget():
    g = build_graph(3, [(0, 1, -2), (1, 2, -2), (2, 0, -2)])
    ctx = ExecutionContext.seeded(0, global_n=3).with_budget(StepBudget(10**5))
    with pytest.raises(BudgetExhausted):
        scale_down(ScaleDownInput(g, 3, 1), ctx)
