import math

import pytest
from hypothesis import given, strategies as st

from negsssp import GeometricParam, Rng, rng_new, sample_geometric


def test_same_seed_same_stream():
    a, b = rng_new(42), rng_new(42)
    assert [a.next_u64() for _ in range(1000)] == [b.next_u64() for _ in range(1000)]


def test_different_seeds_differ():
    assert rng_new(1).next_u64() != rng_new(2).next_u64()


def test_known_splitmix_values():
    # Reference outputs of splitmix64 seeded with 0.
    r = Rng(0)
    assert r.next_u64() == 0xE220A8397B1DCDAF
    assert r.next_u64() == 0x6E789E6AA1B965F4


def test_unit_range():
    r = Rng(7)
    xs = [r.unit() for _ in range(10000)]
    assert all(0.0 < x <= 1.0 for x in xs)
    ys = [r.random() for _ in range(10000)]
    assert all(0.0 <= y < 1.0 for y in ys)


@given(st.integers(0, 2**64 - 1), st.integers(1, 10**6))
def test_randbelow_range(seed, k):
    r = Rng(seed)
    for _ in range(20):
        assert 0 <= r.randbelow(k) < k


def test_randbelow_rejects_nonpositive():
    with pytest.raises(ValueError):
        Rng(0).randbelow(0)


def test_geometric_param_validation():
    with pytest.raises(ValueError):
        GeometricParam(0, 1)
    with pytest.raises(ValueError):
        GeometricParam(3, 2)
    p = GeometricParam.for_ldd(1024, 10)
    assert p.num == p.den  # 80 * 10 / 10 > 1 clamps to certainty
    p = GeometricParam.for_ldd(4, 1600)
    assert abs(p.p - 0.1) < 1e-9


def test_geometric_certain():
    r = Rng(3)
    assert all(sample_geometric(r, GeometricParam(1, 1), 50) == 1 for _ in range(100))


def test_geometric_clamped():
    r = Rng(3)
    p = GeometricParam(1, 1000)
    assert all(1 <= sample_geometric(r, p, 5) <= 5 for _ in range(1000))


def test_geometric_mean_half():
    r = Rng(11)
    n = 10**5
    mean = sum(sample_geometric(r, GeometricParam(1, 2), 10**9) for _ in range(n)) / n
    assert abs(mean - 2.0) < 2e-2


def test_geometric_point_mass():
    r = Rng(12)
    n = 10**5
    p = 0.1
    hits = sum(sample_geometric(r, GeometricParam(1, 10), 10**9) == 3 for _ in range(n))
    expect = p * (1 - p) ** 2
    sigma = math.sqrt(expect * (1 - expect) / n)
    assert abs(hits / n - expect) < 3 * sigma
