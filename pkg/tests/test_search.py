import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powercycles.cycles import CyclicPermutation, PowerCycleParams, build_power_cycle
from powercycles.enumeration import GuardError
from powercycles.hypergraph import Hypergraph, HypergraphError
from powercycles.search import (
    FOUND,
    NOT_FOUND,
    TIMEOUT,
    brute_force_contains,
    contains_power_cycle,
    window_checks,
)

from conftest import random_hypergraph


def planted(n, r, k, seed, p_noise=0.0):
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    H = build_power_cycle(CyclicPermutation(order), PowerCycleParams(n, r, k))
    noise = random_hypergraph(n, r, p_noise, rng)
    return H.union(noise)


def test_window_checks_cover_every_edge_once():
    for n, r, k in [(6, 3, 1), (8, 3, 2), (10, 4, 2), (6, 2, 2)]:
        checks = window_checks(n, r, k)
        sets = [frozenset(t + (i,)) for i, tups in enumerate(checks) for t in tups]
        assert len(sets) == len(set(sets))
        H = build_power_cycle(CyclicPermutation.identity(n), PowerCycleParams(n, r, k))
        assert {tuple(sorted(s)) for s in sets} == set(H.edges)


@pytest.mark.parametrize("n, r, k", [(20, 3, 1), (30, 3, 2), (24, 4, 1), (16, 2, 3)])
def test_planted_found(n, r, k):
    H = planted(n, r, k, seed=n, p_noise=0.02)
    out = contains_power_cycle(H, k, timeout=20)
    assert out.status == FOUND
    assert build_power_cycle(out.witness, PowerCycleParams(n, r, k)).issubgraph(H)


def test_empty_and_complete():
    assert contains_power_cycle(Hypergraph(8, 3, []), 1).status == NOT_FOUND
    for r, k in [(3, 1), (3, 2), (2, 2)]:
        n = 2 * (k + r - 1)
        out = contains_power_cycle(Hypergraph.complete(n, r), k)
        assert out.found


def test_fast_paths():
    n, r, k = 10, 3, 1
    H = build_power_cycle(CyclicPermutation.identity(n), PowerCycleParams(n, r, k))
    dropped = Hypergraph(n, r, H.edges[1:])
    out = contains_power_cycle(dropped, k)
    assert out.status == NOT_FOUND and out.reason == "edge count"
    # enough edges, but vertex 9 is isolated
    dense = Hypergraph(n, r, [e for e in combinations(range(9), 3)])
    out = contains_power_cycle(dense, k)
    assert out.status == NOT_FOUND and out.reason == "degree"


def test_degree_pruning_agrees_with_full_search():
    rng = random.Random(5)
    for _ in range(30):
        H = random_hypergraph(9, 3, 0.45, rng)
        fast = contains_power_cycle(H, 1)
        if fast.reason == "degree":
            assert brute_force_contains(H, 1).status == NOT_FOUND


def test_agrees_with_brute_force_small():
    rng = random.Random(11)
    for n, r, k, p in [(8, 3, 1, 0.5), (9, 3, 1, 0.4), (8, 3, 2, 0.85), (6, 2, 1, 0.6), (8, 2, 2, 0.7)]:
        for _ in range(15):
            H = random_hypergraph(n, r, p, rng)
            assert contains_power_cycle(H, k).status == brute_force_contains(H, k).status


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.2, 0.9))
def test_monotone_under_added_edges(seed, p):
    rng = random.Random(seed)
    H = random_hypergraph(9, 3, p, rng)
    if contains_power_cycle(H, 1).found:
        extra = random_hypergraph(9, 3, 0.3, rng)
        assert contains_power_cycle(H.union(extra), 1).found


def test_node_limit_reports_timeout():
    H = Hypergraph.complete(8, 3)
    out = contains_power_cycle(H, 1, node_limit=1)
    assert out.status == TIMEOUT and out.witness is None
    assert contains_power_cycle(H, 1, node_limit=100).status == FOUND


def test_clock_is_sampled():
    # fewer nodes than the clock interval, so a zero budget is never observed
    assert contains_power_cycle(Hypergraph.complete(8, 3), 1, timeout=0.0).status == FOUND


def test_errors_and_guards():
    with pytest.raises(HypergraphError):
        contains_power_cycle(Hypergraph(5, 3, []), 1)
    with pytest.raises(HypergraphError):
        contains_power_cycle(Hypergraph(8, 3, []), 0)
    with pytest.raises(GuardError):
        brute_force_contains(Hypergraph(11, 3, []), 1)


def test_outcome_json():
    out = contains_power_cycle(Hypergraph.complete(6, 3), 1)
    js = out.to_json()
    assert set(js) == {"status", "witness", "nodes", "elapsed", "reason"}
    assert js["status"] == "found" and sorted(js["witness"]) == list(range(6))


def test_brute_force_witness():
    H = planted(9, 3, 1, seed=2)
    out = brute_force_contains(H, 1)
    assert out.found
    assert build_power_cycle(out.witness, PowerCycleParams(9, 3, 1)).issubgraph(H)
