"""Exact overlap counts between H_sigma and every H_tau, and subgraph profiles of H_sigma."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from ._parallel import chunked_map
from .cycles import (
    CyclicPermutation,
    PowerCycleParams,
    iter_cycle_masks,
    build_power_cycle,
    power_cycle_mask,
    qn_size,
)
from .hypergraph import EdgeSubset, Hypergraph, HypergraphError, edge_table, mask_components

log = logging.getLogger(__name__)

# Largest n for which a full sweep of Q_n is attempted; 11!/2 is ~2e7 orderings.
MAX_QN_N = 12
# Largest binom(m, b) for subset enumeration.
MAX_SUBSETS = 10**7


class GuardError(ValueError):
    """A requested exact computation exceeds its feasibility guard."""


def check_qn_guard(n: int, max_n: int = MAX_QN_N) -> None:
    if n > max_n:
        raise GuardError(
            f"n={n} exceeds the Q_n guard {max_n}: a sweep visits (n-1)!/2 = {qn_size(n):,} orderings"
        )


def check_subset_guard(m: int, b: int, max_subsets: int = MAX_SUBSETS) -> None:
    if comb(m, b) > max_subsets:
        raise GuardError(f"binom({m}, {b}) = {comb(m, b):,} subsets exceeds the guard {max_subsets:,}")


def global_mask_components(mask: int, n: int, r: int) -> int:
    """Number of edge-connectivity components of the edges in a global edge mask."""
    table = edge_table(n, r)
    vmasks = []
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        e = table[i]
        vm = 0
        for v in e:
            vm |= 1 << v
        vmasks.append(vm)
        mask ^= low
    return len(mask_components(vmasks))


@dataclass
class OverlapHistogram:
    params: PowerCycleParams
    by_b: dict[int, int] = field(default_factory=dict)
    by_bs: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.by_b.values())

    def rows(self) -> list[tuple[int, int, int]]:
        """``(b, s, count)`` rows; b = 0 appears with s = 0."""
        out = []
        if self.by_b.get(0):
            out.append((0, 0, self.by_b[0]))
        for (b, s), c in sorted(self.by_bs.items()):
            out.append((b, s, c))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, OverlapHistogram):
            return NotImplemented
        return (self.params, self.by_b, self.by_bs) == (other.params, other.by_b, other.by_bs)


def _overlap_chunk(args) -> tuple[Counter, Counter]:
    params, sigma_mask, start, stop = args
    by_b: Counter = Counter()
    by_bs: Counter = Counter()
    comp_cache: dict[int, int] = {}
    for tau_mask in iter_cycle_masks(params, start, stop):
        inter = sigma_mask & tau_mask
        b = inter.bit_count()
        by_b[b] += 1
        if b:
            s = comp_cache.get(inter)
            if s is None:
                s = comp_cache[inter] = global_mask_components(inter, params.n, params.r)
            by_bs[(b, s)] += 1
    return by_b, by_bs


def overlap_histogram(
    sigma: CyclicPermutation | None,
    params: PowerCycleParams,
    max_n: int = MAX_QN_N,
    workers: int = 1,
) -> OverlapHistogram:
    """Count tau in Q_n by the size b and component count s of E(H_sigma) & E(H_tau).

    ``sigma=None`` means the identity ordering.
    """
    check_qn_guard(params.n, max_n)
    if sigma is None:
        sigma = CyclicPermutation.identity(params.n)
    sigma_mask = power_cycle_mask(sigma.order, params)
    total = qn_size(params.n)
    parts = chunked_map(
        _overlap_chunk,
        [(params, sigma_mask, a, b) for a, b in _ranges(total, workers)],
        workers,
    )
    by_b: Counter = Counter()
    by_bs: Counter = Counter()
    for pb, pbs in parts:
        by_b.update(pb)
        by_bs.update(pbs)
    return OverlapHistogram(params, dict(sorted(by_b.items())), dict(sorted(by_bs.items())))


def _ranges(total: int, workers: int) -> list[tuple[int, int]]:
    chunks = max(1, workers) * 4 if workers > 1 else 1
    step = -(-total // chunks)
    return [(a, min(a + step, total)) for a in range(0, total, step)]


@dataclass(frozen=True)
class SubgraphProfile:
    b: int
    s: int
    v_min: int
    count: int


def subgraph_profiles(
    params: PowerCycleParams, b_max: int, max_subsets: int = MAX_SUBSETS
) -> list[SubgraphProfile]:
    """Every edge subset of H_sigma with 1..b_max edges, grouped by (edges, components)."""
    H = build_power_cycle(CyclicPermutation.identity(params.n), params)
    b_max = min(b_max, H.num_edges)
    check_subset_guard(H.num_edges, b_max, max_subsets)
    counts: Counter = Counter()
    vmin: dict[tuple[int, int], int] = {}
    masks = H.edge_masks
    for b in range(1, b_max + 1):
        for combo in combinations(masks, b):
            comps = mask_components(combo)
            support = 0
            for c in comps:
                support |= c
            key = (b, len(comps))
            nv = support.bit_count()
            counts[key] += 1
            if nv < vmin.get(key, nv + 1):
                vmin[key] = nv
    return [SubgraphProfile(b, s, vmin[(b, s)], counts[(b, s)]) for b, s in sorted(counts)]


def connected_subgraphs_from(
    H: Hypergraph, v: int, b: int, max_subsets: int = MAX_SUBSETS
) -> int:
    """Number of connected b-edge subsets of H whose edges cover vertex v.

    Grows connected edge sets outward from the edges at v, deduplicating by edge set.
    """
    if not 0 <= v < H.n:
        raise HypergraphError(f"vertex {v} outside [0, {H.n})")
    if b < 1:
        return 0
    if b > H.num_edges:
        return 0
    check_subset_guard(H.num_edges, b, max_subsets)
    masks = H.edge_masks
    nbrs = [
        [j for j, mj in enumerate(masks) if j != i and mj & mi] for i, mi in enumerate(masks)
    ]
    level = {1 << i for i, m in enumerate(masks) if m >> v & 1}
    for _ in range(b - 1):
        nxt = set()
        for s in level:
            frontier = 0
            t = s
            while t:
                low = t & -t
                for j in nbrs[low.bit_length() - 1]:
                    frontier |= 1 << j
                t ^= low
            frontier &= ~s
            while frontier:
                low = frontier & -frontier
                nxt.add(s | low)
                frontier ^= low
        level = nxt
    return len(level)


def count_extensions(
    P: EdgeSubset, params: PowerCycleParams, max_n: int = MAX_QN_N
) -> int:
    """Number of tau in Q_n with every edge of P inside H_tau."""
    check_qn_guard(params.n, max_n)
    if (P.n, P.r) != (params.n, params.r):
        raise HypergraphError("P lives on a different vertex set or uniformity")
    need = P.global_mask()
    return sum(1 for m in iter_cycle_masks(params) if m & need == need)


def extension_counts(params: PowerCycleParams, max_n: int = MAX_QN_N) -> Counter:
    """Map from global edge-mask intersections ``E(H_sigma) & E(H_tau)`` to multiplicity.

    Useful for counting extensions of many P at once: P extends to tau iff P is a
    submask of the intersection.
    """
    check_qn_guard(params.n, max_n)
    sigma_mask = power_cycle_mask(tuple(range(params.n)), params)
    return Counter(sigma_mask & m for m in iter_cycle_masks(params))
