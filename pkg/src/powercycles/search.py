"""Decide whether an r-graph contains a spanning k-th power of a tight Hamilton cycle."""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, islice
from math import comb

from .cycles import (
    CyclicPermutation,
    PowerCycleParams,
    build_power_cycle,
    enumerate_qn_orders,
    iter_cycle_masks,
    min_vertices,
)
from .enumeration import GuardError
from .hypergraph import Hypergraph, HypergraphError

DEFAULT_TIMEOUT = 30.0
BRUTE_FORCE_MAX_N = 10

FOUND = "found"
NOT_FOUND = "not_found"
TIMEOUT = "timeout"

# Clock is read once per this many expanded nodes.
_CLOCK_EVERY = 256


@dataclass
class SearchOutcome:
    status: str
    witness: CyclicPermutation | None = None
    nodes: int = 0
    elapsed: float = 0.0
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": list(self.witness.order) if self.witness else None,
            "nodes": self.nodes,
            "elapsed": self.elapsed,
            "reason": self.reason,
        }


@lru_cache(maxsize=64)
def window_checks(n: int, r: int, k: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """For each position i, the (r-1)-tuples of earlier positions that form a window edge with i.

    A set of positions is a window edge when it fits inside k+r-1 cyclically
    consecutive slots. Each such r-set is listed once, under its largest position.
    """
    w = k + r - 1
    out = []
    for i in range(n):
        near = sorted({j for j in range(i - w + 1, i) if j >= 0} | set(range(0, max(0, i + w - n))))
        near = [j for j in near if j < i]
        checks = []
        for others in combinations(near, r - 1):
            if _cyclic_span(others + (i,), n) <= w - 1:
                checks.append(others)
        out.append(tuple(checks))
    return tuple(out)


def _cyclic_span(positions, n: int) -> int:
    ps = sorted(positions)
    gaps = [b - a for a, b in zip(ps, ps[1:])] + [ps[0] + n - ps[-1]]
    return n - max(gaps)


def _link_masks(H: Hypergraph) -> dict[int, int]:
    """Map each (r-1)-vertex mask to the mask of vertices completing it to an edge."""
    link: dict[int, int] = {}
    for em in H.edge_masks:
        t = em
        while t:
            low = t & -t
            base = em ^ low
            link[base] = link.get(base, 0) | low
            t ^= low
    return link


class _Timeout(Exception):
    pass


def contains_power_cycle(
    H: Hypergraph,
    k: int,
    timeout: float | None = DEFAULT_TIMEOUT,
    node_limit: int | None = None,
) -> SearchOutcome:
    """Backtracking search for a spanning (r,k)-cycle in H.

    Position 0 holds vertex 0 and the last vertex must exceed the second, which
    removes rotations and reflections. A vertex may take position i only if every
    window edge it closes with already placed vertices is present. Candidates are
    tried fail-first: fewest valid successors first, and none with zero.
    """
    n, r = H.n, H.r
    if k < 1:
        raise HypergraphError(f"k must be >= 1, got {k}")
    if n < min_vertices(r, k):
        raise HypergraphError(f"search needs n >= 2(k+r-1) = {min_vertices(r, k)}, got {n}")
    t0 = time.perf_counter()
    B = comb(k + r - 2, r - 1)

    if H.num_edges < B * n:
        return SearchOutcome(NOT_FOUND, elapsed=time.perf_counter() - t0, reason="edge count")
    if min(H.vertex_degrees()) < r * B:
        return SearchOutcome(NOT_FOUND, elapsed=time.perf_counter() - t0, reason="degree")

    checks = window_checks(n, r, k)
    link = _link_masks(H)
    full = (1 << n) - 1
    order = [0]
    bit = [1 << v for v in range(n)]
    nodes = 0

    def allowed(i: int, used: int) -> int:
        mask = full & ~used
        for others in checks[i]:
            base = 0
            for t in others:
                base |= bit[order[t]]
            mask &= link.get(base, 0)
            if not mask:
                return 0
        if i == n - 1:
            mask &= full & ~((bit[order[1]] << 1) - 1)
        return mask

    def ranked(i: int, used: int) -> list[int]:
        mask = allowed(i, used)
        scored = []
        while mask:
            low = mask & -mask
            v = low.bit_length() - 1
            mask ^= low
            if i + 1 < n:
                order.append(v)
                follow = allowed(i + 1, used | low).bit_count()
                order.pop()
                if follow == 0:
                    continue
            else:
                follow = 0
            scored.append((follow, v))
        scored.sort(reverse=True)
        return [v for _, v in scored]

    used = 1
    stack = [ranked(1, used)]
    status = NOT_FOUND
    try:
        while stack:
            cands = stack[-1]
            if not cands:
                stack.pop()
                if len(order) > 1:
                    used &= ~bit[order.pop()]
                continue
            v = cands.pop()
            order.append(v)
            used |= bit[v]
            nodes += 1
            if nodes % _CLOCK_EVERY == 0:
                if timeout is not None and time.perf_counter() - t0 > timeout:
                    raise _Timeout
            if node_limit is not None and nodes >= node_limit:
                raise _Timeout
            if len(order) == n:
                status = FOUND
                break
            stack.append(ranked(len(order), used))
    except _Timeout:
        return SearchOutcome(TIMEOUT, nodes=nodes, elapsed=time.perf_counter() - t0)

    elapsed = time.perf_counter() - t0
    if status == FOUND:
        witness = CyclicPermutation(tuple(order))
        if not build_power_cycle(witness, PowerCycleParams(n, r, k)).issubgraph(H):
            raise AssertionError("search produced a witness that is not contained in H")
        return SearchOutcome(FOUND, witness, nodes, elapsed)
    return SearchOutcome(NOT_FOUND, nodes=nodes, elapsed=elapsed, reason="exhausted")


def brute_force_contains(H: Hypergraph, k: int, max_n: int = BRUTE_FORCE_MAX_N) -> SearchOutcome:
    """Test H_tau inside H for every tau in Q_n."""
    n, r = H.n, H.r
    if n > max_n:
        raise GuardError(f"brute force over Q_{n} exceeds the guard n <= {max_n}")
    params = PowerCycleParams(n, r, k)
    t0 = time.perf_counter()
    missing = ~H.global_mask()
    checked = 0
    for i, mask in enumerate(iter_cycle_masks(params)):
        checked += 1
        if not mask & missing:
            order = next(islice(enumerate_qn_orders(n), i, None))
            return SearchOutcome(FOUND, CyclicPermutation(order), checked, time.perf_counter() - t0)
    return SearchOutcome(NOT_FOUND, nodes=checked, elapsed=time.perf_counter() - t0, reason="exhausted")
