"""Powers of tight Hamilton cycles and paths, and the canonical cyclic orderings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, islice, permutations
from math import comb, factorial
from typing import Iterator, Sequence

from .hypergraph import Hypergraph, HypergraphError, edge_index


@dataclass(frozen=True)
class PowerCycleParams:
    n: int
    r: int
    k: int

    def __post_init__(self):
        if self.r < 2:
            raise HypergraphError(f"r must be >= 2, got {self.r}")
        if self.k < 1:
            raise HypergraphError(f"k must be >= 1, got {self.k}")
        if self.n < min_vertices(self.r, self.k):
            raise HypergraphError(
                f"n={self.n} is below 2(k+r-1)={min_vertices(self.r, self.k)}; "
                "distinct windows could share edges"
            )

    @property
    def window(self) -> int:
        """Number of consecutive vertices spanning a clique."""
        return self.k + self.r - 1

    @property
    def binom(self) -> int:
        return comb(self.k + self.r - 2, self.r - 1)

    @property
    def m(self) -> int:
        return power_cycle_edge_count(self.n, self.r, self.k)

    def __str__(self) -> str:
        return f"(r={self.r}, k={self.k}, n={self.n})"


def min_vertices(r: int, k: int) -> int:
    return 2 * (k + r - 1)


@dataclass(frozen=True)
class CyclicPermutation:
    """A cyclic ordering of range(n) up to rotation and reflection.

    Stored in canonical form: ``order[0] == 0`` and ``order[1] < order[-1]``.
    """

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        n = len(order)
        if sorted(order) != list(range(n)):
            raise HypergraphError(f"{list(order)} is not a permutation of range({n})")
        object.__setattr__(self, "order", canonical_order(order))

    @classmethod
    def identity(cls, n: int) -> "CyclicPermutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)


def canonical_order(order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    n = len(order)
    if n < 3:
        return order
    i = order.index(0)
    rot = order[i:] + order[:i]
    if rot[1] > rot[-1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def qn_size(n: int) -> int:
    return factorial(n - 1) // 2


def enumerate_qn(n: int) -> Iterator[CyclicPermutation]:
    """Every cyclic ordering of range(n) modulo rotation and reflection, once.

    Yields (n-1)!/2 orderings in lexicographic order of their canonical form.
    """
    for order in enumerate_qn_orders(n):
        yield CyclicPermutation(order)


def enumerate_qn_orders(n: int) -> Iterator[tuple[int, ...]]:
    """Like :func:`enumerate_qn` but yields raw canonical tuples."""
    if n < 3:
        raise HypergraphError(f"Q_n needs n >= 3, got {n}")
    for tail in permutations(range(1, n)):
        if tail[0] < tail[-1]:
            yield (0,) + tail


@lru_cache(maxsize=32)
def _window_offsets(r: int, k: int) -> tuple[tuple[int, ...], ...]:
    # r-subsets of one window that start at its first slot; every cycle edge is one of these
    # for exactly one starting position.
    w = k + r - 1
    return tuple(c for c in combinations(range(w), r) if c[0] == 0)


def power_cycle_edges(order: Sequence[int], r: int, k: int) -> list[tuple[int, ...]]:
    """Edges of the k-th power of the tight cycle along ``order``, indices mod n.

    Each r-set is emitted exactly once as the set whose first cyclic position starts it.
    """
    n = len(order)
    edges = []
    for i in range(n):
        for offs in _window_offsets(r, k):
            edges.append(tuple(sorted(order[(i + o) % n] for o in offs)))
    return edges


def build_power_cycle(sigma: CyclicPermutation | Sequence[int], params: PowerCycleParams) -> Hypergraph:
    order = tuple(sigma)
    if len(order) != params.n:
        raise HypergraphError(f"ordering has {len(order)} vertices, params say n={params.n}")
    return Hypergraph(params.n, params.r, power_cycle_edges(order, params.r, params.k))


def power_cycle_mask(order: Sequence[int], params: PowerCycleParams) -> int:
    """Global edge bitmask (see :meth:`Hypergraph.global_mask`) of H_sigma."""
    index = edge_index(params.n, params.r)
    m = 0
    for e in power_cycle_edges(order, params.r, params.k):
        m |= 1 << index[e]
    return m


# Above this n the masks of all of Q_n are streamed instead of cached.
MAX_CACHED_N = 10


@lru_cache(maxsize=8)
def _cached_cycle_masks(params: PowerCycleParams) -> tuple[int, ...]:
    return tuple(power_cycle_mask(o, params) for o in enumerate_qn_orders(params.n))


def iter_cycle_masks(params: PowerCycleParams, start: int = 0, stop: int | None = None) -> Iterator[int]:
    """Global edge bitmasks of H_tau for tau in Q_n[start:stop], in enumeration order."""
    if params.n <= MAX_CACHED_N:
        yield from islice(_cached_cycle_masks(params), start, stop)
        return
    for o in islice(enumerate_qn_orders(params.n), start, stop):
        yield power_cycle_mask(o, params)


def build_power_path(v_p: int, r: int, k: int) -> Hypergraph:
    """The (r,k)-path on vertices 0..v_p-1 in path order."""
    w = k + r - 1
    if r < 2 or k < 1:
        raise HypergraphError(f"need r >= 2 and k >= 1, got r={r}, k={k}")
    if v_p < w:
        raise HypergraphError(f"path needs at least k+r-1={w} vertices, got {v_p}")
    edges = set()
    for start in range(v_p - w + 1):
        edges.update(combinations(range(start, start + w), r))
    return Hypergraph(v_p, r, edges)


def power_cycle_edge_count(n: int, r: int, k: int) -> int:
    _check_rk(r, k)
    if n < min_vertices(r, k):
        raise HypergraphError(f"edge-count identity needs n >= {min_vertices(r, k)}")
    return comb(k + r - 2, r - 1) * n


def power_cycle_max_degree(r: int, k: int) -> int:
    _check_rk(r, k)
    return r * comb(k + r - 2, r - 1)


def power_path_edge_count(v_p: int, r: int, k: int) -> int:
    _check_rk(r, k)
    if v_p < k + r - 1:
        raise HypergraphError(f"path needs at least k+r-1={k + r - 1} vertices, got {v_p}")
    return comb(k + r - 1, r) + (v_p - (k + r - 1)) * comb(k + r - 2, r - 1)


def _check_rk(r: int, k: int) -> None:
    if r < 2 or k < 1:
        raise HypergraphError(f"need r >= 2 and k >= 1, got r={r}, k={k}")
