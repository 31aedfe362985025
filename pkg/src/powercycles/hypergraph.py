"""Uniform hypergraphs on dense integer vertices, with a plain-text file format."""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence


class HypergraphError(ValueError):
    pass


class HypergraphFormatError(HypergraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@lru_cache(maxsize=64)
def edge_index(n: int, r: int) -> dict[tuple[int, ...], int]:
    """Rank of every r-subset of range(n) in lexicographic order."""
    return {e: i for i, e in enumerate(combinations(range(n), r))}


@lru_cache(maxsize=64)
def edge_table(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(n), r))


def vertex_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _canonical_edge(edge: Sequence[int], n: int, r: int) -> tuple[int, ...]:
    e = tuple(sorted(int(v) for v in edge))
    if len(e) != r:
        raise HypergraphError(f"edge {list(edge)} has {len(e)} vertices, expected {r}")
    if len(set(e)) != r:
        raise HypergraphError(f"edge {list(edge)} repeats a vertex")
    if e[0] < 0 or e[-1] >= n:
        raise HypergraphError(f"edge {list(edge)} has a vertex outside [0, {n})")
    return e


class Hypergraph:
    """An r-uniform hypergraph on vertices 0..n-1.

    Edges are stored as sorted tuples in lexicographic order, plus one vertex
    bitmask per edge for fast intersection tests. Instances are immutable.
    """

    __slots__ = ("n", "r", "edges", "edge_masks", "_edge_set", "_global_mask")

    def __init__(self, n: int, r: int, edges: Iterable[Sequence[int]] = ()):
        if r < 2:
            raise HypergraphError(f"uniformity r must be >= 2, got {r}")
        if n < r:
            raise HypergraphError(f"need n >= r, got n={n}, r={r}")
        canon = {_canonical_edge(e, n, r) for e in edges}
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "edge_masks", tuple(vertex_mask(e) for e in self.edges))
        object.__setattr__(self, "_edge_set", frozenset(self.edge_masks))
        object.__setattr__(self, "_global_mask", None)

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    @classmethod
    def complete(cls, n: int, r: int) -> "Hypergraph":
        return cls(n, r, combinations(range(n), r))

    @classmethod
    def from_global_mask(cls, n: int, r: int, mask: int) -> "Hypergraph":
        """Inverse of :meth:`global_mask`."""
        table = edge_table(n, r)
        edges = []
        i = 0
        while mask:
            if mask & 1:
                edges.append(table[i])
            mask >>= 1
            i += 1
        return cls(n, r, edges)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.r, self.edges) == (other.n, other.r, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, edges={len(self.edges)})"

    def has_edge(self, edge: Iterable[int]) -> bool:
        return vertex_mask(edge) in self._edge_set

    def has_edge_mask(self, vmask: int) -> bool:
        return vmask in self._edge_set

    def global_mask(self) -> int:
        """Bitmask over all r-subsets of [0, n), ranked lexicographically."""
        if self._global_mask is None:
            index = edge_index(self.n, self.r)
            m = 0
            for e in self.edges:
                m |= 1 << index[e]
            object.__setattr__(self, "_global_mask", m)
        return self._global_mask

    def issubgraph(self, other: "Hypergraph") -> bool:
        if (self.n, self.r) != (other.n, other.r):
            return False
        return self._edge_set <= other._edge_set

    def union(self, other: "Hypergraph") -> "Hypergraph":
        if (self.n, self.r) != (other.n, other.r):
            raise HypergraphError("union needs matching n and r")
        return Hypergraph(self.n, self.r, self.edges + other.edges)

    def vertex_degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def covered_vertices(self) -> int:
        return bin(vertex_mask(v for e in self.edges for v in e)).count("1")


class EdgeSubset:
    """A set of edges of ``parent``, held as a bitmask over ``parent.edges``."""

    __slots__ = ("parent", "mask")

    def __init__(self, parent: Hypergraph, mask: int = 0):
        if mask < 0 or mask >> parent.num_edges:
            raise HypergraphError("mask has bits beyond the parent's edge count")
        self.parent = parent
        self.mask = mask

    @classmethod
    def from_indices(cls, parent: Hypergraph, indices: Iterable[int]) -> "EdgeSubset":
        m = 0
        for i in indices:
            if not 0 <= i < parent.num_edges:
                raise HypergraphError(f"edge index {i} out of range")
            m |= 1 << i
        return cls(parent, m)

    @classmethod
    def full(cls, parent: Hypergraph) -> "EdgeSubset":
        return cls(parent, (1 << parent.num_edges) - 1)

    def indices(self) -> list[int]:
        m, i, out = self.mask, 0, []
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.parent.edges[i] for i in self.indices())

    @property
    def edge_masks(self) -> list[int]:
        return [self.parent.edge_masks[i] for i in self.indices()]

    @property
    def r(self) -> int:
        return self.parent.r

    @property
    def n(self) -> int:
        return self.parent.n

    def __len__(self) -> int:
        return self.mask.bit_count()

    def num_vertices(self) -> int:
        vm = 0
        for m in self.edge_masks:
            vm |= m
        return vm.bit_count()

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.parent.n, self.parent.r, self.edges)

    def global_mask(self) -> int:
        index = edge_index(self.parent.n, self.parent.r)
        m = 0
        for e in self.edges:
            m |= 1 << index[e]
        return m


def degree_of_set(H: Hypergraph, S: Iterable[int]) -> int:
    """Number of edges of H containing every vertex of S."""
    S = set(S)
    if not S or len(S) > H.r:
        raise HypergraphError(f"|S| must be in [1, {H.r}], got {len(S)}")
    if min(S) < 0 or max(S) >= H.n:
        raise HypergraphError(f"S has a vertex outside [0, {H.n})")
    sm = vertex_mask(S)
    return sum(1 for em in H.edge_masks if em & sm == sm)


def max_degree(H: Hypergraph, d: int = 1) -> int:
    if not 1 <= d <= H.r:
        raise HypergraphError(f"d must be in [1, {H.r}], got {d}")
    counts: dict[tuple[int, ...], int] = {}
    for e in H.edges:
        for S in combinations(e, d):
            counts[S] = counts.get(S, 0) + 1
    return max(counts.values(), default=0)


def mask_components(edge_masks: Iterable[int]) -> list[int]:
    """Vertex masks of the edge-connectivity components of a set of edges."""
    comps: list[int] = []
    for em in edge_masks:
        merged = em
        rest = []
        for c in comps:
            if c & merged:
                merged |= c
            else:
                rest.append(c)
        rest.append(merged)
        comps = rest
    return comps


def components(H: Hypergraph | EdgeSubset) -> list[list[tuple[int, ...]]]:
    """Group edges into maximal chains of pairwise-intersecting edges.

    Vertices not covered by any edge belong to no component.
    """
    edges = H.edges
    masks = [vertex_mask(e) for e in edges]
    comps = mask_components(masks)
    comps.sort(key=lambda c: (c & -c))
    groups: list[list[tuple[int, ...]]] = [[] for _ in comps]
    for e, m in zip(edges, masks):
        for i, c in enumerate(comps):
            if c & m:
                groups[i].append(e)
                break
    return groups


def read_file(path: str | os.PathLike) -> Hypergraph:
    with open(path) as fh:
        return parse(fh.read())


def parse(text: str) -> Hypergraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            fields = [int(tok) for tok in line.split()]
        except ValueError:
            raise HypergraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(fields) != 2:
                raise HypergraphFormatError("header must be 'n r'", lineno)
            n, r = fields
            if r < 2 or n < r:
                raise HypergraphFormatError(f"invalid header n={n} r={r}", lineno)
            header = (n, r)
            continue
        n, r = header
        if len(fields) != r:
            raise HypergraphFormatError(f"edge has {len(fields)} vertices, expected {r}", lineno)
        if any(v < 0 or v >= n for v in fields):
            raise HypergraphFormatError(f"vertex out of range [0, {n})", lineno)
        if any(a >= b for a, b in zip(fields, fields[1:])):
            raise HypergraphFormatError("edge vertices must be strictly increasing", lineno)
        edges.append(fields)
    if header is None:
        raise HypergraphFormatError("missing header line 'n r'", 1)
    return Hypergraph(header[0], header[1], edges)


def format_hypergraph(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.r}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def write_file(H: Hypergraph, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(format_hypergraph(H))


def num_possible_edges(n: int, r: int) -> int:
    return comb(n, r)
