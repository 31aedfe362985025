"""Seeded H^(r)(n, p) sampling and Monte Carlo containment scans over p = C n^(-1/B)."""

from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass, field
from math import comb

import numpy as np

from ._parallel import chunked_map, default_workers
from .cycles import PowerCycleParams
from .hypergraph import Hypergraph, edge_table
from .search import FOUND, TIMEOUT, contains_power_cycle

log = logging.getLogger(__name__)

SCAN_HEADER = ["n", "r", "k", "C", "p", "trials", "successes", "timeouts", "p_hat", "stderr", "seed"]

_U64 = (1 << 64) - 1


def uniforms(seed: int, index: int, count: int) -> np.ndarray:
    """Uniform [0,1) draws number 0..count-1 of the Philox stream keyed by (seed, index).

    Draw j depends only on (seed, index, j), so samples are reproducible under any
    scheduling and the same draws couple samples at different p.
    """
    bitgen = np.random.Philox(key=np.array([seed & _U64, index & _U64], dtype=np.uint64))
    return np.random.Generator(bitgen).random(count)


def edges_below(n: int, r: int, draws: np.ndarray, p: float) -> Hypergraph:
    table = edge_table(n, r)
    return Hypergraph(n, r, [table[j] for j in np.flatnonzero(draws < p)])


def sample(n: int, r: int, p: float, seed: int, index: int = 0) -> Hypergraph:
    """One draw of H^(r)(n, p): r-subset of rank j is kept iff its uniform is below p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return edges_below(n, r, uniforms(seed, index, comb(n, r)), p)


def scaled_probability(C: float, n: int, r: int, k: int) -> tuple[float, bool]:
    """``min(1, C n^(-1/B))`` and whether the clamp was applied."""
    B = comb(k + r - 2, r - 1)
    p = C / n ** (1.0 / B)
    if p > 1.0:
        return 1.0, True
    return p, False


@dataclass(frozen=True)
class ScanConfig:
    params: PowerCycleParams
    c_grid: tuple[float, ...]
    trials: int
    seed: int = 0
    timeout: float | None = 30.0
    workers: int = field(default_factory=default_workers)

    def __post_init__(self):
        grid = tuple(float(c) for c in self.c_grid)
        object.__setattr__(self, "c_grid", grid)
        if not grid:
            raise ValueError("c_grid is empty")
        if any(c <= 0 for c in grid):
            raise ValueError("C values must be positive")
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise ValueError("c_grid must be strictly increasing")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class ScanPoint:
    C: float
    p: float
    trials: int
    successes: int
    timeouts: int
    clamped: bool = False

    @property
    def p_hat(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        q = self.p_hat
        return math.sqrt(q * (1 - q) / self.trials)

    @property
    def optimistic(self) -> float:
        """Estimate counting timeouts as successes."""
        return (self.successes + self.timeouts) / self.trials

    @property
    def pessimistic(self) -> float:
        return self.p_hat


def _scan_chunk(args) -> list[tuple[int, int]]:
    config, start, stop = args
    n, r, k = config.params.n, config.params.r, config.params.k
    N = comb(n, r)
    probs = [scaled_probability(C, n, r, k)[0] for C in config.c_grid]
    tally = [[0, 0] for _ in probs]
    for t in range(start, stop):
        draws = uniforms(config.seed, t, N)
        for j, p in enumerate(probs):
            outcome = contains_power_cycle(edges_below(n, r, draws, p), k, timeout=config.timeout)
            if outcome.status == FOUND:
                tally[j][0] += 1
            elif outcome.status == TIMEOUT:
                tally[j][1] += 1
    return [tuple(x) for x in tally]


def run_scan(config: ScanConfig) -> list[ScanPoint]:
    """Estimate P(H^(r)(n,p) contains an (r,k)-cycle) at each C of the grid.

    Trial t uses the same uniforms at every grid point, so with an exact search the
    success counts are nondecreasing in C. Output does not depend on ``workers``.
    """
    params = config.params
    workers = max(1, config.workers)
    chunks = 1 if workers == 1 else min(config.trials, 4 * workers)
    step = -(-config.trials // chunks)
    tasks = [(config, a, min(a + step, config.trials)) for a in range(0, config.trials, step)]
    parts = chunked_map(_scan_chunk, tasks, workers)
    points = []
    for j, C in enumerate(config.c_grid):
        succ = sum(part[j][0] for part in parts)
        tout = sum(part[j][1] for part in parts)
        p, clamped = scaled_probability(C, params.n, params.r, params.k)
        if clamped:
            log.warning("C=%g gives p > 1 at n=%d; clamped to 1", C, params.n)
        points.append(ScanPoint(C, p, config.trials, succ, tout, clamped))
    return points


def parse_grid(text: str) -> tuple[float, ...]:
    """``LO:HI:STEP`` (inclusive of HI up to rounding) or a comma list."""
    if ":" in text:
        lo, hi, step = (float(x) for x in text.split(":"))
        if step <= 0 or hi < lo:
            raise ValueError(f"bad grid {text!r}")
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return tuple(round(lo + i * step, 12) for i in range(count))
    return tuple(float(x) for x in text.split(","))


def scan_rows(config: ScanConfig, points: list[ScanPoint]) -> list[list]:
    p = config.params
    return [
        [p.n, p.r, p.k, pt.C, pt.p, pt.trials, pt.successes, pt.timeouts, pt.p_hat, pt.stderr, config.seed]
        for pt in points
    ]


def write_scan_csv(config: ScanConfig, points: list[ScanPoint], path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SCAN_HEADER)
        w.writerows(scan_rows(config, points))
