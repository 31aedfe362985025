"""Exact first and second moments of the number X of (r,k)-cycles in H^(r)(n, p).

Everything is exact rational arithmetic. ``X`` counts orderings sigma in Q_n with
H_sigma inside the random hypergraph, so ``E[X] = |Q_n| p^m`` and

    E[X^2] = |Q_n| p^(2m) sum_b N_sigma(b) p^(-b)

where the overlap histogram N_sigma does not depend on sigma.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .bounds import pz_lower_bound
from .cycles import CyclicPermutation, PowerCycleParams, iter_cycle_masks, qn_size
from .enumeration import GuardError, OverlapHistogram, check_qn_guard, overlap_histogram

log = logging.getLogger(__name__)

# Default Q_n guard for moment computations.
MOMENT_MAX_N = 9
# Largest binom(n, r) for the full subset sweep behind exact P(X > 0).
MAX_SUBSET_BITS = 20


def as_probability(p) -> Fraction:
    if isinstance(p, str):
        p = Fraction(p.strip())
    elif isinstance(p, float):
        p = Fraction(p).limit_denominator(10**12)
    else:
        p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return p


def as_positive_rational(x) -> Fraction:
    """Like :func:`as_probability` but allows values above 1."""
    if isinstance(x, str):
        x = Fraction(x.strip())
    elif isinstance(x, float):
        x = Fraction(x).limit_denominator(10**12)
    else:
        x = Fraction(x)
    if x <= 0:
        raise ValueError(f"need a positive value, got {x}")
    return x


def fraction_str(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class MomentReport:
    params: PowerCycleParams
    p: Fraction
    ex: Fraction
    ex2: Fraction
    ratio: Fraction | None
    lemma_k_sum: Fraction | None
    histogram: OverlapHistogram | None = None

    def to_json(self) -> dict:
        def shadow(x):
            return None if x is None else float(x)

        return {
            "n": self.params.n,
            "r": self.params.r,
            "k": self.params.k,
            "m": self.params.m,
            "p": fraction_str(self.p),
            "ex": fraction_str(self.ex),
            "ex2": fraction_str(self.ex2),
            "ratio": fraction_str(self.ratio),
            "lemma_k_sum": fraction_str(self.lemma_k_sum),
            "float": {
                "p": float(self.p),
                "ex": float(self.ex),
                "ex2": float(self.ex2),
                "ratio": shadow(self.ratio),
                "lemma_k_sum": shadow(self.lemma_k_sum),
            },
        }


def expected_count(params: PowerCycleParams, p) -> Fraction:
    p = as_probability(p)
    return Fraction(qn_size(params.n)) * p**params.m


def second_moment_from_histogram(hist: OverlapHistogram, p) -> Fraction:
    p = as_probability(p)
    params = hist.params
    m = params.m
    # p^(2m-b) instead of p^(2m) p^(-b) keeps p = 0 well defined.
    inner = sum(Fraction(c) * p ** (2 * m - b) for b, c in hist.by_b.items())
    return qn_size(params.n) * inner


def lemma_k_sum(hist: OverlapHistogram, p) -> Fraction | None:
    """``sum_{b>=1} N_sigma(b) p^(-b) / |Q_n|``; None at p = 0.

    Defined for any p > 0, including the p > 1 that ``C n^(-1/B)`` gives at small n.
    """
    if p == 0:
        return None
    p = as_positive_rational(p)
    total = sum(Fraction(c) / p**b for b, c in hist.by_b.items() if b >= 1)
    return total / qn_size(hist.params.n)


def lemma_k_terms(hist: OverlapHistogram, p) -> dict[tuple[int, int], Fraction]:
    """``2 N_sigma(b,s) p^(-b) / (n-1)!`` for each (b, s) present; these sum to :func:`lemma_k_sum`."""
    p = as_positive_rational(p)
    q = qn_size(hist.params.n)
    return {bs: Fraction(c) / (p ** bs[0] * q) for bs, c in hist.by_bs.items()}


def second_moment_exact(
    params: PowerCycleParams,
    p,
    max_n: int = MOMENT_MAX_N,
    check_symmetry: bool = True,
    seed: int = 0,
    workers: int = 1,
) -> MomentReport:
    """Exact E[X], E[X^2] and their ratio from the identity-ordering histogram.

    With ``check_symmetry`` one further, seeded random sigma is histogrammed and
    must agree, since the whole computation relies on sigma-independence.
    """
    p = as_probability(p)
    check_qn_guard(params.n, max_n)
    hist = overlap_histogram(None, params, max_n=max_n, workers=workers)
    if check_symmetry:
        order = list(range(params.n))
        random.Random(seed).shuffle(order)
        other = overlap_histogram(CyclicPermutation(order), params, max_n=max_n, workers=workers)
        if other != hist:
            raise RuntimeError(f"overlap histogram depends on sigma at {params}")
    ex = expected_count(params, p)
    ex2 = second_moment_from_histogram(hist, p)
    ratio = ex2 / (ex * ex) if ex else None
    return MomentReport(params, p, ex, ex2, ratio, lemma_k_sum(hist, p), hist)


def second_moment_double_sum(params: PowerCycleParams, p, max_n: int = MOMENT_MAX_N) -> Fraction:
    """``sum_{sigma, tau} p^|E(H_sigma) | E(H_tau)|`` over all ordered pairs; a direct oracle."""
    p = as_probability(p)
    check_qn_guard(params.n, max_n)
    masks = list(iter_cycle_masks(params))
    union_sizes: Counter = Counter()
    for a in masks:
        union_sizes.update((a | b).bit_count() for b in masks)
    return sum(Fraction(c) * p**u for u, c in union_sizes.items())


@dataclass(frozen=True)
class ExactProbabilityReport:
    params: PowerCycleParams
    p: Fraction
    prob_contains: Fraction
    pz_bound: Fraction

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "r": self.params.r,
            "k": self.params.k,
            "p": fraction_str(self.p),
            "prob_contains": fraction_str(self.prob_contains),
            "pz_bound": fraction_str(self.pz_bound),
            "float": {
                "p": float(self.p),
                "prob_contains": float(self.prob_contains),
                "pz_bound": float(self.pz_bound),
            },
        }


_containing_cache: dict[PowerCycleParams, tuple[int, ...]] = {}


def containing_subsets_by_size(params: PowerCycleParams, max_bits: int = MAX_SUBSET_BITS) -> tuple[int, ...]:
    """``c[j]`` = number of j-edge subsets of K_n^(r) that contain some H_sigma.

    Marks every cycle mask in a table over all ``2^binom(n,r)`` subsets, then closes
    the table upward one coordinate at a time (a superset-sum transform with OR).
    """
    N = comb(params.n, params.r)
    if N > max_bits:
        raise GuardError(f"binom({params.n},{params.r}) = {N} edges; 2^{N} subsets exceed 2^{max_bits}")
    cached = _containing_cache.get(params)
    if cached is not None:
        return cached
    table = np.zeros(1 << N, dtype=bool)
    for m in set(iter_cycle_masks(params)):
        table[m] = True
    for i in range(N):
        view = table.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    sizes = np.bitwise_count(np.arange(1 << N, dtype=np.uint64))
    counts = np.bincount(sizes[table], minlength=N + 1)
    result = tuple(int(c) for c in counts)
    _containing_cache[params] = result
    return result


def containment_probability(counts: tuple[int, ...], p) -> Fraction:
    p = as_probability(p)
    N = len(counts) - 1
    return sum(Fraction(c) * p**j * (1 - p) ** (N - j) for j, c in enumerate(counts) if c)


def exact_containment_probability(
    params: PowerCycleParams, p, max_bits: int = MAX_SUBSET_BITS
) -> ExactProbabilityReport:
    p = as_probability(p)
    counts = containing_subsets_by_size(params, max_bits)
    prob = containment_probability(counts, p)
    ex = expected_count(params, p)
    if ex == 0:
        pz = Fraction(0)
    else:
        hist = overlap_histogram(None, params)
        pz = pz_lower_bound(ex, second_moment_from_histogram(hist, p))
    return ExactProbabilityReport(params, p, prob, pz)
