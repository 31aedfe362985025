"""Invariant batteries run by ``powercycles verify``."""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from . import bounds
from .cycles import (
    CyclicPermutation,
    PowerCycleParams,
    build_power_cycle,
    build_power_path,
    enumerate_qn,
    min_vertices,
    power_cycle_max_degree,
    power_path_edge_count,
)
from .enumeration import (
    connected_subgraphs_from,
    extension_counts,
    overlap_histogram,
    subgraph_profiles,
)
from .hypergraph import EdgeSubset, Hypergraph, components, max_degree
from .lab import sample
from .moments import (
    exact_containment_probability,
    lemma_k_terms,
    second_moment_double_sum,
    second_moment_exact,
)
from .search import TIMEOUT, brute_force_contains, contains_power_cycle

SUITES = ("facts", "bounds", "moments", "search")


@dataclass
class Failure:
    invariant: str
    params: str
    expected: str
    actual: str


@dataclass
class VerifyReport:
    suite: str
    checks: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, invariant: str, params, expected, actual) -> bool:
        self.checks += 1
        if not cond:
            self.failures.append(Failure(invariant, str(params), str(expected), str(actual)))
        return cond

    def merge(self, other: "VerifyReport") -> None:
        self.checks += other.checks
        self.failures.extend(other.failures)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "checks": self.checks,
            "failures": [asdict(f) for f in self.failures],
            "elapsed": self.elapsed,
            "ok": self.ok,
        }


def _random_order(n: int, rng: random.Random) -> CyclicPermutation:
    order = list(range(n))
    rng.shuffle(order)
    return CyclicPermutation(order)


def verify_facts(seed: int = 0, rs=(2, 3, 4), ks=(1, 2, 3), qn_max: int = 9) -> VerifyReport:
    rep = VerifyReport("facts")
    rng = random.Random(seed)
    for r in rs:
        for k in ks:
            n = min_vertices(r, k) + 2
            params = PowerCycleParams(n, r, k)
            delta = power_cycle_max_degree(r, k)
            for sigma in (CyclicPermutation.identity(n), _random_order(n, rng)):
                H = build_power_cycle(sigma, params)
                rep.check(H.num_edges == params.m, "edge count m", params, params.m, H.num_edges)
                degs = set(H.vertex_degrees())
                rep.check(degs == {delta}, "uniform vertex degree", params, delta, sorted(degs))
                rep.check(max_degree(H, 1) == delta, "max 1-degree", params, delta, max_degree(H, 1))
                rep.check(len(components(H)) == 1, "connected", params, 1, len(components(H)))
                w = params.window
                ok = all(
                    H.has_edge(e)
                    for i in range(n)
                    for e in combinations([sigma.order[(i + j) % n] for j in range(w)], r)
                )
                rep.check(ok, "windows are cliques", params, True, ok)
            for v_p in range(params.window, params.window + 4):
                P = build_power_path(v_p, r, k)
                want = power_path_edge_count(v_p, r, k)
                rep.check(P.num_edges == want, "path edge count", (v_p, r, k), want, P.num_edges)
                big = PowerCycleParams(max(v_p + params.window, min_vertices(r, k)), r, k)
                C = build_power_cycle(CyclicPermutation.identity(big.n), big)
                inside = all(C.has_edge(e) for e in P.edges)
                rep.check(inside, "path inside cycle", (v_p, big), True, inside)
    for n in range(3, qn_max + 1):
        got = sum(1 for _ in enumerate_qn(n))
        rep.check(got == factorial(n - 1) // 2, "|Q_n|", n, factorial(n - 1) // 2, got)
    return rep


def _graph_fact_instances():
    n = 8
    yield "path", Hypergraph(n, 2, [(i, i + 1) for i in range(n - 1)])
    yield "cycle", Hypergraph(n, 2, [(i, (i + 1) % n) for i in range(n)])
    yield "star", Hypergraph(n, 2, [(0, i) for i in range(1, n)])


def verify_bounds(n_max_estimates: int = 1000) -> VerifyReport:
    rep = VerifyReport("bounds")
    for params, b_max in ((PowerCycleParams(8, 3, 1), 4), (PowerCycleParams(9, 3, 2), 3)):
        for prof in subgraph_profiles(params, b_max):
            lo = bounds.fact4_min_vertices(prof.b, prof.s, params.r, params.k)
            rep.check(prof.v_min >= lo, "support lower bound", (params, prof.b, prof.s), f">= {lo}", prof.v_min)

    for params in (PowerCycleParams(7, 3, 1), PowerCycleParams(8, 3, 1)):
        n, r, k = params.n, params.r, params.k
        H = build_power_cycle(CyclicPermutation.identity(n), params)
        for b in range(1, 4):
            bound = bounds.lemma_l1_bound(b, r, k)
            for v in range(n):
                got = connected_subgraphs_from(H, v, b)
                rep.check(bound.dominates(got), "connected-from-v bound", (params, v, b), f"<= {float(bound):.6g}", got)
        for prof in subgraph_profiles(params, 3):
            bound = bounds.prop_p1_bound(n, prof.b, prof.s, r, k)
            rep.check(bound.dominates(prof.count), "(b,s) subgraph bound", (params, prof.b, prof.s), f"<= {float(bound):.6g}", prof.count)
        inter = extension_counts(params)
        for b in range(1, 4):
            for idx in combinations(range(H.num_edges), b):
                P = EdgeSubset.from_indices(H, idx)
                need = P.global_mask()
                got = sum(c for m, c in inter.items() if m & need == need)
                bound = bounds.prop_p2_bound(n, P.num_vertices(), len(components(P)), r, k)
                rep.check(bound.dominates(got), "extension bound", (params, idx), f"<= {bound.exact}", got)

        # Term-by-term: 2 N(b,s) p^-b / (n-1)! against the proof's per-(b,s) majorant.
        hist = overlap_histogram(None, params)
        c_paper = float(bounds.paper_constant_C(r, k))
        p = Fraction(c_paper / n ** (1 / params.binom)).limit_denominator(10**9)
        for (b, s), term in lemma_k_terms(hist, p).items():
            bound = bounds.lemma_k_term_bound(b, s, r, k, c_paper)
            rep.check(bound.dominates(term), "second-moment term majorant", (params, b, s), f"<= {float(bound):.6g}", float(term))

    for name, G in _graph_fact_instances():
        delta = max_degree(G, 1)
        for b in range(1, 4):
            bound = bounds.graph_connected_bound(delta, b)
            for v in range(G.n):
                got = connected_subgraphs_from(G, v, b)
                rep.check(bound.dominates(got), "graph connected bound", (name, v, b), f"<= {float(bound):.6g}", got)

    est = bounds.verify_standard_estimates(n_max_estimates)
    rep.checks += est.checks
    for kind, n, x in est.violations:
        rep.failures.append(Failure("standard estimate " + kind, f"n={n}, x={x}", "holds", "violated"))
    return rep


def verify_moments(seed: int = 0) -> VerifyReport:
    rep = VerifyReport("moments")
    for params in (PowerCycleParams(7, 3, 1), PowerCycleParams(8, 3, 1)):
        q = factorial(params.n - 1) // 2
        hist = overlap_histogram(None, params)
        rep.check(hist.total == q, "histogram mass", params, q, hist.total)
        other = overlap_histogram(_random_order(params.n, random.Random(seed)), params)
        rep.check(other == hist, "sigma independence", params, hist.by_b, other.by_b)
        rep.check(hist.by_b.get(params.m, 0) >= 1, "self overlap", params, ">= 1", hist.by_b.get(params.m, 0))
        for b in hist.by_b:
            if b:
                tot = sum(c for (bb, _), c in hist.by_bs.items() if bb == b)
                rep.check(tot == hist.by_b[b], "N(b) = sum_s N(b,s)", (params, b), hist.by_b[b], tot)

    p7 = PowerCycleParams(7, 3, 1)
    for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        a = second_moment_exact(p7, p, seed=seed)
        b = second_moment_double_sum(p7, p)
        rep.check(a.ex2 == b, "E[X^2] histogram = double sum", (p7, p), b, a.ex2)
        rep.check(a.ratio >= 1, "ratio >= 1", (p7, p), ">= 1", a.ratio)
        rep.check(a.ratio <= 1 + a.lemma_k_sum, "ratio <= 1 + sum", (p7, p), f"<= {1 + a.lemma_k_sum}", a.ratio)
    one = second_moment_exact(p7, 1, seed=seed)
    rep.check(one.ratio == 1, "ratio at p=1", p7, 1, one.ratio)
    rep.check(one.lemma_k_sum <= 1, "sum at p=1", p7, "<= 1", one.lemma_k_sum)

    p6 = PowerCycleParams(6, 3, 1)
    prev = Fraction(0)
    for i in range(1, 10):
        rpt = exact_containment_probability(p6, Fraction(i, 10))
        rep.check(rpt.pz_bound <= rpt.prob_contains, "Paley-Zygmund", (p6, rpt.p), f"<= {rpt.prob_contains}", rpt.pz_bound)
        rep.check(rpt.prob_contains >= prev, "P(X>0) monotone in p", (p6, rpt.p), f">= {prev}", rpt.prob_contains)
        prev = rpt.prob_contains
    return rep


def search_instances(params: PowerCycleParams, count: int, seed: int, lo: float, hi: float):
    """Seeded random hypergraphs with edge probabilities spread over [lo, hi]."""
    for t in range(count):
        p = lo + (hi - lo) * (t + 0.5) / count
        yield t, p, sample(params.n, params.r, p, seed, t)


# Edge-probability ranges that straddle the containment threshold at these sizes.
SEARCH_BATTERY = (
    (PowerCycleParams(10, 3, 1), 200, 0.15, 0.65),
    (PowerCycleParams(9, 3, 2), 100, 0.55, 0.95),
)


def verify_search(seed: int = 0, timeout: float = 30.0, battery=SEARCH_BATTERY) -> VerifyReport:
    rep = VerifyReport("search")
    for params, count, lo, hi in battery:
        for t, p, H in search_instances(params, count, seed, lo, hi):
            fast = contains_power_cycle(H, params.k, timeout=timeout)
            slow = brute_force_contains(H, params.k)
            rep.check(fast.status != TIMEOUT, "no timeout", (params, t), "decided", fast.status)
            rep.check(fast.status == slow.status, "agrees with brute force", (params, t, round(p, 4)), slow.status, fast.status)
            if fast.found:
                W = build_power_cycle(fast.witness, params)
                rep.check(W.issubgraph(H), "witness verifies", (params, t), True, False)
                extra = H.union(sample(params.n, params.r, 0.3, seed + 1, t))
                rep.check(contains_power_cycle(extra, params.k).found, "monotone under added edges", (params, t), "found", "not found")
            degree_fail = min(H.vertex_degrees()) < power_cycle_max_degree(params.r, params.k)
            if degree_fail:
                rep.check(not fast.found, "degree necessary condition", (params, t), "not_found", fast.status)
    return rep


def verify(suite: str = "all", seed: int = 0) -> VerifyReport:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    t0 = time.perf_counter()
    runners = {
        "facts": lambda: verify_facts(seed),
        "bounds": verify_bounds,
        "moments": lambda: verify_moments(seed),
        "search": lambda: verify_search(seed),
    }
    names = SUITES if suite == "all" else (suite,)
    report = VerifyReport(suite)
    for name in names:
        report.merge(runners[name]())
    report.elapsed = time.perf_counter() - t0
    return report
