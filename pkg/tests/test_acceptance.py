"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Tolerances and runtime budgets are pinned below. Lines are collected in the
terminal summary under "acceptance criteria".
"""

import math
import random
import time
from fractions import Fraction
from itertools import combinations
from math import comb, e, factorial

import pytest

from powercycles import bounds
from powercycles.cycles import (
    CyclicPermutation,
    PowerCycleParams,
    build_power_cycle,
    enumerate_qn,
)
from powercycles.enumeration import (
    connected_subgraphs_from,
    extension_counts,
    overlap_histogram,
    subgraph_profiles,
)
from powercycles.hypergraph import EdgeSubset, components
from powercycles.lab import ScanConfig, run_scan
from powercycles.moments import (
    exact_containment_probability,
    second_moment_double_sum,
    second_moment_exact,
)
from powercycles.search import TIMEOUT, brute_force_contains, contains_power_cycle
from powercycles.verify import search_instances

REL_TOL_12 = 1e-12
Z_BAND = 3.0


def record(log, tag, title, ok, detail, elapsed=None, budget=None):
    within = budget is None or elapsed <= budget
    timing = "" if elapsed is None else f" [{elapsed:.2f}s / {budget:g}s]"
    line = f"{'PASS' if ok and within else 'FAIL'} {tag:>3}  {title}: {detail}{timing}"
    log.append(line)
    print(line)
    return ok and within


def random_order(n, seed):
    order = list(range(n))
    random.Random(seed).shuffle(order)
    return CyclicPermutation(order)


def test_c01_structural_identities(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    for r in (2, 3, 4):
        for k in (1, 2, 3):
            n = 2 * (k + r - 1) + 2
            B = comb(k + r - 2, r - 1)
            params = PowerCycleParams(n, r, k)
            for sigma in (CyclicPermutation.identity(n), random_order(n, r * 10 + k)):
                H = build_power_cycle(sigma, params)
                if H.num_edges != B * n or set(H.vertex_degrees()) != {r * B}:
                    bad.append((r, k, sigma.order))
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "1", "edge count B*n and vertex degree r*B", not bad, f"9 (r,k) pairs, {len(bad)} mismatches (exact)", el, 1.0)
    assert ok, bad


def test_c02_qn_cardinality(acceptance_log):
    t0 = time.perf_counter()
    got = {n: sum(1 for _ in enumerate_qn(n)) for n in range(3, 10)}
    want = {n: factorial(n - 1) // 2 for n in got}
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "2", "|Q_n| = (n-1)!/2 for n <= 9", got == want, f"counts {list(got.values())} (exact)", el, 5.0)
    assert ok


def test_c03_support_lower_bound(acceptance_log):
    t0 = time.perf_counter()
    bad, cases = [], 0
    for params, b_max in ((PowerCycleParams(8, 3, 1), 4), (PowerCycleParams(9, 3, 2), 3)):
        for prof in subgraph_profiles(params, b_max):
            cases += prof.count
            lo = bounds.fact4_min_vertices(prof.b, prof.s, params.r, params.k)
            if prof.v_min < lo:
                bad.append((params, prof))
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "3", "|V(P)| >= b/B + (r-1)s, exhaustive", not bad, f"{cases} subgraphs, {len(bad)} violations (exact)", el, 60.0)
    assert ok, bad


def test_c04_count_domination(acceptance_log):
    t0 = time.perf_counter()
    bad, cases = [], 0
    for params in (PowerCycleParams(7, 3, 1), PowerCycleParams(8, 3, 1)):
        n, r, k = params.n, params.r, params.k
        H = build_power_cycle(CyclicPermutation.identity(n), params)
        for b in (1, 2, 3):
            bound = bounds.lemma_l1_bound(b, r, k)
            for v in range(n):
                cases += 1
                got = connected_subgraphs_from(H, v, b)
                if not bound.dominates(got):
                    bad.append(("connected", params, v, b, got))
        for prof in subgraph_profiles(params, 3):
            cases += 1
            if not bounds.prop_p1_bound(n, prof.b, prof.s, r, k).dominates(prof.count):
                bad.append(("by (b,s)", params, prof))
        inter = extension_counts(params)
        for b in (1, 2, 3):
            for idx in combinations(range(H.num_edges), b):
                P = EdgeSubset.from_indices(H, idx)
                need = P.global_mask()
                got = sum(c for m, c in inter.items() if m & need == need)
                cases += 1
                if not bounds.prop_p2_bound(n, P.num_vertices(), len(components(P)), r, k).dominates(got):
                    bad.append(("extensions", params, idx, got))
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "4", "exact counts under connected/(b,s)/extension bounds", not bad, f"{cases} comparisons, {len(bad)} violations (exact)", el, 120.0)
    assert ok, bad[:5]


def test_c05_histogram_mass_and_symmetry(acceptance_log):
    t0 = time.perf_counter()
    details, ok_all = [], True
    for n in (7, 8):
        params = PowerCycleParams(n, 3, 1)
        ident = overlap_histogram(None, params)
        other = overlap_histogram(random_order(n, 2024 + n), params)
        good = ident.total == factorial(n - 1) // 2 and ident == other
        ok_all &= good
        details.append(f"n={n} mass {ident.total}")
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "5", "sum_b N(b) = |Q_n|, identity vs random sigma identical", ok_all, ", ".join(details) + " (exact)", el, 60.0)
    assert ok


def test_c06_second_moment_identity(acceptance_log):
    t0 = time.perf_counter()
    params = PowerCycleParams(7, 3, 1)
    results = []
    for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        results.append(second_moment_exact(params, p).ex2 == second_moment_double_sum(params, p))
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "6", "histogram E[X^2] = 360^2-pair double sum at (3,1,7)", all(results), f"p = 1/4, 1/2, 3/4 -> {results} (rational equality)", el, 60.0)
    assert ok


def test_c07_paley_zygmund_exact(acceptance_log):
    t0 = time.perf_counter()
    params = PowerCycleParams(6, 3, 1)
    probs, pz_ok = [], True
    for i in range(1, 10):
        rep = exact_containment_probability(params, Fraction(i, 10))
        pz_ok &= rep.pz_bound <= rep.prob_contains
        probs.append(rep.prob_contains)
    mono = all(a <= b for a, b in zip(probs, probs[1:]))
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "7", "P(X>0) >= E[X]^2/E[X^2] and nondecreasing on (3,1,6)", pz_ok and mono, f"p = 0.1..0.9, PZ {pz_ok}, monotone {mono} (rational)", el, 120.0)
    assert ok


def test_c08_search_agreement(acceptance_log):
    t0 = time.perf_counter()
    battery = ((PowerCycleParams(10, 3, 1), 200, 0.15, 0.65), (PowerCycleParams(9, 3, 2), 100, 0.55, 0.95))
    disagree = timeouts = total = found = 0
    for params, count, lo, hi in battery:
        for _, _, H in search_instances(params, count, 0, lo, hi):
            total += 1
            fast = contains_power_cycle(H, params.k, timeout=30.0)
            slow = brute_force_contains(H, params.k)
            timeouts += fast.status == TIMEOUT
            disagree += fast.status != slow.status
            if fast.found:
                found += 1
                assert build_power_cycle(fast.witness, params).issubgraph(H)
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "8", "search vs brute force at (10,3,1) x200, (9,3,2) x100", disagree == 0 and timeouts == 0, f"{total} instances ({found} found), {disagree} disagreements, {timeouts} timeouts at 30 s", el, 300.0)
    assert ok



def exact_half():
    return exact_containment_probability(PowerCycleParams(6, 3, 1), Fraction(1, 2)).prob_contains


def test_c09_scan_calibration(acceptance_log):
    t0 = time.perf_counter()
    params = PowerCycleParams(6, 3, 1)
    exact = float(exact_half())
    # p = C n^(-1/B) = 3/6
    (pt,) = run_scan(ScanConfig(params, (3.0,), 10_000, seed=12345, workers=1))
    z = abs(pt.p_hat - exact) / pt.stderr
    grid = tuple(0.5 * i for i in range(1, 13))
    coupled = run_scan(ScanConfig(params, grid, 2000, seed=777, workers=1))
    succ = [q.successes for q in coupled]
    mono = all(a <= b for a, b in zip(succ, succ[1:]))
    el = time.perf_counter() - t0
    ok = record(
        acceptance_log,
        "9",
        "10k-trial estimate within 3 stderr of exact; coupled scan monotone",
        pt.p == 0.5 and z <= Z_BAND and mono,
        f"p_hat {pt.p_hat:.4f} vs exact {exact:.5f}, |z| = {z:.2f}; successes over C grid {succ}",
        el,
        60.0,
    )
    assert ok


def test_c09b_repeated_calibration(acceptance_log):
    t0 = time.perf_counter()
    params = PowerCycleParams(6, 3, 1)
    exact = float(exact_half())
    reps, trials = 100, 1000
    inside = 0
    for seed in range(reps):
        (pt,) = run_scan(ScanConfig(params, (3.0,), trials, seed=seed, workers=1))
        inside += abs(pt.p_hat - exact) <= Z_BAND * pt.stderr
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "9b", "repeated scans within 3 stderr of exact", inside >= 99, f"{inside}/{reps} scans of {trials} trials (need >= 99)", el, 120.0)
    assert ok


def test_c10_constants(acceptance_log):
    t0 = time.perf_counter()
    c31 = float(bounds.paper_constant_C(3, 1))
    c32 = float(bounds.paper_constant_C(3, 2))
    # 4 e r^2 B ((2k+2r-3) e)^(1/B) with r=3, k=2, B=3
    want32 = 4 * e * 9 * 3 * (7 * e) ** (1 / 3)
    a = 5 * e * e
    checks = {
        "C(3,1)=180e^2": math.isclose(c31, 180 * e * e, rel_tol=REL_TOL_12),
        "C(3,2)=108e(7e)^(1/3)": math.isclose(c32, want32, rel_tol=REL_TOL_12),
        "exponent(3,2)=-1/3": bounds.threshold_exponent(3, 2) == Fraction(-1, 3),
        "ln C'(3,1)=5e^2 ln(5e^2)": math.isclose(bounds.constant_Cprime(3, 1).ln, a * math.log(a), rel_tol=REL_TOL_12),
    }
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "10", "constants from their closed forms", all(checks.values()), f"{checks} (rel tol 1e-12)", el, 1.0)
    assert ok


@pytest.mark.xfail(strict=True, reason="the stated value 36e(7e)^(1/3) drops the factor B = binom(3,2) = 3 from 4 e r^2 B")
def test_c10b_constant_3_2_literal_value(acceptance_log):
    c32 = float(bounds.paper_constant_C(3, 2))
    literal = 36 * e * (7 * e) ** (1 / 3)
    ok = math.isclose(c32, literal, rel_tol=REL_TOL_12)
    record(acceptance_log, "10b", "C(3,2) equals the literal value 36e(7e)^(1/3) ~ 261.18", ok, f"got {c32:.6f}, ratio {c32 / literal:.12g} (expected failure: closed form gives 108e(7e)^(1/3))")
    assert ok


def test_c11_standard_estimates(acceptance_log):
    t0 = time.perf_counter()
    rep = bounds.verify_standard_estimates(1000)
    el = time.perf_counter() - t0
    ok = record(acceptance_log, "11", "factorial/binomial estimates up to n = 1000", rep.ok, f"{rep.checks} checks, {len(rep.violations)} violations", el, 5.0)
    assert ok
