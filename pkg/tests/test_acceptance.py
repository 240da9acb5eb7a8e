"""One test per acceptance criterion, each with its time limit."""

import random
import time

from conftest import record_criterion
from generators import bipartite_even_cycle_instance, dense_graph, random_graph
from oracles import adjacency, brute_gallai_colorings, brute_has_cycle
from gallai import (
    BalancedBipartiteWitness,
    G0Witness,
    PancyclicWitness,
    SimpleGraph,
    bipartite_even_cycle,
    bondy_certificate,
    build_even_extremal,
    build_odd_extremal,
    certify_no_mono_cycle,
    color_class,
    enumerate_gallai,
    find_mono_cycle,
    find_rainbow_triangle,
    has_cycle_length,
)
from gallai.cycles import CycleWitness
from gallai.verify import check_theorem6, decomposition_problems

GRID = [(n, k) for n in (3, 4, 5) for k in (1, 2, 3, 4, 5)]


def _certified_grid(build, order_of, length_of):
    problems = []
    for n, k in GRID:
        c = build(n, k)
        if c.order != order_of(n, k):
            problems.append(f"({n},{k}) order {c.order}")
        if find_rainbow_triangle(c) is not None:
            problems.append(f"({n},{k}) rainbow triangle")
        certs = certify_no_mono_cycle(c, length_of(n))
        for i, cert in certs.items():
            if cert.variant == "Exhaustive" and c.order > 24:
                problems.append(f"({n},{k}) exhaustive search above 24 vertices")
            if not cert.check(color_class(c, i)):
                problems.append(f"({n},{k}) color {i} certificate invalid")
    return problems


def test_criterion_1_odd_lower_bound_witnesses():
    t = time.perf_counter()
    problems = _certified_grid(build_odd_extremal, lambda n, k: n * 2**k, lambda n: 2 * n + 1)
    dt = time.perf_counter() - t
    ok = not problems and dt < 60
    record_criterion(1, ok, f"odd witnesses n 3..5, k 1..5 certified in {dt:.2f}s (limit 60s) {problems[:3]}")
    assert ok


def test_criterion_2_even_lower_bound_witnesses():
    t = time.perf_counter()
    problems = _certified_grid(build_even_extremal, lambda n, k: (n - 1) * k + n, lambda n: 2 * n)
    dt = time.perf_counter() - t
    ok = not problems and dt < 30
    record_criterion(2, ok, f"even witnesses n 3..5, k 1..5 certified in {dt:.2f}s (limit 30s) {problems[:3]}")
    assert ok


def test_criterion_3_two_color_c7_witness_exhaustive():
    t = time.perf_counter()
    c = build_odd_extremal(3, 2)
    found = find_mono_cycle(c, 7, budget=10**8)
    dt = time.perf_counter() - t
    ok = c.order == 12 and c.color_count == 2 and found is None and dt < 120
    record_criterion(3, ok, f"K12 2-coloring has no monochromatic C7 by exhaustive search, {dt:.3f}s (limit 120s)")
    assert ok


def test_criterion_4_even_cycle_threshold():
    t = time.perf_counter()
    reports = [check_theorem6(n, 10_000, seed=2024 + n, max_order=40, max_colors=5) for n in (3, 4)]
    dt = time.perf_counter() - t
    failures = sum(len(r.failures) for r in reports)
    budget = sum(r.budget_events for r in reports)
    qualified = [r.details["qualified"] for r in reports]
    ok = failures == 0 and budget == 0 and all(q > 0 for q in qualified) and dt < 900
    record_criterion(
        4, ok, f"even-cycle threshold check, 10000 samples per n in {{3,4}}, qualified {qualified}, failures {failures}, {dt:.1f}s (limit 900s)"
    )
    assert ok


def test_criterion_5_decomposition_roundtrip():
    from gallai import random_gallai

    t = time.perf_counter()
    rng = random.Random(55)
    bad = []
    for _ in range(1000):
        c = random_gallai(rng.randint(1, 40), rng.randint(1, 5), rng.getrandbits(63))
        problems = decomposition_problems(c)
        if problems:
            bad.append(problems)
    dt = time.perf_counter() - t
    ok = not bad and dt < 120
    record_criterion(5, ok, f"1000 random_gallai round trips and connected refinements, {len(bad)} bad, {dt:.2f}s (limit 120s)")
    assert ok


def test_criterion_6_cycle_search_oracle_equivalence():
    t = time.perf_counter()
    rng = random.Random(66)
    corpus = [random_graph(rng, 8) for _ in range(5000)]
    seen = set()
    for c in enumerate_gallai(5, 3):
        for i in range(1, 4):
            edges = tuple((u, v) for u, v, x in c.edges() if x == i)
            if edges not in seen:
                seen.add(edges)
                corpus.append((5, list(edges)))
    mismatches = 0
    for n, edges in corpus:
        g = SimpleGraph.from_edges(range(n), edges)
        a = adjacency(n, edges)
        for length in range(3, 9):
            w = has_cycle_length(g, length)
            if (w is not None) != brute_has_cycle(a, length) or (w is not None and not w.is_valid_in(g, length)):
                mismatches += 1
    dt = time.perf_counter() - t
    ok = mismatches == 0 and dt < 300
    record_criterion(
        6, ok, f"{len(corpus)} graphs x lengths 3..8 agree with permutation oracle, {mismatches} mismatches, {dt:.1f}s (limit 300s)"
    )
    assert ok


def test_criterion_7_cycle_dichotomies():
    t = time.perf_counter()
    rng = random.Random(77)
    bad = 0
    g0_count = 0
    for _ in range(1000):
        g, a_side, b_side, half = bipartite_even_cycle_instance(rng)
        w = bipartite_even_cycle(g, a_side, b_side, half)
        if isinstance(w, G0Witness):
            g0_count += 1
            bad += not w.is_valid_in(g)
        else:
            bad += not (isinstance(w, CycleWitness) and w.is_valid_in(g, 2 * half))
    bip_count = 0
    for _ in range(1000):
        g = dense_graph(rng)
        w = bondy_certificate(g)
        if isinstance(w, BalancedBipartiteWitness):
            bip_count += 1
            bad += not w.is_valid_in(g)
        elif isinstance(w, PancyclicWitness):
            bad += sorted(w.cycles) != list(range(3, g.order + 1))
            bad += not all(cyc.is_valid_in(g, m) for m, cyc in w.cycles.items())
        else:
            bad += 1
    dt = time.perf_counter() - t
    ok = bad == 0 and g0_count > 0 and bip_count > 0 and dt < 300
    record_criterion(
        7, ok, f"1000 bipartite even-cycle instances ({g0_count} G0) + 1000 min-degree instances ({bip_count} K_m,m), {bad} bad, {dt:.1f}s (limit 300s)"
    )
    assert ok


def test_criterion_8_enumeration_counts():
    t = time.perf_counter()
    raw33 = sum(1 for _ in enumerate_gallai(3, 3))
    mismatched = []
    for n in range(1, 6):
        for k in range(1, 4):
            got = [tuple(int(x) for x in c.triangle) for c in enumerate_gallai(n, k)]
            if len(got) != len(set(got)) or set(got) != brute_gallai_colorings(n, k):
                mismatched.append((n, k))
    dt = time.perf_counter() - t
    ok = raw33 == 21 and not mismatched and dt < 120
    record_criterion(8, ok, f"enumerate_gallai(3,3) = {raw33}, brute-force mismatches {mismatched}, {dt:.2f}s (limit 120s)")
    assert ok
