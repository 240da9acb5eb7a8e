"""Random instance generators shared by the unit and acceptance tests."""

from __future__ import annotations

import random
from math import ceil

from gallai import SimpleGraph, build_g0


def random_graph(rng: random.Random, max_order: int = 8) -> tuple[int, list[tuple[int, int]]]:
    n = rng.randint(1, max_order)
    p = rng.random()
    return n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def relabel(edges, mapping):
    return [(mapping[u], mapping[v]) for u, v in edges]


def bipartite_even_cycle_instance(rng: random.Random):
    """(graph, A, B, half_length) meeting the bipartite_even_cycle preconditions.

    A quarter of the draws are relabelled copies of G0 with ``half_length``
    too long for a cycle inside either half, so the exceptional outcome is
    exercised.
    """
    if rng.random() < 0.25:
        b = rng.randint(2, 5)
        a1 = rng.randint(1, b - 1)
        a2 = rng.randint(1, b - 1)
        lo, hi = max(a1, a2) + 1, min(a1 + a2, b)
        if lo <= hi:
            g0 = build_g0(b, a1, a2)
            ids = list(range(g0.graph.order))
            new = rng.sample(range(100), len(ids))
            mapping = dict(zip(ids, new))
            g = SimpleGraph.from_edges(new, relabel(g0.graph.edges(), mapping))
            a_side = [mapping[v] for v in g0.a_side]
            b_side = [mapping[v] for v in g0.b_side]
            return g, a_side, b_side, rng.randint(lo, hi)
    nb = rng.randint(5, 11)
    na = rng.randint(2, 7)
    need = ceil((nb + 1) / 2)
    a_side = list(range(na))
    b_side = list(range(na, na + nb))
    edges = []
    for a in a_side:
        for bv in rng.sample(b_side, rng.randint(need, nb)):
            edges.append((a, bv))
    half = rng.randint(2, min(na, (nb - 1) // 2))
    return SimpleGraph.from_edges(a_side + b_side, edges), a_side, b_side, half


def dense_graph(rng: random.Random, min_order: int = 2, max_order: int = 12) -> SimpleGraph:
    """Random graph with minimum degree at least half its order; sometimes K_{m,m}."""
    n = rng.randint(min_order, max_order)
    if n % 2 == 0 and rng.random() < 0.15:
        half = n // 2
        return SimpleGraph.complete_multipartite([range(half), range(half, n)])
    p = rng.uniform(0.3, 0.9)
    adj = {v: set() for v in range(n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u].add(v)
                adj[v].add(u)
    need = ceil(n / 2)
    for v in range(n):
        while len(adj[v]) < need:
            w = rng.choice([x for x in range(n) if x != v and x not in adj[v]])
            adj[v].add(w)
            adj[w].add(v)
    return SimpleGraph.from_edges(range(n), [(u, v) for u in adj for v in adj[u] if u < v])
