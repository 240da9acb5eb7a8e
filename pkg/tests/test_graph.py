import random

from oracles import component_orders
from generators import random_graph
from gallai import SimpleGraph


def test_constructors():
    k4 = SimpleGraph.complete(4)
    assert k4.edge_count == 6 and k4.min_degree() == 3
    c5 = SimpleGraph.cycle(5)
    assert sorted(c5.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    k231 = SimpleGraph.complete_multipartite([[0, 1], [2, 3, 4], [5]])
    assert k231.edge_count == 2 * 3 + 2 * 1 + 3 * 1 and not k231.has_edge(2, 4)


def test_arbitrary_ids_and_induced():
    g = SimpleGraph.from_edges([7, 3, 11], [(3, 7), (11, 7)])
    assert g.vertices == (3, 7, 11)
    assert g.neighbors(7) == [3, 11] and g.degree(3) == 1
    h = g.induced([3, 7])
    assert h.vertices == (3, 7) and h.edge_set() == frozenset({(3, 7)})


def test_equality_ignores_construction_route():
    a = SimpleGraph.from_edges(range(3), [(0, 1), (1, 2)])
    b = SimpleGraph.from_edges(range(3), [(2, 1), (1, 0)])
    assert a == b and hash(a) == hash(b)
    assert a != SimpleGraph.complete(3)


def test_two_coloring():
    assert SimpleGraph.cycle(5).two_coloring() is None
    sides = SimpleGraph.cycle(6).two_coloring()
    assert all(sides[u] != sides[v] for u, v in SimpleGraph.cycle(6).edges())


def test_components_against_dfs():
    rng = random.Random(1)
    for _ in range(200):
        n, edges = random_graph(rng, 10)
        g = SimpleGraph.from_edges(range(n), edges)
        assert sorted(map(len, g.components()), reverse=True) == component_orders(n, edges)
        assert g.is_connected() == (len(component_orders(n, edges)) == 1)
