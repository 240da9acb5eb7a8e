"""Undirected simple graphs backed by integer bitmasks."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from functools import cached_property


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SimpleGraph:
    """An immutable simple graph.

    Vertex ids are arbitrary ints; internally they are mapped to positions
    ``0..order-1`` (sorted by id) and each adjacency row is a Python int
    bitmask over those positions.
    """

    __slots__ = ("vertices", "_index", "_masks", "__dict__")

    def __init__(self, vertices: Iterable[int], masks: Iterable[int]):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._masks = tuple(masks)
        if len(self._masks) != len(self.vertices) or len(self._index) != len(self.vertices):
            raise ValueError("vertex list and adjacency rows disagree")
        for i, m in enumerate(self._masks):
            if m >> i & 1:
                raise ValueError(f"self-loop at vertex {self.vertices[i]}")
            if m >> len(self.vertices):
                raise ValueError("adjacency row refers to unknown vertex")
            for j in iter_bits(m):
                if not self._masks[j] >> i & 1:
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        masks = [0] * len(verts)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            iu, iv = index[u], index[v]
            masks[iu] |= 1 << iv
            masks[iv] |= 1 << iu
        return cls(verts, masks)

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        full = (1 << n) - 1
        return cls(range(n), [full & ~(1 << i) for i in range(n)])

    @classmethod
    def complete_multipartite(cls, parts: Iterable[Iterable[int]]) -> SimpleGraph:
        parts = [list(p) for p in parts]
        verts = [v for p in parts for v in p]
        edges = [
            (u, v)
            for a in range(len(parts))
            for b in range(a + 1, len(parts))
            for u in parts[a]
            for v in parts[b]
        ]
        return cls.from_edges(verts, edges)

    @classmethod
    def cycle(cls, n: int) -> SimpleGraph:
        return cls.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])

    # -- basic queries -----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def masks(self) -> tuple[int, ...]:
        """Adjacency bitmasks over vertex positions."""
        return self._masks

    def position(self, v: int) -> int:
        return self._index[v]

    def has_edge(self, u: int, v: int) -> bool:
        iu, iv = self._index.get(u), self._index.get(v)
        if iu is None or iv is None:
            return False
        return bool(self._masks[iu] >> iv & 1)

    def neighbors(self, v: int) -> list[int]:
        return [self.vertices[j] for j in iter_bits(self._masks[self._index[v]])]

    def degree(self, v: int) -> int:
        return self._masks[self._index[v]].bit_count()

    @cached_property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._masks) // 2

    def min_degree(self) -> int:
        return min((m.bit_count() for m in self._masks), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        vs = self.vertices
        for i, m in enumerate(self._masks):
            for j in iter_bits(m >> (i + 1)):
                yield vs[i], vs[i + 1 + j]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(u, v), max(u, v)) for u, v in self.edges())

    def induced(self, keep: Iterable[int]) -> SimpleGraph:
        keep = sorted(set(keep))
        pos = [self._index[v] for v in keep]
        masks = []
        for p in pos:
            row = self._masks[p]
            masks.append(sum(1 << j for j, q in enumerate(pos) if row >> q & 1))
        return SimpleGraph(keep, masks)

    # -- structure ---------------------------------------------------------

    def component_masks(self) -> list[int]:
        """Connected components as position bitmasks, ordered by smallest member."""
        seen = 0
        out = []
        masks = self._masks
        for start in range(self.order):
            if seen >> start & 1:
                continue
            comp = frontier = 1 << start
            while frontier:
                nxt = 0
                for j in iter_bits(frontier):
                    nxt |= masks[j]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(comp)
        return out

    def components(self) -> list[list[int]]:
        vs = self.vertices
        return [[vs[j] for j in iter_bits(m)] for m in self.component_masks()]

    def is_connected(self) -> bool:
        return self.order <= 1 or len(self.component_masks()) == 1

    def two_coloring(self) -> dict[int, int] | None:
        """Side (0 or 1) for every vertex, or None when the graph has an odd cycle."""
        side: dict[int, int] = {}
        for comp in self.components():
            root = comp[0]
            side[root] = 0
            stack = [root]
            while stack:
                u = stack.pop()
                for w in self.neighbors(u):
                    if w not in side:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        return None
        return side

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.edge_set()))

    def __repr__(self) -> str:
        return f"SimpleGraph(order={self.order}, edges={self.edge_count})"
