"""Extremal Gallai colorings, the G0 gadget, and absence certificates for cycles."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from .coloring import ColoredKn, color_class
from .cycles import DEFAULT_BUDGET, CycleWitness, _Budget, find_cycle_positions
from .errors import CycleFound, PreconditionError
from .graph import SimpleGraph


def build_odd_extremal(n: int, k: int) -> ColoredKn:
    """Gallai k-coloring of K_{n 2^k} with no monochromatic cycle on 2n+1 vertices.

    Level 1 is a K_{2n} in color 1; level i+1 joins two copies of level i
    completely in color i+1 (first copy on the low vertex ids).
    """
    if n < 2 or k < 1:
        raise PreconditionError("need n >= 2 and k >= 1")
    m = np.full((2 * n, 2 * n), 1, dtype=np.int16)
    for level in range(2, k + 1):
        size = m.shape[0]
        joined = np.full((2 * size, 2 * size), level, dtype=np.int16)
        joined[:size, :size] = m
        joined[size:, size:] = m
        m = joined
    np.fill_diagonal(m, 0)
    return ColoredKn.from_matrix(m, k)


def build_even_extremal(n: int, k: int) -> ColoredKn:
    """Gallai k-coloring of K_{(n-1)k+n} with no monochromatic cycle on 2n vertices.

    Starts from K_{2n-1} in color 1; for each color i = 2..k appends n-1 new
    vertices joined in color i to everything present and to each other.
    """
    if n < 3 or k < 1:
        raise PreconditionError("need n >= 3 and k >= 1")
    size = (n - 1) * k + n
    m = np.ones((size, size), dtype=np.int16)
    for i in range(2, k + 1):
        lo = 2 * n - 1 + (i - 2) * (n - 1)
        m[lo:, :] = i
        m[:, lo:] = i
    # Later batches overwrite rows and columns of earlier ones, so each pair
    # carries the color of its newer endpoint.
    np.fill_diagonal(m, 0)
    return ColoredKn.from_matrix(m, k)


def extremal_order(family: str, n: int, k: int) -> int:
    if family == "odd":
        return n * 2**k
    if family == "even":
        return (n - 1) * k + n
    raise ValueError(f"unknown family {family!r}")


def build_extremal(family: str, n: int, k: int) -> ColoredKn:
    if family == "odd":
        return build_odd_extremal(n, k)
    if family == "even":
        return build_even_extremal(n, k)
    raise ValueError(f"unknown family {family!r}")


class G0Graph(NamedTuple):
    graph: SimpleGraph
    a_side: tuple[int, ...]
    b_side: tuple[int, ...]
    parts: dict[str, tuple[int, ...]]


def build_g0(b: int, a1: int, a2: int) -> G0Graph:
    """The gadget G0: B1, B2 of size ``b``, a single B3, A1 of size ``a1``, A2 of size ``a2``.

    Vertex ids run B1, B2, B3, A1, A2 in that order. A1 is complete to
    B1 and B3, A2 is complete to B2 and B3, and there are no other edges.
    """
    if b < 1 or a1 < 1 or a2 < 1:
        raise PreconditionError("all G0 parts must be nonempty")
    ids = iter(range(2 * b + 1 + a1 + a2))
    parts = {
        "B1": tuple(next(ids) for _ in range(b)),
        "B2": tuple(next(ids) for _ in range(b)),
        "B3": (next(ids),),
        "A1": tuple(next(ids) for _ in range(a1)),
        "A2": tuple(next(ids) for _ in range(a2)),
    }
    edges = [(x, y) for x in parts["A1"] for y in parts["B1"] + parts["B3"]]
    edges += [(x, y) for x in parts["A2"] for y in parts["B2"] + parts["B3"]]
    verts = [v for p in parts.values() for v in p]
    return G0Graph(
        SimpleGraph.from_edges(verts, edges),
        parts["A1"] + parts["A2"],
        parts["B1"] + parts["B2"] + parts["B3"],
        parts,
    )


# -- absence certificates --------------------------------------------------------------

COMPONENT_BOUND = "ComponentBound"
BIPARTITE = "Bipartite"
COVER = "Cover"
EXHAUSTIVE = "Exhaustive"


def _transcript_hash(g: SimpleGraph, length: int, nodes: int) -> str:
    h = hashlib.sha256()
    h.update(f"{length}|{nodes}|".encode())
    h.update(",".join(f"{u}-{v}" for u, v in sorted(g.edges())).encode())
    return h.hexdigest()


@dataclass(frozen=True)
class AbsenceCertificate:
    """Checkable evidence that a color class has no cycle on ``length`` vertices.

    Payloads by variant: ComponentBound ``{"orders": [...]}``, Bipartite
    ``{"left": [...], "right": [...]}`` over non-isolated vertices, Cover
    ``{"cover": [...]}`` and Exhaustive ``{"transcript": sha256, "nodes": int}``.
    """

    variant: str
    length: int
    payload: dict[str, Any]

    def check(self, g: SimpleGraph, budget: int = DEFAULT_BUDGET) -> bool:
        """Re-validate against ``g`` independently of how the certificate was found."""
        if self.variant == COMPONENT_BOUND:
            return _component_orders_union_find(g) == sorted(self.payload["orders"], reverse=True) and all(
                o < self.length for o in self.payload["orders"]
            )
        if self.variant == BIPARTITE:
            if self.length % 2 == 0:
                return False
            left, right = set(self.payload["left"]), set(self.payload["right"])
            touched = {v for e in g.edges() for v in e}
            if left & right or left | right != touched:
                return False
            return all((u in left) != (v in left) for u, v in g.edges())
        if self.variant == COVER:
            cover = set(self.payload["cover"])
            return 2 * len(cover) < self.length and all(u in cover or v in cover for u, v in g.edges())
        if self.variant == EXHAUSTIVE:
            budget_state = _Budget(budget)
            if find_cycle_positions(g.masks, self.length, budget_state) is not None:
                return False
            return self.payload["transcript"] == _transcript_hash(g, self.length, budget_state.used)
        return False

    def to_json(self) -> dict[str, Any]:
        return {"variant": self.variant, "payload": self.payload, "valid": True}


def _component_orders_union_find(g: SimpleGraph) -> list[int]:
    parent = {v: v for v in g.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        parent[find(u)] = find(v)
    sizes: dict[int, int] = {}
    for v in g.vertices:
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return sorted(sizes.values(), reverse=True)


def _greedy_cover(g: SimpleGraph, limit: int) -> list[int] | None:
    """Highest-degree-first vertex cover, abandoned once it grows beyond ``limit``."""
    masks = list(g.masks)
    cover: list[int] = []
    while any(masks):
        if len(cover) == limit:
            return None
        best = max(range(len(masks)), key=lambda i: (masks[i].bit_count(), -i))
        cover.append(g.vertices[best])
        row = masks[best]
        masks[best] = 0
        bit = ~(1 << best)
        for j in range(len(masks)):
            if row >> j & 1:
                masks[j] &= bit
    return sorted(cover)


def certify_class(g: SimpleGraph, length: int, color: int | None = None, budget: int = DEFAULT_BUDGET) -> AbsenceCertificate:
    """Cheapest certificate that ``g`` has no cycle on ``length`` vertices.

    Tries component bound, bipartition (odd lengths), a small vertex cover,
    then exhaustive search; raises ``CycleFound`` if the search finds one.
    """
    if length < 3:
        raise ValueError("cycles have at least 3 vertices")
    orders = [len(comp) for comp in g.components()]
    if max(orders, default=0) < length:
        return AbsenceCertificate(COMPONENT_BOUND, length, {"orders": sorted(orders, reverse=True)})
    if length % 2:
        sides = g.two_coloring()
        if sides is not None:
            touched = sorted({v for e in g.edges() for v in e})
            return AbsenceCertificate(
                BIPARTITE,
                length,
                {"left": [v for v in touched if sides[v] == 0], "right": [v for v in touched if sides[v] == 1]},
            )
    cover = _greedy_cover(g, (length - 1) // 2)
    if cover is not None:
        return AbsenceCertificate(COVER, length, {"cover": cover})
    state = _Budget(budget)
    found = find_cycle_positions(g.masks, length, state)
    if found is not None:
        raise CycleFound(CycleWitness(color, tuple(g.vertices[i] for i in found)))
    return AbsenceCertificate(
        EXHAUSTIVE, length, {"transcript": _transcript_hash(g, length, state.used), "nodes": state.used}
    )


def certify_no_mono_cycle(c: ColoredKn, length: int, budget: int = DEFAULT_BUDGET) -> dict[int, AbsenceCertificate]:
    """One absence certificate per color ``1..k`` for cycles on ``length`` vertices."""
    return {i: certify_class(color_class(c, i), length, i, budget) for i in range(1, c.color_count + 1)}


def certificates_to_json(certs: dict[int, AbsenceCertificate], length: int) -> dict[str, Any]:
    return {"length": length, "colors": {str(i): cert.to_json() for i, cert in sorted(certs.items())}}
