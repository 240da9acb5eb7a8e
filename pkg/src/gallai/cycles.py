"""Exact fixed-length cycle search and the cycle-existence dichotomies built on it."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from math import ceil

from .coloring import ColoredKn, color_class_masks
from .errors import BudgetExceeded, LemmaRefutation, PreconditionError
from .graph import SimpleGraph, iter_bits

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class CycleWitness:
    """A cycle given as its cyclic vertex order; ``color`` is None for plain graphs."""

    color: int | None
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def is_valid_in(self, g: SimpleGraph, length: int | None = None) -> bool:
        vs = self.vertices
        if len(vs) < 3 or len(set(vs)) != len(vs):
            return False
        if length is not None and len(vs) != length:
            return False
        return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def is_valid_in_coloring(self, c: ColoredKn, length: int | None = None) -> bool:
        vs = self.vertices
        if self.color is None or len(vs) < 3 or len(set(vs)) != len(vs):
            return False
        if length is not None and len(vs) != length:
            return False
        if any(not 0 <= v < c.order for v in vs):
            return False
        return all(c.color(vs[i], vs[(i + 1) % len(vs)]) == self.color for i in range(len(vs)))


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0


def _strip_low_degree(masks: Sequence[int], allowed: int) -> int:
    """Repeatedly drop vertices with fewer than two neighbours inside ``allowed``."""
    changed = True
    while changed:
        changed = False
        for v in iter_bits(allowed):
            if (masks[v] & allowed).bit_count() < 2:
                allowed &= ~(1 << v)
                changed = True
    return allowed


def _component_of(masks: Sequence[int], start: int, allowed: int) -> int:
    comp = frontier = 1 << start
    while frontier:
        nxt = 0
        for j in iter_bits(frontier):
            nxt |= masks[j]
        frontier = nxt & allowed & ~comp
        comp |= frontier
    return comp


def find_cycle_positions(masks: Sequence[int], length: int, budget: _Budget) -> list[int] | None:
    """Backtracking search for a cycle on exactly ``length`` positions.

    The cycle is anchored at its smallest position ``s``; only positions
    ``>= s`` inside the 2-core of ``s``'s component are used. A branch is cut
    when the unused part of the graph reachable from the path's end has fewer
    vertices than still needed, or when no neighbour of ``s`` can be reached
    within the remaining number of steps. Each cycle is explored in one
    direction only (last vertex greater than second vertex).
    """
    n = len(masks)
    full = (1 << n) - 1
    for s in range(n - length + 1):
        allowed = _strip_low_degree(masks, full & ~((1 << s) - 1))
        if not allowed >> s & 1:
            continue
        comp = _component_of(masks, s, allowed)
        if comp.bit_count() < length:
            continue
        closing = masks[s] & comp
        path = [s]

        def extend(cur: int, used: int, ends: int) -> bool:
            budget.used += 1
            if budget.used > budget.limit:
                raise BudgetExceeded(budget.limit)
            need = length - len(path)
            if need == 0:
                return bool(ends >> cur & 1)
            free = comp & ~used
            ends &= free
            if not ends:
                return False
            # Reachability bound from the current end through unused vertices.
            reach = 0
            frontier = masks[cur] & free
            steps = 1
            hit = False
            while frontier:
                if not hit and frontier & ends and steps <= need:
                    hit = True
                reach |= frontier
                if hit and reach.bit_count() >= need:
                    break
                nxt = 0
                for j in iter_bits(frontier):
                    nxt |= masks[j]
                frontier = nxt & free & ~reach
                steps += 1
            if not hit or reach.bit_count() < need:
                return False
            cand = masks[cur] & free
            if need == 1:
                cand &= ends
            for nxt_v in iter_bits(cand):
                path.append(nxt_v)
                if extend(nxt_v, used | (1 << nxt_v), ends):
                    return True
                path.pop()
            return False

        budget.used += 1
        for second in iter_bits(closing):
            # The closing vertex must exceed the second vertex.
            ends = closing & ~((1 << (second + 1)) - 1)
            if not ends:
                continue
            path.append(second)
            if extend(second, (1 << s) | (1 << second), ends):
                return path
            path.pop()
    return None


def has_cycle_length(g: SimpleGraph, length: int, budget: int = DEFAULT_BUDGET) -> CycleWitness | None:
    """Exact search for a cycle with exactly ``length`` vertices.

    Returns None only when no such cycle exists; raises ``BudgetExceeded``
    when more than ``budget`` search nodes would be expanded.
    """
    if length < 3:
        raise ValueError("cycles have at least 3 vertices")
    found = find_cycle_positions(g.masks, length, _Budget(budget))
    if found is None:
        return None
    return CycleWitness(None, tuple(g.vertices[i] for i in found))


def find_mono_cycle(
    c: ColoredKn, length: int, color: int | None = None, budget: int = DEFAULT_BUDGET
) -> CycleWitness | None:
    """Cycle of ``length`` vertices inside one color class.

    Without ``color`` every used color is tried, densest first. The budget is
    shared across the colors searched in this call.
    """
    if length < 3:
        raise ValueError("cycles have at least 3 vertices")
    if color is not None:
        if not 1 <= color <= c.color_count:
            raise ValueError(f"color {color} outside 1..{c.color_count}")
        order = [color]
    else:
        counts = {x: int((c.triangle == x).sum()) for x in c.colors_used()}
        order = sorted(counts, key=lambda x: (-counts[x], x))
    shared = _Budget(budget)
    for x in order:
        masks = color_class_masks(c, x)
        found = find_cycle_positions(masks, length, shared)
        if found is not None:
            return CycleWitness(x, tuple(found))
    return None


# -- minimum-degree pancyclicity dichotomy --------------------------------------------


@dataclass(frozen=True)
class PancyclicWitness:
    cycles: dict[int, CycleWitness] = field(default_factory=dict)


@dataclass(frozen=True)
class BalancedBipartiteWitness:
    left: tuple[int, ...]
    right: tuple[int, ...]

    def is_valid_in(self, g: SimpleGraph) -> bool:
        left, right = set(self.left), set(self.right)
        if len(left) != len(right) or left & right or left | right != set(g.vertices):
            return False
        half = len(left)
        return g.edge_count == half * half and all(g.has_edge(u, v) for u in left for v in right)


def _as_balanced_complete_bipartite(g: SimpleGraph) -> BalancedBipartiteWitness | None:
    n = g.order
    if n % 2 or n == 0 or g.edge_count != (n // 2) ** 2:
        return None
    sides = g.two_coloring()
    if sides is None:
        return None
    left = tuple(v for v in g.vertices if sides[v] == 0)
    right = tuple(v for v in g.vertices if sides[v] == 1)
    w = BalancedBipartiteWitness(left, right)
    return w if w.is_valid_in(g) else None


def bondy_certificate(
    g: SimpleGraph, budget: int = DEFAULT_BUDGET
) -> PancyclicWitness | BalancedBipartiteWitness | None:
    """Outcome of the minimum-degree pancyclicity dichotomy, or None if it does not apply.

    Applies when the minimum degree is at least half the order. The
    Hamilton cycle is found first; shorter cycles are cut from the previous
    cycle with a chord when possible and searched from scratch otherwise.
    """
    n = g.order
    if n < 2 or 2 * g.min_degree() < n:
        return None
    bip = _as_balanced_complete_bipartite(g)
    if bip is not None:
        return bip
    if n < 3:
        raise LemmaRefutation("graph meets the degree bound but is neither pancyclic nor balanced bipartite")
    cycles: dict[int, CycleWitness] = {}
    seed = has_cycle_length(g, n, budget)
    if seed is None:
        raise LemmaRefutation("degree condition holds but no Hamilton cycle was found")
    cycles[n] = seed
    for m in range(n - 1, 2, -1):
        found = _cycle_from_chord(g, seed.vertices, m)
        if found is None:
            found = has_cycle_length(g, m, budget)
        if found is None:
            raise LemmaRefutation(f"degree condition holds but no cycle of length {m} exists")
        cycles[m] = found
        seed = found
    return PancyclicWitness(dict(sorted(cycles.items())))


def _cycle_from_chord(g: SimpleGraph, cyc: Sequence[int], m: int) -> CycleWitness | None:
    size = len(cyc)
    for i in range(size):
        j = (i + m - 1) % size
        if g.has_edge(cyc[i], cyc[j]):
            return CycleWitness(None, tuple(cyc[(i + t) % size] for t in range(m)))
    return None


# -- bipartite even cycles and the G0 exception -------------------------------------


@dataclass(frozen=True)
class G0Witness:
    """Assignment of a bipartite graph's vertices to the five parts of G0."""

    b1: tuple[int, ...]
    b2: tuple[int, ...]
    b3: tuple[int, ...]
    a1: tuple[int, ...]
    a2: tuple[int, ...]

    @property
    def iso(self) -> dict[int, str]:
        out = {}
        for name in ("b1", "b2", "b3", "a1", "a2"):
            for v in getattr(self, name):
                out[v] = name.upper()
        return out

    def is_valid_in(self, g: SimpleGraph) -> bool:
        parts = [self.b1, self.b2, self.b3, self.a1, self.a2]
        flat = [v for p in parts for v in p]
        if any(not p for p in parts) or len(set(flat)) != len(flat) or set(flat) != set(g.vertices):
            return False
        if len(self.b3) != 1 or len(self.b1) != len(self.b2):
            return False
        expected = set()
        for a in self.a1:
            expected |= {(min(a, b), max(a, b)) for b in self.b1 + self.b3}
        for a in self.a2:
            expected |= {(min(a, b), max(a, b)) for b in self.b2 + self.b3}
        return g.edge_set() == expected


def recognize_g0(g: SimpleGraph, a_side: Iterable[int], b_side: Iterable[int]) -> G0Witness | None:
    """Match ``g`` against the G0 template with ``a_side = A1 u A2``, ``b_side = B1 u B2 u B3``."""
    a_side = sorted(a_side)
    b_side = sorted(b_side)
    groups: dict[frozenset[int], list[int]] = {}
    for a in a_side:
        groups.setdefault(frozenset(g.neighbors(a)), []).append(a)
    if len(groups) != 2:
        return None
    (n1, g1), (n2, g2) = sorted(groups.items(), key=lambda kv: min(kv[1]))
    shared = n1 & n2
    if len(shared) != 1:
        return None
    w = G0Witness(
        b1=tuple(sorted(n1 - shared)),
        b2=tuple(sorted(n2 - shared)),
        b3=tuple(shared),
        a1=tuple(g1),
        a2=tuple(g2),
    )
    if set(w.b1) | set(w.b2) | set(w.b3) != set(b_side):
        return None
    return w if w.is_valid_in(g) else None


def bipartite_even_cycle(
    g: SimpleGraph,
    a_side: Iterable[int],
    b_side: Iterable[int],
    half_length: int,
    budget: int = DEFAULT_BUDGET,
) -> CycleWitness | G0Witness:
    """Find a cycle of length ``2 * half_length`` or show that ``g`` is G0.

    Hypotheses: ``|A| >= 2``, ``|B| >= 4``, every A-vertex has at least
    ``ceil((|B| + 1) / 2)`` neighbours, ``2 <= half_length <= min(|A|, (|B| - 1) / 2)``
    and every edge joins A to B. ``PreconditionError`` signals misuse;
    ``LemmaRefutation`` means neither outcome was found.
    """
    a_side = list(a_side)
    b_side = list(b_side)
    sa, sb = set(a_side), set(b_side)
    if sa & sb or sa | sb != set(g.vertices):
        raise PreconditionError("A and B must partition the vertex set")
    if len(sa) < 2 or len(sb) < 4:
        raise PreconditionError("need |A| >= 2 and |B| >= 4")
    if any((u in sa) == (v in sa) for u, v in g.edges()):
        raise PreconditionError("every edge must join A to B")
    need = ceil((len(sb) + 1) / 2)
    if min(g.degree(a) for a in sa) < need:
        raise PreconditionError(f"every vertex of A needs degree >= {need}")
    if not (2 <= half_length <= len(sa) and 2 * half_length <= len(sb) - 1):
        raise PreconditionError("need 2 <= l <= min(|A|, (|B| - 1) / 2)")
    found = has_cycle_length(g, 2 * half_length, budget)
    if found is not None:
        return found
    w = recognize_g0(g, a_side, b_side)
    if w is None:
        raise LemmaRefutation(f"no cycle of length {2 * half_length} and the graph is not G0")
    return w


# -- complete multipartite odd cycles ----------------------------------------------------


def multipartite_odd_cycle(parts: Sequence[Sequence[int]], n: int) -> CycleWitness:
    """Cycle on ``2n + 1`` vertices with no two consecutive vertices in the same part.

    Requires at least ``2n + 1`` vertices in total and no part larger than
    ``n``; under these conditions the complete multipartite graph has minimum
    degree at least half its order and is not bipartite, so such a cycle
    exists. It is built directly: list the chosen vertices grouped by part
    (largest part first), then place the first ``n + 1`` on even positions
    and the remaining ``n`` on odd positions.
    """
    parts = [list(p) for p in parts if len(p)]
    total = sum(len(p) for p in parts)
    flat = [v for p in parts for v in p]
    if len(set(flat)) != len(flat):
        raise PreconditionError("parts must be disjoint")
    if n < 1 or total < 2 * n + 1:
        raise PreconditionError(f"need at least {2 * n + 1} vertices")
    if max(len(p) for p in parts) > n:
        raise PreconditionError(f"largest part exceeds {n}")
    ordered = [v for p in sorted(parts, key=len, reverse=True) for v in p][: 2 * n + 1]
    cyc = [0] * (2 * n + 1)
    cyc[0::2] = ordered[: n + 1]
    cyc[1::2] = ordered[n + 1 :]
    w = CycleWitness(None, tuple(cyc))
    if not w.is_valid_in(SimpleGraph.complete_multipartite(parts), 2 * n + 1):
        raise LemmaRefutation("multipartite arrangement failed")
    return w
