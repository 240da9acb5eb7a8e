"""Gallai partitions, reduced graphs, and substitution.

The canonical partition returned by :func:`gallai_partition` is the set of
maximal strong color modules: the children of the root of the modular
decomposition of the coloring viewed as a symmetric 2-structure. A color
module is a vertex set ``S`` such that every vertex outside ``S`` sees all
of ``S`` in a single color.
"""

from __future__ import annotations

import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Union

import numpy as np

from .coloring import ColoredKn, bool_rows_to_masks, find_rainbow_triangle
from .errors import CapExceeded, GallaiError, RainbowTriangleError
from .graph import SimpleGraph, iter_bits

DEFAULT_MAX_ORDER = 7
DEFAULT_MAX_COLORS = 3

ReducedColoring = ColoredKn


@dataclass(frozen=True, eq=True)
class GallaiPartition:
    """Blocks ``V_1..V_p`` sorted by (size, smallest vertex) plus between-block colors."""

    blocks: tuple[tuple[int, ...], ...]
    between: dict[tuple[int, int], int]
    color_count: int

    @property
    def p(self) -> int:
        return len(self.blocks)

    def between_color(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("a block has no between-color with itself")
        return self.between[(min(i, j), max(i, j))]

    def between_colors(self) -> set[int]:
        return set(self.between.values())

    def validate(self, c: ColoredKn) -> None:
        """Raise ``GallaiError`` unless every partition invariant holds against ``c``."""
        if self.p < 2:
            raise GallaiError("a Gallai partition needs at least two blocks")
        flat = sorted(v for b in self.blocks for v in b)
        if flat != list(range(c.order)) or any(not b for b in self.blocks):
            raise GallaiError("blocks must be nonempty and partition the vertex set")
        keys = [(len(b), min(b)) for b in self.blocks]
        if keys != sorted(keys):
            raise GallaiError("blocks are not sorted by size")
        m = c.matrix
        for i in range(self.p):
            for j in range(i + 1, self.p):
                sub = m[np.ix_(self.blocks[i], self.blocks[j])]
                col = self.between[(i, j)]
                if not (sub == col).all():
                    raise GallaiError(f"blocks {i} and {j} are not joined in a single color {col}")
        if len(self.between_colors()) > 2:
            raise GallaiError(f"more than two between-block colors: {sorted(self.between_colors())}")


def _require_gallai(c: ColoredKn) -> None:
    w = find_rainbow_triangle(c)
    if w is not None:
        raise RainbowTriangleError(w)


def _make_partition(c: ColoredKn, blocks: Sequence[Sequence[int]]) -> GallaiPartition:
    ordered = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: (len(b), b[0]))
    between = {
        (i, j): c.color(ordered[i][0], ordered[j][0])
        for i in range(len(ordered))
        for j in range(i + 1, len(ordered))
    }
    part = GallaiPartition(tuple(ordered), between, c.color_count)
    part.validate(c)
    return part


def _module_closure(m: np.ndarray, members: np.ndarray, stop: np.ndarray | None = None) -> np.ndarray:
    """Smallest color module containing the boolean vertex mask ``members``.

    Outside vertices that see two members in different colors are absorbed
    until none remain. Returns early (with the partial set) once any vertex in
    ``stop`` is absorbed.
    """
    inside = members.copy()
    while True:
        cols = m[:, inside]
        split = (cols.max(axis=1) != cols.min(axis=1)) & ~inside
        if not split.any():
            return inside
        inside |= split
        if stop is not None and (inside & stop).any():
            return inside


def _root_blocks(c: ColoredKn) -> list[list[int]]:
    n = c.order
    m = c.matrix
    off_diag = ~np.eye(n, dtype=bool)
    for col in sorted(c.colors_used()):
        # Degenerate root: the non-`col` graph falls apart into co-components.
        g = SimpleGraph(range(n), bool_rows_to_masks((m != col) & off_diag))
        comps = g.component_masks()
        if len(comps) >= 2:
            return [list(iter_bits(x)) for x in comps]
    # Prime root: maximal proper modules are pairwise disjoint.
    block_of = np.full(n, -1)
    blocks: list[list[int]] = []
    for u in range(n):
        if block_of[u] >= 0:
            continue
        block = np.zeros(n, dtype=bool)
        block[u] = True
        assigned = block_of >= 0
        for v in range(n):
            if block[v] or assigned[v]:
                continue
            seed = block.copy()
            seed[v] = True
            mod = _module_closure(m, seed, stop=assigned)
            if not (mod & assigned).any() and not mod.all():
                block = mod
        members = np.flatnonzero(block).tolist()
        block_of[members] = len(blocks)
        blocks.append(members)
    return blocks


def _partition_unchecked(c: ColoredKn) -> GallaiPartition:
    if c.order < 2:
        raise ValueError("a Gallai partition needs at least two vertices")
    return _make_partition(c, _root_blocks(c))


def gallai_partition(c: ColoredKn) -> GallaiPartition:
    """Canonical (coarsest) Gallai partition of a Gallai coloring with at least two vertices."""
    _require_gallai(c)
    return _partition_unchecked(c)


def _reduced_class_components(part: GallaiPartition, col: int) -> list[list[int]]:
    masks = [0] * part.p
    for (i, j), x in part.between.items():
        if x == col:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
    return SimpleGraph(range(part.p), masks).components()


def spans_connected(part: GallaiPartition) -> bool:
    """True when each between-color's edges form a connected spanning subgraph of the reduced graph."""
    return all(len(_reduced_class_components(part, col)) == 1 for col in part.between_colors())


def refine_connected(c: ColoredKn, part: GallaiPartition) -> GallaiPartition:
    """Coarsen ``part`` until every between-color spans a connected reduced subgraph.

    If color ``x`` is disconnected on the reduced graph, every edge between two
    of its components has the other color, so merging the blocks inside each
    ``x``-component leaves a partition joined in that other color only.
    """
    while not spans_connected(part):
        for col in sorted(part.between_colors()):
            comps = _reduced_class_components(part, col)
            if len(comps) > 1:
                merged = [[v for i in comp for v in part.blocks[i]] for comp in comps]
                part = _make_partition(c, merged)
                break
    return part


def reduced_graph(part: GallaiPartition) -> ReducedColoring:
    """Order-``p`` coloring whose edge {i, j} carries the color between blocks i and j."""
    return ColoredKn.from_function(part.p, part.color_count, part.between_color)


def compose(base: ReducedColoring, parts: Sequence[ColoredKn]) -> ColoredKn:
    """Substitute ``parts[i]`` for vertex i of ``base``.

    Vertices of part 0 come first, then part 1, and so on. The result uses
    the largest color count among the inputs.
    """
    if len(parts) != base.order:
        raise ValueError(f"base has order {base.order} but {len(parts)} parts were given")
    sizes = [p.order for p in parts]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    m = np.zeros((total, total), dtype=np.int16)
    for i, part in enumerate(parts):
        m[offsets[i] : offsets[i + 1], offsets[i] : offsets[i + 1]] = part.matrix
        for j in range(i + 1, len(parts)):
            col = base.color(i, j)
            m[offsets[i] : offsets[i + 1], offsets[j] : offsets[j + 1]] = col
            m[offsets[j] : offsets[j + 1], offsets[i] : offsets[i + 1]] = col
    k = max([base.color_count] + [p.color_count for p in parts])
    return ColoredKn.from_matrix(m, k)


# -- Gallai trees ---------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    vertex: int

    def leaves(self) -> list[int]:
        return [self.vertex]

    @property
    def depth(self) -> int:
        return 0

    def to_text(self) -> str:
        return str(self.vertex)


@dataclass(frozen=True)
class Node:
    reduced: ReducedColoring
    children: tuple[GallaiTree, ...]

    def leaves(self) -> list[int]:
        return [v for ch in self.children for v in ch.leaves()]

    @property
    def depth(self) -> int:
        return 1 + max(ch.depth for ch in self.children)

    def to_text(self) -> str:
        p = self.reduced.order
        rows = "/".join(
            " ".join(str(self.reduced.color(i, j)) for j in range(i + 1, p)) for i in range(p - 1)
        )
        return f"({rows} | " + ", ".join(ch.to_text() for ch in self.children) + ")"


GallaiTree = Union[Leaf, Node]


def parse_tree(text: str, color_count: int | None = None) -> GallaiTree:
    """Inverse of ``to_text``. ``color_count`` defaults to the largest color seen."""
    pos = 0
    found: list[ColoredKn] = []

    def skip() -> None:
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse() -> GallaiTree:
        nonlocal pos
        skip()
        if text.startswith("(", pos):
            bar = text.index("|", pos)
            rows = [r.split() for r in text[pos + 1 : bar].split("/")]
            pos = bar + 1
            children = [parse()]
            skip()
            while text.startswith(",", pos):
                pos += 1
                children.append(parse())
                skip()
            if not text.startswith(")", pos):
                raise ValueError(f"expected ')' at offset {pos}")
            pos += 1
            p = len(children)
            colors = [int(x) for r in rows for x in r]
            if len(rows) != p - 1 or len(colors) != p * (p - 1) // 2:
                raise ValueError("color matrix does not match the number of children")
            node = Node(ColoredKn(p, max(colors), colors), tuple(children))
            found.append(node.reduced)
            return node
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"expected a vertex id at offset {pos}")
        return Leaf(int(text[start:pos]))

    tree = parse()
    skip()
    if pos != len(text):
        raise ValueError(f"trailing text at offset {pos}")
    k = color_count or max((r.color_count for r in found), default=1)

    def recount(t: GallaiTree) -> GallaiTree:
        if isinstance(t, Leaf):
            return t
        return Node(t.reduced.with_color_count(k), tuple(recount(ch) for ch in t.children))

    return recount(tree)


def tree_to_coloring(tree: GallaiTree, color_count: int) -> ColoredKn:
    """Rebuild the coloring on the tree's leaf ids (which must be ``0..N-1``)."""
    leaves = tree.leaves()
    n = len(leaves)
    if sorted(leaves) != list(range(n)):
        raise ValueError("tree leaves must be exactly 0..N-1")
    m = np.zeros((n, n), dtype=np.int16)

    def fill(t: GallaiTree) -> list[int]:
        if isinstance(t, Leaf):
            return [t.vertex]
        groups = [fill(ch) for ch in t.children]
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                col = t.reduced.color(i, j)
                m[np.ix_(groups[i], groups[j])] = col
                m[np.ix_(groups[j], groups[i])] = col
        return [v for g in groups for v in g]

    fill(tree)
    return ColoredKn.from_matrix(m, color_count)


def decompose_full(c: ColoredKn) -> GallaiTree:
    """Recursively apply :func:`gallai_partition` down to single vertices."""
    _require_gallai(c)

    def rec(sub: ColoredKn, ids: list[int]) -> GallaiTree:
        if sub.order == 1:
            return Leaf(ids[0])
        part = _partition_unchecked(sub)
        children = tuple(rec(sub.restrict(b), [ids[v] for v in b]) for b in part.blocks)
        return Node(reduced_graph(part), children)

    return rec(c, list(range(c.order)))


# -- generation -------------------------------------------------------------------


def random_gallai(order: int, color_count: int, seed: int) -> ColoredKn:
    """Random Gallai coloring of K_order built by recursive substitution.

    Each level picks ``p = 2`` with probability 1/2 and otherwise ``p`` uniform
    in ``3..min(size, 8)``, colors a base K_p with at most two colors drawn
    from ``1..color_count``, splits the vertices into ``p`` nonempty parts and
    recurses. Vertex labels are shuffled at the end.
    """
    if order < 1 or color_count < 1:
        raise ValueError("order and color_count must be positive")
    rng = random.Random(seed)
    m = np.zeros((order, order), dtype=np.int16)
    stack = [(0, order)]
    while stack:
        lo, hi = stack.pop()
        size = hi - lo
        if size == 1:
            continue
        if size == 2 or rng.random() < 0.5:
            p = 2
        else:
            p = rng.randint(3, min(size, 8))
        pair = (rng.randint(1, color_count), rng.randint(1, color_count))
        cuts = sorted(rng.sample(range(lo + 1, hi), p - 1))
        bounds = [lo, *cuts, hi]
        for i in range(p):
            for j in range(i + 1, p):
                col = rng.choice(pair)
                m[bounds[i] : bounds[i + 1], bounds[j] : bounds[j + 1]] = col
                m[bounds[j] : bounds[j + 1], bounds[i] : bounds[i + 1]] = col
        stack.extend((bounds[i], bounds[i + 1]) for i in range(p))
    perm = list(range(order))
    rng.shuffle(perm)
    idx = np.asarray(perm)
    return ColoredKn.from_matrix(m[np.ix_(idx, idx)], color_count)


def enumerate_gallai(
    order: int,
    color_count: int,
    reduced: bool = False,
    max_order: int = DEFAULT_MAX_ORDER,
    max_colors: int = DEFAULT_MAX_COLORS,
) -> Iterator[ColoredKn]:
    """Yield every Gallai coloring of K_order with colors in ``1..color_count``.

    Edges are assigned in lexicographic order and a branch is cut as soon as
    it closes a rainbow triangle. With ``reduced=True`` only colorings whose
    colors first appear in increasing order are produced, i.e. one per orbit
    under permutations of the colors.
    """
    if order > max_order or color_count > max_colors:
        raise CapExceeded(f"enumeration capped at N <= {max_order}, k <= {max_colors}")
    if order < 1 or color_count < 1:
        raise ValueError("order and color_count must be positive")
    edges = [(u, v) for u in range(order) for v in range(u + 1, order)]
    col = [[0] * order for _ in range(order)]
    total = len(edges)

    def rec(e: int, used: int) -> Iterator[ColoredKn]:
        if e == total:
            yield ColoredKn(order, color_count, [col[u][v] for u, v in edges])
            return
        u, v = edges[e]
        top = min(color_count, used + 1) if reduced else color_count
        for x in range(1, top + 1):
            for a in range(u):
                ca, cb = col[a][u], col[a][v]
                if ca != cb and ca != x and cb != x:
                    break
            else:
                col[u][v] = x
                yield from rec(e + 1, max(used, x))
        col[u][v] = 0

    yield from rec(0, 0)
