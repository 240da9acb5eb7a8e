"""Edge colorings of complete graphs and their primitive queries."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .errors import ColoringFormatError
from .graph import SimpleGraph


def pair_index(n: int, u: int, v: int) -> int:
    """Position of the pair {u, v} in the row-major upper-triangular layout."""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def bool_rows_to_masks(rows: np.ndarray) -> list[int]:
    """Convert each row of a boolean matrix into an int bitmask (bit j = column j)."""
    if rows.shape[1] == 0:
        return [0] * rows.shape[0]
    packed = np.packbits(rows, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


class ColoredKn:
    """A k-edge-coloring of the complete graph on vertices ``0..order-1``.

    Colors are ints in ``1..color_count``. Edge colors live in a flat
    upper-triangular array; a dense symmetric matrix (zero diagonal) is
    built lazily for vectorised scans. Instances are immutable.
    """

    __slots__ = ("order", "color_count", "_tri", "_matrix")

    def __init__(self, order: int, color_count: int, colors: Iterable[int] | np.ndarray):
        if order < 1:
            raise ValueError("order must be at least 1")
        if color_count < 1:
            raise ValueError("color_count must be at least 1")
        tri = np.asarray(colors if isinstance(colors, np.ndarray) else list(colors), dtype=np.int16)
        if tri.shape != (order * (order - 1) // 2,):
            raise ValueError(f"expected {order * (order - 1) // 2} edge colors, got {tri.size}")
        if tri.size and (tri.min() < 1 or tri.max() > color_count):
            raise ValueError(f"edge colors must lie in 1..{color_count}")
        tri = tri.copy()
        tri.flags.writeable = False
        self.order = order
        self.color_count = color_count
        self._tri = tri
        self._matrix = None

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, color_count: int | None = None) -> ColoredKn:
        matrix = np.asarray(matrix)
        n = matrix.shape[0]
        iu = np.triu_indices(n, 1)
        tri = matrix[iu]
        if not np.array_equal(tri, matrix.T[iu]):
            raise ValueError("color matrix is not symmetric")
        if color_count is None:
            color_count = int(tri.max()) if tri.size else 1
        out = cls(n, color_count, tri)
        m = np.array(matrix, dtype=np.int16)
        np.fill_diagonal(m, 0)
        m.flags.writeable = False
        out._matrix = m
        return out

    @classmethod
    def from_function(cls, order: int, color_count: int, color: Callable[[int, int], int]) -> ColoredKn:
        return cls(order, color_count, [color(u, v) for u in range(order) for v in range(u + 1, order)])

    @classmethod
    def monochromatic(cls, order: int, color: int = 1, color_count: int | None = None) -> ColoredKn:
        k = color if color_count is None else color_count
        return cls(order, k, np.full(order * (order - 1) // 2, color, dtype=np.int16))

    # -- access --------------------------------------------------------------

    @property
    def triangle(self) -> np.ndarray:
        """Read-only flat array of edge colors in (u, v) lexicographic order."""
        return self._tri

    @property
    def matrix(self) -> np.ndarray:
        """Read-only symmetric ``order x order`` color matrix with zero diagonal."""
        if self._matrix is None:
            n = self.order
            m = np.zeros((n, n), dtype=np.int16)
            iu = np.triu_indices(n, 1)
            m[iu] = self._tri
            m.T[iu] = self._tri
            m.flags.writeable = False
            self._matrix = m
        return self._matrix

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("no edge from a vertex to itself")
        return int(self._tri[pair_index(self.order, u, v)])

    def edges(self) -> Iterator[tuple[int, int, int]]:
        it = iter(self._tri.tolist())
        for u in range(self.order):
            for v in range(u + 1, self.order):
                yield u, v, next(it)

    def colors_used(self) -> set[int]:
        return set(np.unique(self._tri).tolist())

    def is_onto(self) -> bool:
        """True when every color in ``1..color_count`` appears on some edge."""
        return len(self.colors_used()) == self.color_count

    def restrict(self, vertices: Sequence[int]) -> ColoredKn:
        """Induced coloring on ``vertices``; new vertex i is old vertex ``vertices[i]``."""
        idx = np.asarray(vertices, dtype=np.intp)
        return ColoredKn.from_matrix(self.matrix[np.ix_(idx, idx)], self.color_count)

    def relabel(self, new_ids: Sequence[int]) -> ColoredKn:
        """Coloring in which old vertex i is renamed ``new_ids[i]`` (a permutation)."""
        perm = np.asarray(new_ids, dtype=np.intp)
        if sorted(perm.tolist()) != list(range(self.order)):
            raise ValueError("new_ids must be a permutation of 0..order-1")
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self.order)
        return self.restrict(inv)

    def with_color_count(self, color_count: int) -> ColoredKn:
        return ColoredKn(self.order, color_count, self._tri)

    # -- serialization ---------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.order} {self.color_count}"]
        lines.extend(f"{u} {v} {c}" for u, v, c in self.edges())
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredKn):
            return NotImplemented
        return (
            self.order == other.order
            and self.color_count == other.color_count
            and np.array_equal(self._tri, other._tri)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.color_count, self._tri.tobytes()))

    def __repr__(self) -> str:
        return f"ColoredKn(order={self.order}, color_count={self.color_count})"


def load_coloring(source: TextIO | str) -> ColoredKn:
    """Parse the ``N k`` / ``u v c`` text format.

    ``source`` may be an open text stream or the file contents as a string.
    Blank lines and lines starting with ``#`` are ignored.
    """
    text = source if isinstance(source, str) else source.read()
    header = None
    colors: np.ndarray | None = None
    seen: np.ndarray | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise ColoringFormatError(f"line {lineno}: non-integer field in {raw!r}") from None
        if header is None:
            if len(values) != 2:
                raise ColoringFormatError(f"line {lineno}: header must be 'N k'")
            n, k = values
            if n < 1 or k < 1:
                raise ColoringFormatError(f"line {lineno}: N and k must be positive")
            header = (n, k)
            colors = np.zeros(n * (n - 1) // 2, dtype=np.int16)
            seen = np.zeros(n * (n - 1) // 2, dtype=bool)
            continue
        if len(values) != 3:
            raise ColoringFormatError(f"line {lineno}: edge line must be 'u v c'")
        n, k = header
        u, v, c = values
        if not (0 <= u < v <= n - 1):
            raise ColoringFormatError(f"line {lineno}: need 0 <= u < v <= {n - 1}, got {u} {v}")
        if not 1 <= c <= k:
            raise ColoringFormatError(f"line {lineno}: color {c} outside 1..{k}")
        i = pair_index(n, u, v)
        if seen[i]:
            raise ColoringFormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen[i] = True
        colors[i] = c
    if header is None:
        raise ColoringFormatError("empty coloring file")
    if not seen.all():
        i = int(np.flatnonzero(~seen)[0])
        rows, cols = np.triu_indices(header[0], 1)
        raise ColoringFormatError(f"missing edge {rows[i]} {cols[i]}")
    return ColoredKn(header[0], header[1], colors)


def dump_coloring(c: ColoredKn, stream: TextIO) -> None:
    stream.write(c.to_text())


@dataclass(frozen=True)
class TriangleWitness:
    vertices: tuple[int, int, int]
    colors: tuple[int, int, int]

    def __post_init__(self):
        if len(set(self.colors)) != 3:
            raise ValueError("a triangle witness must be rainbow")


def find_rainbow_triangle(c: ColoredKn) -> TriangleWitness | None:
    """Lexicographically least rainbow triangle, or None for a Gallai coloring."""
    n = c.order
    if n < 3 or len(c.colors_used()) < 3:
        return None
    m = c.matrix
    for a in range(n - 2):
        ra = m[a, a + 1 :]
        sub = m[a + 1 :, a + 1 :]
        bad = (ra[:, None] != ra[None, :]) & (ra[:, None] != sub) & (ra[None, :] != sub)
        bad = np.triu(bad, 1)
        hits = np.argwhere(bad)
        if hits.size:
            b, cc = (int(x) + a + 1 for x in hits[0])
            return TriangleWitness((a, b, cc), (int(m[a, b]), int(m[a, cc]), int(m[b, cc])))
    return None


def is_gallai(c: ColoredKn) -> bool:
    return find_rainbow_triangle(c) is None


def color_class_masks(c: ColoredKn, i: int) -> list[int]:
    return bool_rows_to_masks(c.matrix == i)


def color_class(c: ColoredKn, i: int) -> SimpleGraph:
    """Spanning subgraph of K_N formed by the edges of color ``i``."""
    if not 1 <= i <= c.color_count:
        raise ValueError(f"color {i} outside 1..{c.color_count}")
    return SimpleGraph(range(c.order), color_class_masks(c, i))


def largest_component(masks: Sequence[int]) -> int:
    """Order of the largest connected component of a bitmask adjacency list."""
    n = len(masks)
    seen = 0
    best = 0
    for start in range(n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        best = max(best, comp.bit_count())
    return best


def q_value(c: ColoredKn, n: int) -> int:
    """Number of colors whose color class has a component with at least ``n`` vertices.

    Only colors that appear on some edge are counted, so ``q_value(c, 1)`` is
    the number of colors used (isolated vertices of an unused color do not count).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return sum(1 for i in sorted(c.colors_used()) if largest_component(color_class_masks(c, i)) >= n)
