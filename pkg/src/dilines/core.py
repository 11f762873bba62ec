"""Digraph representation, the compact string format and structural predicates.

A digraph is stored as one out-neighbour bitmask per vertex: bit ``v`` of
``out[u]`` is set iff the arc ``(u, v)`` is present.  Vertices are the
integers ``0 .. n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Bipartition",
    "Digraph",
    "DigraphFormatError",
    "StructuralProfile",
    "bfs_levels",
    "bipartition",
    "complete_bipartite",
    "complete_digraph",
    "cycle_graph",
    "directed_cycle",
    "directed_girth",
    "from_digraph6",
    "is_bridge",
    "is_bridgeless",
    "is_graph_symmetric",
    "is_oriented",
    "iter_bits",
    "parse_digraph",
    "read_catalog",
    "serialize_digraph",
    "shortest_cycle",
    "strongly_connected",
    "to_digraph6",
]


class DigraphFormatError(ValueError):
    """Raised for malformed compact strings; ``position`` indexes the bad character."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a digraph needs at least one vertex")
        if len(self.out) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.out)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.out):
            if row & ~full:
                raise ValueError(f"row {u} references a vertex outside 0..{self.n - 1}")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * n
        for u, v in arcs:
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "Digraph":
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("adjacency matrix must be square")
        rows = tuple(sum(1 << int(v) for v in np.flatnonzero(row)) for row in m)
        return cls(m.shape[0], rows)

    @cached_property
    def inn(self) -> tuple[int, ...]:
        """In-neighbour bitmask per vertex."""
        rows = [0] * self.n
        for u, row in enumerate(self.out):
            for v in iter_bits(row):
                rows[v] |= 1 << u
        return tuple(rows)

    @property
    def adj(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for u, row in enumerate(self.out):
            for v in iter_bits(row):
                m[u, v] = True
        return m

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self.out) for v in iter_bits(row)]

    @property
    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def out_neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.out[u]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.inn[v]))

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Return the digraph with vertex ``u`` renamed to ``perm[u]``."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.n)):
            raise ValueError(f"not a permutation of 0..{self.n - 1}: {perm}")
        rows = [0] * self.n
        for u, row in enumerate(self.out):
            pu = perm[u]
            for v in iter_bits(row):
                rows[pu] |= 1 << perm[v]
        return Digraph(self.n, tuple(rows))

    def without_arc(self, u: int, v: int) -> "Digraph":
        rows = list(self.out)
        rows[u] &= ~(1 << v)
        return Digraph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        index = {v: i for i, v in enumerate(vertices)}
        arcs = [(index[u], index[v]) for u, v in self.arcs() if u in index and v in index]
        return Digraph.from_arcs(len(vertices), arcs)

    def __str__(self) -> str:
        return serialize_digraph(self)


# --- compact format ---------------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    """Parse ``"<n>:<bits>"`` where ``bits`` is the row-major adjacency matrix."""
    text = text.strip()
    head, sep, bits = text.partition(":")
    if not sep:
        raise DigraphFormatError(f"missing ':' in {text!r}")
    if not head.isdigit():
        raise DigraphFormatError(f"malformed vertex count {head!r}", 0)
    n = int(head)
    if n < 1:
        raise DigraphFormatError("vertex count must be at least 1", 0)
    offset = len(head) + 1
    for i, ch in enumerate(bits):
        if ch not in "01":
            raise DigraphFormatError(f"invalid character {ch!r}", offset + i)
    if len(bits) != n * n:
        raise DigraphFormatError(f"expected {n * n} bits for n={n}, got {len(bits)}")
    rows = []
    for u in range(n):
        row = bits[u * n:(u + 1) * n]
        if row[u] != "0":
            raise DigraphFormatError(f"diagonal bit set at row {u}", offset + u * n + u)
        rows.append(sum(1 << v for v, ch in enumerate(row) if ch == "1"))
    return Digraph(n, tuple(rows))


def serialize_digraph(g: Digraph) -> str:
    n = g.n
    bits = "".join("".join("1" if row >> v & 1 else "0" for v in range(n)) for row in g.out)
    return f"{n}:{bits}"


def read_catalog(source: str | Path | Iterable[str]) -> list[Digraph]:
    """Read one compact string per line; blank lines and ``#`` comments are skipped."""
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text().splitlines()
    else:
        lines = list(source)
    graphs = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            graphs.append(parse_digraph(line))
        except DigraphFormatError as exc:
            raise DigraphFormatError(f"line {lineno}: {exc}") from None
    return graphs


def to_digraph6(g: Digraph) -> str:
    """Encode in the nauty digraph6 format (n < 63 only)."""
    if g.n >= 63:
        raise ValueError("digraph6 shim supports n < 63")
    bits = serialize_digraph(g).split(":", 1)[1]
    bits += "0" * (-len(bits) % 6)
    body = "".join(chr(int(bits[i:i + 6], 2) + 63) for i in range(0, len(bits), 6))
    return "&" + chr(g.n + 63) + body


def from_digraph6(text: str) -> Digraph:
    text = text.strip()
    if text.startswith(">>digraph6<<"):
        text = text[12:]
    if not text.startswith("&") or len(text) < 2:
        raise DigraphFormatError("digraph6 strings start with '&'", 0)
    n = ord(text[1]) - 63
    if not 1 <= n < 63:
        raise DigraphFormatError("unsupported digraph6 size byte", 1)
    bits = "".join(format(ord(ch) - 63, "06b") for ch in text[2:])
    if len(bits) < n * n:
        raise DigraphFormatError("digraph6 body too short")
    return parse_digraph(f"{n}:{bits[:n * n]}")


# --- named families ---------------------------------------------------------

def complete_digraph(n: int) -> Digraph:
    full = (1 << n) - 1
    return Digraph(n, tuple(full & ~(1 << u) for u in range(n)))


def directed_cycle(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(u, (u + 1) % n) for u in range(n)])


def cycle_graph(n: int) -> Digraph:
    arcs = [(u, (u + 1) % n) for u in range(n)]
    return Digraph.from_arcs(n, arcs + [(v, u) for u, v in arcs])


def complete_bipartite(p: int, q: int) -> Digraph:
    """Symmetric K_{p,q} with parts ``0..p-1`` and ``p..p+q-1``."""
    arcs = [(u, v) for u in range(p) for v in range(p, p + q)]
    return Digraph.from_arcs(p + q, arcs + [(v, u) for u, v in arcs])


# --- predicates -------------------------------------------------------------

def is_graph_symmetric(g: Digraph) -> bool:
    return g.out == g.inn


def is_oriented(g: Digraph) -> bool:
    return all(g.out[u] & g.inn[u] == 0 for u in range(g.n))


def bfs_levels(rows: Sequence[int], source: int) -> list[int]:
    """Frontier masks at distance 0, 1, 2, ... from ``source`` along ``rows``."""
    seen = frontier = 1 << source
    levels = [frontier]
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        nxt &= ~seen
        if not nxt:
            return levels
        seen |= nxt
        levels.append(nxt)
        frontier = nxt


def _reach(rows: Sequence[int], source: int) -> int:
    seen = frontier = 1 << source
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def strongly_connected(g: Digraph) -> bool:
    full = (1 << g.n) - 1
    return _reach(g.out, 0) == full and _reach(g.inn, 0) == full


def shortest_cycle(g: Digraph) -> int | None:
    """Length of a shortest directed cycle, or ``None`` for acyclic digraphs."""
    best = None
    for v in range(g.n):
        if g.out[v] & g.inn[v]:
            return 2
        for dist, level in enumerate(bfs_levels(g.out, v)):
            if dist and level & g.inn[v]:
                if best is None or dist + 1 < best:
                    best = dist + 1
                break
            if best is not None and dist + 1 >= best:
                break
    return best


def directed_girth(g: Digraph) -> int:
    if g.n < 2 or not strongly_connected(g):
        raise ValueError("directed girth needs a strongly connected digraph with n >= 2")
    return shortest_cycle(g)


def is_bridge(g: Digraph, u: int, v: int) -> bool:
    """True iff deleting the arc ``(u, v)`` leaves no directed path from u to v."""
    if not g.has_arc(u, v):
        raise ValueError(f"arc ({u}, {v}) is not in the digraph")
    rows = list(g.out)
    rows[u] &= ~(1 << v)
    return not _reach(rows, u) >> v & 1


def is_bridgeless(g: Digraph) -> bool:
    return not any(is_bridge(g, u, v) for u, v in g.arcs())


@dataclass(frozen=True)
class Bipartition:
    X: frozenset[int]
    Y: frozenset[int]

    @property
    def p(self) -> int:
        return len(self.X)

    @property
    def q(self) -> int:
        return len(self.Y)

    def side(self, v: int) -> int:
        return 0 if v in self.X else 1


def bipartition(g: Digraph) -> Bipartition | None:
    """Two-colour the undirected support; ``None`` when it has an odd cycle.

    The larger part is X; on ties X holds vertex 0.  Supports with several
    components are coloured with each component's least vertex on side 0,
    moving the last component across if that leaves a side empty.
    """
    n = g.n
    if n < 2:
        return None
    nbr = [g.out[u] | g.inn[u] for u in range(n)]
    colour = [-1] * n
    components = []
    for start in range(n):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        stack, comp = [start], [start]
        while stack:
            u = stack.pop()
            for v in iter_bits(nbr[u]):
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    stack.append(v)
                    comp.append(v)
                elif colour[v] == colour[u]:
                    return None
        components.append(comp)
    if all(c == 0 for c in colour):
        for v in components[-1]:
            colour[v] = 1
    side0 = frozenset(v for v in range(n) if colour[v] == 0)
    side1 = frozenset(range(n)) - side0
    if len(side1) > len(side0) or (len(side1) == len(side0) and 0 in side1):
        side0, side1 = side1, side0
    return Bipartition(side0, side1)


@dataclass(frozen=True)
class StructuralProfile:
    strongly_connected: bool
    diameter: int | None
    directed_girth: int | None  # None marks an acyclic digraph
    bridgeless: bool
    oriented: bool
    graph_symmetric: bool
    bipartition: Bipartition | None
