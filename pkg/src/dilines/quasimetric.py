"""Shortest-path quasi-metric of a strongly connected digraph, its segments and lines.

For vertices x != y::

    segment(x, y) = {z : d(x, y) = d(x, z) + d(z, y)}
    line(x, y)    = {z : x in segment(z, y) or z in segment(x, y) or y in segment(x, z)}

Lines are compared as vertex sets; ``line_set`` counts the distinct ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable

import numpy as np

from .core import (
    Digraph,
    StructuralProfile,
    bfs_levels,
    bipartition,
    is_bridgeless,
    is_graph_symmetric,
    is_oriented,
    iter_bits,
    shortest_cycle,
    strongly_connected,
)

__all__ = [
    "Direction",
    "DistanceMatrix",
    "LevelSets",
    "Line",
    "LineSet",
    "NotStronglyConnected",
    "Pencil",
    "diameter",
    "distance_matrix",
    "is_thin",
    "level_sets",
    "line",
    "line_set",
    "mask_to_set",
    "pencil",
    "segment",
    "structural_profile",
]


class NotStronglyConnected(ValueError):
    """Distances are infinite somewhere, so no quasi-metric is defined."""


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(int(mask)))


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    graph: Digraph
    d: np.ndarray  # uint8, d[x, y] = length of a shortest x -> y path

    @property
    def n(self) -> int:
        return self.graph.n

    def __getitem__(self, xy: tuple[int, int]) -> int:
        return int(self.d[xy])

    @cached_property
    def rows(self) -> list[list[int]]:
        """Plain nested lists, for scalar-heavy loops."""
        return self.d.tolist()

    @cached_property
    def diameter(self) -> int:
        return int(self.d.max())

    @cached_property
    def membership(self) -> np.ndarray:
        """Boolean array ``m[x, y, z]``: z lies on the line through (x, y).  Diagonal x == y is False."""
        D = self.d.astype(np.int16)
        DT = D.T
        xy = D[:, :, None]
        xz = D[:, None, :]
        on_seg = xz + DT[None, :, :] == xy               # z in [xy]
        x_before = DT[:, None, :] + xy == DT[None, :, :]  # x in [zy]
        y_after = xy + D[None, :, :] == xz                # y in [xz]
        m = on_seg | x_before | y_after
        idx = np.arange(self.n)
        m[idx, idx, :] = False
        return m

    @cached_property
    def segments(self) -> np.ndarray:
        """Boolean array ``s[x, y, z]``: z lies in segment(x, y)."""
        D = self.d.astype(np.int16)
        return D[:, None, :] + D.T[None, :, :] == D[:, :, None]

    @cached_property
    def line_masks(self) -> np.ndarray:
        """Bitmask of line(x, y) for every ordered pair; 0 on the diagonal."""
        weights = np.left_shift(np.int64(1), np.arange(self.n, dtype=np.int64))
        return self.membership.astype(np.int64) @ weights


def distance_matrix(g: Digraph) -> DistanceMatrix:
    """All-pairs BFS distances; raises NotStronglyConnected when some pair is unreachable."""
    n = g.n
    d = np.zeros((n, n), dtype=np.uint8)
    full = (1 << n) - 1
    for s in range(n):
        levels = bfs_levels(g.out, s)
        reached = 0
        for dist, level in enumerate(levels):
            reached |= level
            for v in iter_bits(level):
                d[s, v] = dist
        if reached != full:
            missing = next(iter_bits(full & ~reached))
            raise NotStronglyConnected(f"no path from {s} to {missing}")
    _check_quasi_metric(d)
    return DistanceMatrix(g, d)


def _check_quasi_metric(d: np.ndarray) -> None:
    n = d.shape[0]
    D = d.astype(np.int16)
    if np.any(np.diagonal(D) != 0) or np.any(D + np.eye(n, dtype=np.int16) < 1):
        raise AssertionError("identity property violated")
    via = (D[:, :, None] + D[None, :, :]).min(axis=1)
    if np.any(via < D):
        raise AssertionError("triangle inequality violated")


def diameter(D: DistanceMatrix) -> int:
    return D.diameter


def _check_pair(D: DistanceMatrix, x: int, y: int) -> None:
    if x == y:
        raise ValueError("segments and lines need two distinct vertices")
    if not (0 <= x < D.n and 0 <= y < D.n):
        raise ValueError(f"vertex out of range 0..{D.n - 1}")


def segment(D: DistanceMatrix, x: int, y: int) -> frozenset[int]:
    _check_pair(D, x, y)
    return frozenset(int(z) for z in np.flatnonzero(D.segments[x, y]))


@dataclass(frozen=True)
class Line:
    members: frozenset[int]
    anchor: tuple[int, int]

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


def line(D: DistanceMatrix, x: int, y: int) -> Line:
    _check_pair(D, x, y)
    return Line(mask_to_set(D.line_masks[x, y]), (x, y))


@dataclass(frozen=True)
class LineSet:
    n: int
    lines: tuple[frozenset[int], ...]  # distinct lines, sorted by member tuple

    @property
    def count(self) -> int:
        return len(self.lines)

    @property
    def universal_count(self) -> int:
        return sum(1 for ln in self.lines if len(ln) == self.n)

    @property
    def thin(self) -> bool:
        return self.count < self.n

    def __iter__(self):
        return iter(self.lines)

    def __len__(self) -> int:
        return len(self.lines)


def _as_distances(g: Digraph | DistanceMatrix) -> DistanceMatrix:
    return g if isinstance(g, DistanceMatrix) else distance_matrix(g)


def distinct_line_masks(D: DistanceMatrix) -> set[int]:
    masks = D.line_masks
    off = ~np.eye(D.n, dtype=bool)
    return {int(m) for m in np.unique(masks[off])}


def line_set(g: Digraph | DistanceMatrix) -> LineSet:
    D = _as_distances(g)
    if D.n < 2:
        raise ValueError("lines need at least two vertices")
    lines = sorted((mask_to_set(m) for m in distinct_line_masks(D)), key=sorted)
    return LineSet(D.n, tuple(lines))


def is_thin(g: Digraph | DistanceMatrix) -> bool:
    D = _as_distances(g)
    return len(distinct_line_masks(D)) < D.n


class Direction(str, Enum):
    FROM_APEX = "from"  # lines line(x, y) for y in U
    TO_APEX = "to"      # lines line(y, x) for y in U


@dataclass(frozen=True)
class Pencil:
    apex: int
    direction: Direction
    entries: dict[int, frozenset[int]]

    @property
    def distinct(self) -> set[frozenset[int]]:
        return set(self.entries.values())

    @property
    def distinct_count(self) -> int:
        return len(self.distinct)


def pencil(D: DistanceMatrix, x: int, direction: Direction | str = Direction.FROM_APEX,
           U: Iterable[int] | None = None) -> Pencil:
    """Lines through the apex ``x`` and each ``y`` in ``U`` (default: every other vertex)."""
    direction = Direction(direction)
    U = [y for y in range(D.n) if y != x] if U is None else sorted(set(U))
    if x in U:
        raise ValueError("the apex may not belong to U")
    masks = D.line_masks
    if direction is Direction.FROM_APEX:
        entries = {y: mask_to_set(masks[x, y]) for y in U}
    else:
        entries = {y: mask_to_set(masks[y, x]) for y in U}
    return Pencil(x, direction, entries)


@dataclass(frozen=True)
class LevelSets:
    apex: int
    levels: tuple[frozenset[int], ...]  # levels[i - 1] is N^i(apex)

    def level(self, i: int) -> frozenset[int]:
        """Vertices at distance exactly ``i`` (empty beyond the eccentricity)."""
        if i < 1:
            raise ValueError("levels start at distance 1")
        return self.levels[i - 1] if i <= len(self.levels) else frozenset()


def level_sets(D: DistanceMatrix, x: int) -> LevelSets:
    row = D.rows[x]
    ecc = max(row)
    levels = tuple(frozenset(v for v in range(D.n) if row[v] == i) for i in range(1, ecc + 1))
    return LevelSets(x, levels)


def structural_profile(g: Digraph) -> StructuralProfile:
    sc = strongly_connected(g)
    return StructuralProfile(
        strongly_connected=sc,
        diameter=distance_matrix(g).diameter if sc else None,
        directed_girth=shortest_cycle(g),
        bridgeless=is_bridgeless(g),
        oriented=is_oriented(g),
        graph_symmetric=is_graph_symmetric(g),
        bipartition=bipartition(g),
    )
