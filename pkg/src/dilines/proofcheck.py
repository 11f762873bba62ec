"""Executable checks for the structural facts behind the thin-digraph theorems.

Each ``check_*`` function evaluates one statement on one digraph and returns
a :class:`ClaimVerdict` listing witness tuples for every failure, so that
exhaustive runs can aggregate counterexamples instead of stopping at the
first one.  A check whose hypotheses do not hold raises
:class:`HypothesisError`; :func:`run_claim` turns that into a
"not-applicable" verdict.

Notation used throughout: ``N^i(x)`` is the set of vertices at distance
exactly ``i`` from ``x``, and the *pencil* of ``x`` is the family of lines
``line(x, y)`` for ``y != x``.  Grouping the pencil by equal lines gives the
coincidence partition: a group with one vertex on each of levels 1, 2, 3 is a
triple, a group with two vertices is a pair labelled by their levels, and a
group of one is a single.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from .core import Digraph, bipartition, is_bridgeless, is_oriented, shortest_cycle
from .quasimetric import DistanceMatrix, distance_matrix, mask_to_set

__all__ = [
    "CLAIMS",
    "DIAM2_SUITE",
    "GIRTH4_DIAM3_SUITE",
    "ClaimVerdict",
    "CoincidencePartitionDiam2",
    "CoincidencePartitionDiam3",
    "HypothesisError",
    "RSet",
    "asymmetric_arcs",
    "check_bipartite_distance_pattern",
    "check_counting_identities",
    "check_diam2_claims",
    "check_level_uniqueness",
    "check_r_lines_distinct",
    "check_relations",
    "check_rx_lower_bound",
    "check_samestart",
    "check_apex_avoidance",
    "coincidence_partition_diam2",
    "coincidence_partition_diam3",
    "r_set",
    "run_claim",
    "run_suite",
]

LineFn = Callable[[DistanceMatrix, int, int], frozenset]


class HypothesisError(ValueError):
    """The digraph does not satisfy the hypotheses a check is stated under."""


@dataclass(frozen=True)
class ClaimVerdict:
    claim_id: str
    violations: tuple[tuple, ...] = ()
    applicable: bool = True
    note: str = ""

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not-applicable"
        return "holds" if self.holds else "fails"

    def merge(self, other: "ClaimVerdict") -> "ClaimVerdict":
        return ClaimVerdict(
            self.claim_id,
            self.violations + other.violations,
            self.applicable or other.applicable,
            self.note or other.note,
        )


def _default_line(D: DistanceMatrix, x: int, y: int) -> frozenset:
    return mask_to_set(D.line_masks[x, y])


def _require_diameter(D: DistanceMatrix, value: int) -> None:
    if D.diameter != value:
        raise HypothesisError(f"needs diameter {value}, got {D.diameter}")


def _require_girth4_diam3(D: DistanceMatrix) -> None:
    _require_diameter(D, 3)
    girth = shortest_cycle(D.graph)
    if girth != 4:
        raise HypothesisError(f"needs directed girth 4, got {girth}")
    if not is_bridgeless(D.graph):
        raise HypothesisError("needs a bridgeless digraph")


def _require_diam2_oriented(D: DistanceMatrix) -> None:
    _require_diameter(D, 2)
    if not is_oriented(D.graph):
        raise HypothesisError("needs an oriented graph")


def _pencil_groups(D: DistanceMatrix, x: int, line_fn: LineFn | None = None) -> list[list[int]]:
    """Vertices of V - {x} grouped by equal line(x, .); each group sorted by level, then label."""
    row = D.rows[x]
    groups: dict[frozenset, list[int]] = {}
    for y in range(D.n):
        if y != x:
            key = line_fn(D, x, y) if line_fn else D.line_masks[x, y]
            groups.setdefault(key, []).append(y)
    out = [sorted(g, key=lambda v: (row[v], v)) for g in groups.values()]
    return sorted(out, key=lambda g: (row[g[0]], g[0]))


def _split_groups(D: DistanceMatrix, x: int, levels: int):
    row = D.rows[x]
    parts: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for group in _pencil_groups(D, x):
        pattern = tuple(row[v] for v in group)
        if len(set(pattern)) != len(pattern):
            raise HypothesisError(
                f"apex {x}: vertices {group} at levels {pattern} share a line; "
                "coincidence partition undefined"
            )
        parts.setdefault(pattern, []).append(tuple(group))
    return parts


@dataclass(frozen=True)
class CoincidencePartitionDiam2:
    apex: int
    n: int
    pencil_size: int  # number of distinct lines line(x, y)
    pairs_12: tuple[tuple[int, int], ...]
    singles_1: tuple[int, ...]
    singles_2: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.pairs_12)

    def __post_init__(self):
        if self.n != 2 * self.k + len(self.singles_1) + len(self.singles_2) + 1:
            raise AssertionError(f"apex {self.apex}: vertex count identity fails")
        if self.pencil_size != self.n - 1 - self.k:
            raise AssertionError(f"apex {self.apex}: pencil size identity fails")


def coincidence_partition_diam2(D: DistanceMatrix, x: int) -> CoincidencePartitionDiam2:
    _require_diameter(D, 2)
    parts = _split_groups(D, x, 2)
    unknown = set(parts) - {(1, 2), (1,), (2,)}
    if unknown:
        raise AssertionError(f"unexpected level pattern {unknown}")
    return CoincidencePartitionDiam2(
        apex=x,
        n=D.n,
        pencil_size=len({int(m) for m in D.line_masks[x]} - {0}),
        pairs_12=tuple(parts.get((1, 2), ())),
        singles_1=tuple(g[0] for g in parts.get((1,), ())),
        singles_2=tuple(g[0] for g in parts.get((2,), ())),
    )


@dataclass(frozen=True)
class CoincidencePartitionDiam3:
    apex: int
    n: int
    pencil_size: int
    triples: tuple[tuple[int, int, int], ...]
    pairs_12: tuple[tuple[int, int], ...]
    pairs_23: tuple[tuple[int, int], ...]
    pairs_13: tuple[tuple[int, int], ...]
    singles_1: tuple[int, ...]
    singles_2: tuple[int, ...]
    singles_3: tuple[int, ...]

    @property
    def pair_count(self) -> int:
        return len(self.pairs_12) + len(self.pairs_23) + len(self.pairs_13)

    @property
    def single_count(self) -> int:
        return len(self.singles_1) + len(self.singles_2) + len(self.singles_3)

    def __post_init__(self):
        if self.n != 3 * len(self.triples) + 2 * self.pair_count + self.single_count + 1:
            raise AssertionError(f"apex {self.apex}: vertex count identity fails")
        expected = self.n - 1 - 2 * len(self.triples) - self.pair_count
        if self.pencil_size != expected:
            raise AssertionError(f"apex {self.apex}: pencil size {self.pencil_size} != {expected}")


def coincidence_partition_diam3(D: DistanceMatrix, x: int) -> CoincidencePartitionDiam3:
    _require_diameter(D, 3)
    parts = _split_groups(D, x, 3)
    known = {(1, 2, 3), (1, 2), (2, 3), (1, 3), (1,), (2,), (3,)}
    if set(parts) - known:
        raise AssertionError(f"unexpected level pattern {set(parts) - known}")
    return CoincidencePartitionDiam3(
        apex=x,
        n=D.n,
        pencil_size=len({int(m) for m in D.line_masks[x]} - {0}),
        triples=tuple(parts.get((1, 2, 3), ())),
        pairs_12=tuple(parts.get((1, 2), ())),
        pairs_23=tuple(parts.get((2, 3), ())),
        pairs_13=tuple(parts.get((1, 3), ())),
        singles_1=tuple(g[0] for g in parts.get((1,), ())),
        singles_2=tuple(g[0] for g in parts.get((2,), ())),
        singles_3=tuple(g[0] for g in parts.get((3,), ())),
    )


@dataclass(frozen=True)
class RSet:
    apex: int
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)


def r_set(D: DistanceMatrix, x: int) -> RSet:
    """Pairs (a, c) with d(x, a) = 1, d(x, c) = 3 and d(a, c) = 3."""
    _require_diameter(D, 3)
    d = D.rows
    pairs = tuple(
        (a, c)
        for a in range(D.n) if d[x][a] == 1
        for c in range(D.n) if d[x][c] == 3 and d[a][c] == 3
    )
    return RSet(x, pairs)


def check_r_lines_distinct(D: DistanceMatrix, x: int, *, same_line=None) -> ClaimVerdict:
    """Lines through distinct pairs of ``r_set(D, x)`` differ and none contains ``x``."""
    _require_girth4_diam3(D)
    same_line = same_line or (lambda a, b: a == b)
    pairs = r_set(D, x).pairs
    lines = {p: mask_to_set(D.line_masks[p]) for p in pairs}
    bad = []
    for p, q in combinations(pairs, 2):
        if same_line(lines[p], lines[q]):
            bad.append(("equal", x, p, q))
    for p in pairs:
        if x in lines[p]:
            bad.append(("contains-apex", x, p))
    return ClaimVerdict("r-lines", tuple(bad))


def check_rx_lower_bound(D: DistanceMatrix, x: int) -> ClaimVerdict:
    """|R^x| >= a(a - 1) + a(|V12| + |V23| + |V1| + |V3|) with a = #triples + |V13|."""
    _require_girth4_diam3(D)
    part = coincidence_partition_diam3(D, x)
    a = len(part.triples) + len(part.pairs_13)
    rest = len(part.pairs_12) + len(part.pairs_23) + len(part.singles_1) + len(part.singles_3)
    bound = a * (a - 1) + a * rest
    size = len(r_set(D, x))
    bad = () if size >= bound else (("bound", x, size, bound),)
    return ClaimVerdict("rx-bound", bad)


def check_samestart(D: DistanceMatrix) -> ClaimVerdict:
    """Both forms of the same-start / same-end exclusion lemma over all distinct triples.

    Form 1: d(x,y) = d(x,z) and d(z,x) + d(x,z) > d(z,y) imply z not in line(x,y).
    Form 2: d(y,x) = d(z,x) and d(z,x) + d(x,z) > d(y,z) imply z not in line(y,x).
    Witnesses are ``(form, x, y, z)``.
    """
    n = D.n
    d = D.d.astype(np.int16)
    dt = d.T
    m = D.membership
    idx = np.arange(n)
    distinct = (idx[:, None, None] != idx[None, :, None]) & (idx[:, None, None] != idx[None, None, :]) \
        & (idx[None, :, None] != idx[None, None, :])
    round_trip = (dt + d)[:, None, :]            # d(z,x) + d(x,z), indexed [x, ., z]
    hyp1 = (d[:, :, None] == d[:, None, :]) & (round_trip > dt[None, :, :])
    hyp2 = (dt[:, :, None] == dt[:, None, :]) & (round_trip > d[None, :, :])
    bad1 = np.argwhere(hyp1 & distinct & m)
    bad2 = np.argwhere(hyp2 & distinct & m.transpose(1, 0, 2))
    witnesses = [(1, int(x), int(y), int(z)) for x, y, z in bad1]
    witnesses += [(2, int(x), int(y), int(z)) for x, y, z in bad2]
    return ClaimVerdict("same-start", tuple(witnesses))


def check_diam2_claims(g: Digraph | DistanceMatrix, *, line_fn: LineFn | None = None) -> ClaimVerdict:
    """Facts about pencils in oriented graphs of diameter two, checked at every apex.

    * out-neighbours a != a' of x: x is on neither line(a, a') nor line(a', a);
    * if x -> z and line(x, y) = line(x, z) for y != z, then d(x, y) = 2, y -> x
      and the line is exactly {x, z, y};
    * with k >= 2 such coincident pairs (z_i, y_i), both {z_i} and {y_i} induce
      tournaments and z_i -> z_j iff y_j -> y_i;
    * n = 2k + |V1| + |V2| + 1 and the pencil has n - 1 - k lines.
    """
    D = g if isinstance(g, DistanceMatrix) else distance_matrix(g)
    _require_diam2_oriented(D)
    line_fn = line_fn or _default_line
    d = D.rows
    n = D.n
    bad: list[tuple] = []
    for x in range(n):
        nbrs = [v for v in range(n) if d[x][v] == 1]
        for a, b in combinations(nbrs, 2):
            if x in line_fn(D, a, b) or x in line_fn(D, b, a):
                bad.append(("apex-on-neighbour-line", x, a, b))
        lines = {y: line_fn(D, x, y) for y in range(n) if y != x}
        pairs = []
        for z in nbrs:
            for y, ln in lines.items():
                if y == z or ln != lines[z]:
                    continue
                if d[x][y] != 2 or d[y][x] != 1 or ln != frozenset((x, z, y)):
                    bad.append(("coincident-pair-shape", x, z, y))
                elif d[x][y] == 2:
                    pairs.append((z, y))
        singles = [y for y, ln in lines.items() if sum(1 for w in lines.values() if w == ln) == 1]
        k = len(pairs)
        distinct = len(set(lines.values()))
        if n != 2 * k + len(singles) + 1 or distinct != n - 1 - k:
            bad.append(("counting", x, k, len(singles), distinct))
        if k >= 2:
            arc = D.graph.has_arc
            for (i, (zi, yi)), (j, (zj, yj)) in combinations(enumerate(pairs), 2):
                if arc(zi, zj) == arc(zj, zi) or arc(yi, yj) == arc(yj, yi):
                    bad.append(("tournament", x, zi, zj))
                elif arc(zi, zj) != arc(yj, yi):
                    bad.append(("tournament-reversal", x, zi, zj))
    return ClaimVerdict("diam2", tuple(bad))


def check_bipartite_distance_pattern(g: Digraph | DistanceMatrix) -> ClaimVerdict:
    """In a bipartite digraph of diameter 3, cross pairs have distances in {1,3}^2, same-side pairs (2, 2)."""
    D = g if isinstance(g, DistanceMatrix) else distance_matrix(g)
    parts = bipartition(D.graph)
    if parts is None:
        raise HypothesisError("needs a bipartite digraph")
    _require_diameter(D, 3)
    d = D.rows
    cross_ok = {(1, 1), (1, 3), (3, 1), (3, 3)}
    bad = []
    for u, v in combinations(range(D.n), 2):
        pattern = (d[u][v], d[v][u])
        same = parts.side(u) == parts.side(v)
        if (same and pattern != (2, 2)) or (not same and pattern not in cross_ok):
            bad.append((u, v, pattern))
    return ClaimVerdict("bipartite-pattern", tuple(bad))


def asymmetric_arcs(g: Digraph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in g.arcs() if not g.has_arc(v, u)]


def check_level_uniqueness(D: DistanceMatrix, x: int) -> ClaimVerdict:
    """line(x, a) meets the level of a only in a.

    Stated for oriented graphs of diameter 2 and for digraphs of diameter 3
    and directed girth 4, where it follows from the exclusion lemma.
    """
    if D.diameter == 2:
        _require_diam2_oriented(D)
    else:
        _require_girth4_diam3(D)
    row = D.rows[x]
    bad = []
    for a in range(D.n):
        if a == x:
            continue
        members = mask_to_set(D.line_masks[x, a])
        same_level = {v for v in members if v != x and row[v] == row[a]}
        if same_level != {a}:
            bad.append((x, a, tuple(sorted(same_level - {a}))))
    return ClaimVerdict("level-unique", tuple(bad))


def check_apex_avoidance(D: DistanceMatrix) -> ClaimVerdict:
    """d(x,a) = d(x,u) = 1, d(a,v) = 3, v != x imply x is on neither line(a,u) nor line(a,v)."""
    _require_girth4_diam3(D)
    d = D.rows
    masks = D.line_masks
    bad = []
    for x in range(D.n):
        outs = [a for a in range(D.n) if d[x][a] == 1]
        for a in outs:
            for u in outs:
                if u != a and masks[a, u] >> x & 1:
                    bad.append(("au", x, a, u))
            for v in range(D.n):
                if v != x and d[a][v] == 3 and masks[a, v] >> x & 1:
                    bad.append(("av", x, a, v))
    return ClaimVerdict("apex-avoidance", tuple(bad))


def check_relations(D: DistanceMatrix, x: int) -> ClaimVerdict:
    """For a pair t on levels i < j and k the missing level: line(x, t_i) meets N^k(x) inside V^x_k."""
    _require_girth4_diam3(D)
    part = coincidence_partition_diam3(D, x)
    row = D.rows[x]
    singles = {1: set(part.singles_1), 2: set(part.singles_2), 3: set(part.singles_3)}
    bad = []
    for (i, j), pairs in (((1, 2), part.pairs_12), ((2, 3), part.pairs_23), ((1, 3), part.pairs_13)):
        k = 6 - i - j
        for t in pairs:
            meet = {v for v in mask_to_set(D.line_masks[x, t[0]]) if row[v] == k}
            if not meet or not meet <= singles[k]:
                bad.append((x, (i, j), t, tuple(sorted(meet))))
    return ClaimVerdict("relations", tuple(bad))


def check_counting_identities(D: DistanceMatrix, x: int) -> ClaimVerdict:
    """The vertex-count and pencil-size identities of the coincidence partition at ``x``."""
    builder = {2: coincidence_partition_diam2, 3: coincidence_partition_diam3}.get(D.diameter)
    if builder is None:
        raise HypothesisError(f"needs diameter 2 or 3, got {D.diameter}")
    try:
        builder(D, x)
    except AssertionError as exc:
        return ClaimVerdict("counting", ((x, str(exc)),))
    return ClaimVerdict("counting")


# --- registry ---------------------------------------------------------------

def _per_apex(check):
    def run(D: DistanceMatrix) -> ClaimVerdict:
        verdicts = [check(D, x) for x in range(D.n)]
        merged = verdicts[0]
        for v in verdicts[1:]:
            merged = merged.merge(v)
        return merged
    return run


CLAIMS: dict[str, tuple[str, Callable[[DistanceMatrix], ClaimVerdict]]] = {
    "same-start": ("same-start/same-end exclusion lemma (any strongly connected digraph)", check_samestart),
    "diam2": ("pencil facts for oriented graphs of diameter 2", check_diam2_claims),
    "bipartite-pattern": ("distance pattern of bipartite digraphs of diameter 3", check_bipartite_distance_pattern),
    "level-unique": ("line(x, a) meets a's level only in a", _per_apex(check_level_uniqueness)),
    "apex-avoidance": ("apex avoids lines from its out-neighbours (diameter 3, girth 4, bridgeless)", check_apex_avoidance),
    "r-lines": ("R^x lines are distinct and avoid x (diameter 3, girth 4, bridgeless)", _per_apex(check_r_lines_distinct)),
    "rx-bound": ("lower bound on |R^x| (diameter 3, girth 4, bridgeless)", _per_apex(check_rx_lower_bound)),
    "relations": ("pair lines meet the missing level in singles (diameter 3, girth 4, bridgeless)", _per_apex(check_relations)),
    "counting": ("coincidence partition counting identities (diameter 2 or 3)", _per_apex(check_counting_identities)),
}

DIAM2_SUITE = ("same-start", "diam2", "level-unique", "counting")
GIRTH4_DIAM3_SUITE = ("same-start", "level-unique", "apex-avoidance", "r-lines", "rx-bound", "relations", "counting")


def run_claim(claim_id: str, g: Digraph | DistanceMatrix) -> ClaimVerdict:
    if claim_id not in CLAIMS:
        raise KeyError(f"unknown claim id {claim_id!r}; known: {', '.join(CLAIMS)}")
    D = g if isinstance(g, DistanceMatrix) else distance_matrix(g)
    try:
        return CLAIMS[claim_id][1](D)
    except HypothesisError as exc:
        return ClaimVerdict(claim_id, applicable=False, note=str(exc))


def run_suite(claim_ids: Iterable[str], g: Digraph | DistanceMatrix) -> list[ClaimVerdict]:
    D = g if isinstance(g, DistanceMatrix) else distance_matrix(g)
    return [run_claim(c, D) for c in claim_ids]
