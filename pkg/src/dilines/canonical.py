"""Canonical labelling of small digraphs.

Vertices are first coloured by label-free invariants (degrees, number of
mutual neighbours, sizes of the forward and backward BFS layers), the
colouring is refined until equitable with respect to out- and in-neighbour
colour multisets, and the remaining ties are broken by individualising one
vertex of the first non-singleton cell at a time.  Among the discrete
orderings reached this way the lexicographically smallest row-major
adjacency string is kept.  Vertices that can be swapped by a transposition
automorphism ("twins") are only branched on once.
"""

from __future__ import annotations

from .core import Digraph, bfs_levels, iter_bits, serialize_digraph

__all__ = ["MAX_CANONICAL_N", "canonical_form", "canonical_key", "canonical_labeling"]

MAX_CANONICAL_N = 12


def _initial_colours(n, out, inn):
    sigs = []
    for v in range(n):
        fwd = tuple(level.bit_count() for level in bfs_levels(out, v))
        bwd = tuple(level.bit_count() for level in bfs_levels(inn, v))
        sigs.append((out[v].bit_count(), inn[v].bit_count(), (out[v] & inn[v]).bit_count(), fwd, bwd))
    ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [ranks[s] for s in sigs]


def _refine(colours, outl, innl):
    uniq = sorted(set(colours))
    cells = len(uniq)
    if uniq[0] != 0 or uniq[-1] != cells - 1:
        ranks = {c: i for i, c in enumerate(uniq)}
        colours = [ranks[c] for c in colours]
    n = len(colours)
    while cells < n:
        sigs = [
            (colours[v],
             tuple(sorted([colours[u] for u in outl[v]])),
             tuple(sorted([colours[u] for u in innl[v]])))
            for v in range(n)
        ]
        uniq = sorted(set(sigs))
        if len(uniq) == cells:
            break
        ranks = {s: i for i, s in enumerate(uniq)}
        colours = [ranks[s] for s in sigs]
        cells = len(uniq)
    return colours


class _Search:
    __slots__ = ("n", "out", "inn", "outl", "innl", "best_rows", "best_lab")

    def __init__(self, n, out, inn):
        self.n = n
        self.out = out
        self.inn = inn
        self.outl = [list(iter_bits(r)) for r in out]
        self.innl = [list(iter_bits(r)) for r in inn]
        self.best_rows = None
        self.best_lab = None

    def run(self, colours):
        colours = _refine(colours, self.outl, self.innl)
        n = self.n
        ncells = max(colours) + 1
        if ncells == n:
            lab = [0] * n
            for v, c in enumerate(colours):
                lab[c] = v
            self._leaf(lab)
            return
        # first non-singleton cell, in colour order
        sizes = [0] * ncells
        for c in colours:
            sizes[c] += 1
        target = next(c for c in range(ncells) if sizes[c] > 1)
        cell = [v for v in range(n) if colours[v] == target]
        tried = []
        for v in cell:
            if any(self._twins(u, v) for u in tried):
                continue
            tried.append(v)
            child = [2 * c for c in colours]
            child[v] -= 1
            self.run(child)

    def _twins(self, u, v):
        out, inn = self.out, self.inn
        keep = ~((1 << u) | (1 << v))
        return (
            out[u] & keep == out[v] & keep
            and inn[u] & keep == inn[v] & keep
            and (out[u] >> v & 1) == (out[v] >> u & 1)
        )

    def _leaf(self, lab):
        out = self.out
        best = self.best_rows
        less = best is None
        rows = []
        for i, u in enumerate(lab):
            ou = out[u]
            r = 0
            for w in lab:
                r = (r << 1) | (ou >> w & 1)
            if not less:
                b = best[i]
                if r > b:
                    return
                if r < b:
                    less = True
            rows.append(r)
        if less:
            self.best_rows = rows
            self.best_lab = lab


def canonical_labeling(g: Digraph) -> list[int]:
    """Return ``lab`` such that position ``i`` of the canonical form holds vertex ``lab[i]``."""
    if g.n > MAX_CANONICAL_N:
        raise ValueError(f"canonical labelling is limited to n <= {MAX_CANONICAL_N}")
    search = _Search(g.n, g.out, g.inn)
    search.run(_initial_colours(g.n, g.out, g.inn))
    return search.best_lab


def canonical_form(g: Digraph) -> Digraph:
    """The canonical representative of the isomorphism class of ``g``."""
    lab = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return g.relabel(perm)


def canonical_key(g: Digraph) -> bytes:
    """Relabelling-invariant key: equal keys iff the digraphs are isomorphic."""
    return serialize_digraph(canonical_form(g)).encode("ascii")
