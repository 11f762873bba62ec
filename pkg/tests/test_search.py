import pytest

from dilines import canonical_key, line_set, parse_digraph
from dilines.core import Digraph, complete_digraph, directed_cycle, strongly_connected
from dilines.search import (
    ANY,
    ClassConstraint,
    SearchSpec,
    Tri,
    enumerate_digraphs,
    enumerate_levels,
    extend_by_vertex,
    hunt,
    random_strongly_connected,
    verify_claim,
)

import oracles

ORIENTED = ClassConstraint(oriented=Tri.REQUIRE)
SYMMETRIC = ClassConstraint(graph_symmetric=Tri.REQUIRE)
BIPARTITE = ClassConstraint(bipartite=Tri.REQUIRE)
GIRTH4 = ClassConstraint(girth_min=4)


def _two_colourable(adj):
    n = len(adj)
    colour = [None] * n
    for s in range(n):
        if colour[s] is not None:
            continue
        colour[s], stack = 0, [s]
        while stack:
            u = stack.pop()
            for v in range(n):
                if adj[u][v] or adj[v][u]:
                    if colour[v] is None:
                        colour[v] = 1 - colour[u]
                        stack.append(v)
                    elif colour[v] == colour[u]:
                        return False
    return True


def _girth_at_least(adj, k):
    d = oracles.floyd_warshall(adj)
    return all(1 + d[v][u] >= k for u in range(len(adj)) for v in range(len(adj)) if adj[u][v])


def _weakly_connected(adj):
    n = len(adj)
    sym = [[adj[u][v] or adj[v][u] for v in range(n)] for u in range(n)]
    return all(x < oracles.INF for x in oracles.floyd_warshall(sym)[0])


ORACLE_FILTERS = {
    "any": (ANY, lambda a: True),
    "oriented": (ORIENTED, lambda a: not any(a[u][v] and a[v][u] for u in range(len(a)) for v in range(len(a)))),
    "symmetric": (SYMMETRIC, lambda a: all(a[u][v] == a[v][u] for u in range(len(a)) for v in range(len(a)))),
    "bipartite": (BIPARTITE, _two_colourable),
    "girth4": (GIRTH4, lambda a: _girth_at_least(a, 4)),
}


def oracle_count(n, kind, connected=False):
    keep = ORACLE_FILTERS[kind][1]
    return len({oracles.min_string(a) for a in oracles.labeled_digraphs(n)
                if keep(a) and (not connected or _weakly_connected(a))})


class TestExtension:
    def test_single_vertex(self):
        one = Digraph(1, (0,))
        assert len(list(extend_by_vertex(one))) == 4
        assert len(list(extend_by_vertex(one, ORIENTED))) == 3

    def test_triangle_oriented(self, triangle):
        assert len(list(extend_by_vertex(triangle, ORIENTED))) == 27

    def test_connected_children_touch_parent(self, triangle):
        kids = list(extend_by_vertex(triangle, ORIENTED, connected=True))
        assert len(kids) == 26
        assert all(k.out[3] or k.inn[3] for k in kids)

    def test_rejects_parent_outside_class(self):
        with pytest.raises(ValueError):
            list(extend_by_vertex(complete_digraph(2), ORIENTED))


class TestEnumeration:
    @pytest.mark.parametrize("kind", list(ORACLE_FILTERS))
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_counts_match_oracle(self, kind, n):
        cls = ORACLE_FILTERS[kind][0]
        assert len(enumerate_digraphs(n, cls)) == oracle_count(n, kind)

    @pytest.mark.parametrize("kind", ["any", "oriented", "bipartite"])
    def test_connected_counts_match_oracle(self, kind):
        cls = ORACLE_FILTERS[kind][0]
        assert len(enumerate_digraphs(4, cls, connected=True)) == oracle_count(4, kind, connected=True)

    def test_known_sequences(self):
        assert [len(enumerate_digraphs(n, ORIENTED)) for n in range(1, 6)] == [1, 2, 7, 42, 582]
        assert [len(enumerate_digraphs(n, SYMMETRIC)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]

    @pytest.mark.parametrize("cls", [ANY, ORIENTED, BIPARTITE, GIRTH4], ids=str)
    def test_classes_distinct_and_admitted(self, cls):
        level = enumerate_digraphs(5 if cls is not ANY else 4, cls)
        keys = [canonical_key(g) for g in level]
        assert len(set(keys)) == len(keys)
        assert all(cls.admits(g) for g in level)

    def test_levels_are_hereditary(self):
        levels = dict(enumerate_levels(5, ORIENTED))
        keys4 = {canonical_key(g) for g in levels[4]}
        for g in levels[5]:
            for v in range(5):
                rest = [u for u in range(5) if u != v]
                assert canonical_key(g.induced(rest)) in keys4

    def test_parallel_matches_serial(self):
        serial = {canonical_key(g) for g in enumerate_digraphs(5, ORIENTED, jobs=1)}
        parallel = {canonical_key(g) for g in enumerate_digraphs(5, ORIENTED, jobs=2)}
        assert serial == parallel

    def test_constraint_validation(self):
        with pytest.raises(ValueError):
            ClassConstraint(oriented=Tri.REQUIRE, graph_symmetric=Tri.REQUIRE)


class TestHunt:
    def _classes(self, witnesses):
        return sorted(oracles.min_string(oracles.adjacency(w)) for w in witnesses)

    def test_oriented_diameter_two(self):
        r = hunt(SearchSpec(3, 5, ORIENTED, diameter=2))
        assert self._classes(r.witnesses) == self._classes(["3:010001100"])
        assert [s.n for s in r.levels] == [3, 4, 5]

    def test_bipartite_bridgeless(self):
        r = hunt(SearchSpec(3, 6, BIPARTITE, diameter=(1, 3), require_bridgeless=Tri.REQUIRE))
        assert self._classes(r.witnesses) == self._classes(["4:0101101001011010", "5:0001100011000111110011100"])

    def test_complete_graphs_not_thin(self):
        r = hunt(SearchSpec(3, 4, SYMMETRIC, diameter=1))
        assert r.witnesses == [] and r.classes_passing_filters == 2

    def test_witnesses_satisfy_filters(self):
        spec = SearchSpec(3, 5, diameter=2, predicate="not-thin")
        r = hunt(spec)
        for w in r.witnesses:
            g = parse_digraph(w)
            assert spec.filters_ok(g) and not line_set(g).thin

    def test_counts_strongly_connected_classes(self):
        r = hunt(SearchSpec(3, 4, predicate="all"))
        want = {n: len({oracles.min_string(a) for a in oracles.labeled_digraphs(n)
                        if oracles.strongly_connected(a)}) for n in (3, 4)}
        assert {s.n: s.classes for s in r.levels} == want
        assert len(r.witnesses) == sum(want.values())

    def test_deterministic(self):
        spec = SearchSpec(3, 5, ORIENTED, diameter=(2, 3), predicate="all")
        assert hunt(spec).witnesses == hunt(spec).witnesses

    def test_inspector_sees_every_class(self):
        seen = []
        r = hunt(SearchSpec(3, 4, ORIENTED), inspect=lambda g, D: seen.append(str(g)) or ())
        assert len(seen) == r.inspected == r.classes_generated

    def test_table(self):
        r = hunt(SearchSpec(3, 4, ORIENTED, diameter=2))
        assert r.table("tsv").splitlines()[0] == "n\tclasses_generated\tpassing_filters\twitnesses"
        assert len(r.table().splitlines()) == 3

    @pytest.mark.parametrize("kwargs", [dict(n_min=5, n_max=4), dict(n_max=13), dict(diameter=(3, 2)),
                                        dict(predicate="fat"), dict(girth_min=1)])
    def test_spec_validation(self, kwargs):
        with pytest.raises(ValueError):
            SearchSpec(**kwargs)


class TestVerify:
    def test_complete(self):
        v = verify_claim("diam1-complete")
        assert v.holds and len(v.details) == 6

    def test_girth_four_n6(self):
        v = verify_claim("girth4-diam3-bridgeless", 6)
        assert v.holds and v.found_witnesses == []

    def test_oriented_deep_n5(self):
        v = verify_claim("oriented-diam2", 5, deep=True)
        assert v.holds and v.deep_checked == 3 and v.witnesses_match

    def test_bad_arguments(self):
        with pytest.raises(KeyError):
            verify_claim("nope")
        with pytest.raises(ValueError):
            verify_claim("oriented-diam2", 2)


class TestRandomGenerator:
    def test_probability_zero_is_a_cycle(self):
        for seed in range(5):
            g = random_strongly_connected(3, 0.0, seed)
            assert canonical_key(g) == canonical_key(directed_cycle(3))

    def test_probability_one_is_complete(self):
        assert random_strongly_connected(5, 1.0, 7) == complete_digraph(5)

    def test_deterministic_and_strong(self):
        for seed in range(50):
            g = random_strongly_connected(6, 0.3, seed)
            assert g == random_strongly_connected(6, 0.3, seed)
            assert strongly_connected(g)

    @pytest.mark.parametrize("args", [(2, 0.5, 0), (5, -0.1, 0), (5, 1.5, 0)])
    def test_rejects(self, args):
        with pytest.raises(ValueError):
            random_strongly_connected(*args)
