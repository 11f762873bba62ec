import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings

from dilines import distance_matrix, parse_digraph
from dilines.core import Digraph, complete_digraph, cycle_graph, directed_cycle, strongly_connected
from dilines.proofcheck import (
    CLAIMS,
    DIAM2_SUITE,
    GIRTH4_DIAM3_SUITE,
    ClaimVerdict,
    HypothesisError,
    asymmetric_arcs,
    check_bipartite_distance_pattern,
    check_counting_identities,
    check_diam2_claims,
    check_level_uniqueness,
    check_r_lines_distinct,
    check_relations,
    check_rx_lower_bound,
    check_samestart,
    check_apex_avoidance,
    coincidence_partition_diam2,
    coincidence_partition_diam3,
    r_set,
    run_claim,
    run_suite,
)
import dilines.proofcheck as proofcheck
from dilines.search import ClassConstraint, Tri, enumerate_digraphs

from test_quasimetric import strong_digraphs


def circulant(n, steps):
    return Digraph.from_arcs(n, [(i, (i + s) % n) for i in range(n) for s in steps])


# bridgeless, directed girth 4, diameter 3
GIRTH4_DIAM3 = [circulant(7, (1, 2)), circulant(8, (1, 3)), circulant(10, (1, 2, 3)),
                circulant(11, (1, 2, 4)), circulant(12, (1, 3, 5)), circulant(12, (1, 3, 7)),
                parse_digraph("7:0001100101000010010000000101000001101100000100010")]


def strongly_connected_classes(n_max, cls=ClassConstraint()):
    for n in range(3, n_max + 1):
        for g in enumerate_digraphs(n, cls, connected=True):
            if strongly_connected(g):
                yield g


class TestPartitions:
    def test_triangle(self, triangle):
        part = coincidence_partition_diam2(distance_matrix(triangle), 0)
        assert part.pairs_12 == ((1, 2),) and part.k == 1
        assert part.singles_1 == part.singles_2 == ()
        assert part.pencil_size == 1

    def test_wrong_diameter(self, k4, triangle):
        with pytest.raises(HypothesisError):
            coincidence_partition_diam2(distance_matrix(k4), 0)
        with pytest.raises(HypothesisError):
            coincidence_partition_diam3(distance_matrix(triangle), 0)

    def test_k23_lines_collide_within_a_level(self, k23):
        # line(0, 3) and line(0, 4) are both the whole vertex set, with 3 and 4 on level 1
        D = distance_matrix(k23)
        with pytest.raises(HypothesisError, match="share a line"):
            coincidence_partition_diam2(D, 0)

    def test_oriented_square(self, oriented_square):
        part = coincidence_partition_diam3(distance_matrix(oriented_square), 0)
        assert part.triples == ((1, 2, 3),)
        assert part.pair_count == part.single_count == 0
        assert part.pencil_size == 4 - 1 - 2 * 1

    def test_all_lines_distinct(self):
        part = coincidence_partition_diam3(distance_matrix(circulant(7, (1, 2))), 0)
        assert not part.triples and part.pair_count == 0
        assert part.single_count == 6 and part.pencil_size == 6

    def test_identity_guard(self):
        part = coincidence_partition_diam3(distance_matrix(directed_cycle(4)), 0)
        with pytest.raises(AssertionError):
            dataclasses.replace(part, pencil_size=2)

    def test_identities_wherever_partition_defined(self):
        # diameter 2 and 3 digraphs with n <= 5, plus oriented ones at n = 6
        defined = undefined = 0
        graphs = list(strongly_connected_classes(5))
        graphs += [g for g in enumerate_digraphs(6, ClassConstraint(oriented=Tri.REQUIRE), connected=True)
                   if strongly_connected(g)]
        for g in graphs:
            D = distance_matrix(g)
            if D.diameter not in (2, 3):
                continue
            for x in range(g.n):
                try:
                    verdict = check_counting_identities(D, x)
                except HypothesisError:
                    undefined += 1
                    continue
                defined += 1
                assert verdict.holds, (str(g), x)
        assert defined > 1000 and undefined > 0


class TestRSet:
    def test_oriented_square_empty(self, oriented_square):
        assert len(r_set(distance_matrix(oriented_square), 0)) == 0

    def test_definition(self):
        D = distance_matrix(circulant(10, (1, 2, 3)))
        d = D.d
        for x in range(10):
            want = {(a, c) for a in range(10) for c in range(10)
                    if d[x, a] == 1 and d[x, c] == 3 and d[a, c] == 3}
            assert set(r_set(D, x).pairs) == want
        assert len(r_set(D, 0)) == 3

    @pytest.mark.parametrize("g", GIRTH4_DIAM3, ids=str)
    def test_r_lines_distinct(self, g):
        D = distance_matrix(g)
        for x in range(g.n):
            assert check_r_lines_distinct(D, x).holds

    def test_mutated_equality_reports_witness(self):
        D = distance_matrix(circulant(10, (1, 2, 3)))
        verdict = check_r_lines_distinct(D, 0, same_line=lambda a, b: True)
        assert not verdict.holds
        assert verdict.violations[0][0] == "equal" and verdict.violations[0][1] == 0

    def test_bound_hypotheses(self, oriented_square):
        with pytest.raises(HypothesisError, match="bridgeless"):
            check_rx_lower_bound(distance_matrix(oriented_square), 0)

    @pytest.mark.parametrize("g", GIRTH4_DIAM3, ids=str)
    def test_bound_holds(self, g):
        D = distance_matrix(g)
        assert all(check_rx_lower_bound(D, x).holds for x in range(g.n))

    def test_bound_reports_shortfall(self, monkeypatch):
        D = distance_matrix(circulant(7, (1, 2)))
        real = proofcheck.coincidence_partition_diam3

        def inflated(D, x):
            part = real(D, x)
            # pretend two triples were found; a = 2 so the bound is at least 2
            object.__setattr__(part, "triples", ((1, 2, 3), (4, 5, 6)))
            return part
        monkeypatch.setattr(proofcheck, "coincidence_partition_diam3", inflated)
        verdict = check_rx_lower_bound(D, 0)
        assert verdict.violations and verdict.violations[0][0] == "bound"


class TestSameStartExclusion:
    def test_small(self, triangle, k4, c4, k23):
        for g in (triangle, k4, c4, k23, complete_digraph(6)):
            assert check_samestart(distance_matrix(g)).holds

    @settings(max_examples=200)
    @given(strong_digraphs(max_n=9))
    def test_random(self, g):
        assert check_samestart(distance_matrix(g)).holds

    def test_literal_agreement(self):
        # the vectorized check agrees with a loop transcription on every n <= 4 class
        for g in strongly_connected_classes(4):
            D = distance_matrix(g)
            d = D.rows
            m = D.membership
            assert check_samestart(D).holds
            for x in range(g.n):
                for y in range(g.n):
                    for z in range(g.n):
                        if len({x, y, z}) < 3:
                            continue
                        if d[x][y] == d[x][z] and d[z][x] + d[x][z] > d[z][y]:
                            assert not m[x, y, z]
                        if d[y][x] == d[z][x] and d[z][x] + d[x][z] > d[y][z]:
                            assert not m[y, x, z]

    def test_corrupted_lines_are_caught(self):
        D = distance_matrix(complete_digraph(4))
        D.__dict__["membership"] = np.ones((4, 4, 4), dtype=bool)
        verdict = check_samestart(D)
        assert verdict.violations and {w[0] for w in verdict.violations} == {1, 2}


class TestDiameterTwo:
    def test_triangle(self, triangle):
        assert check_diam2_claims(triangle).holds

    def test_hypotheses(self, c4, k4):
        with pytest.raises(HypothesisError):
            check_diam2_claims(c4)
        with pytest.raises(HypothesisError):
            check_diam2_claims(k4)

    def test_mutated_line_function(self):
        g = circulant(5, (1, 2))  # oriented, diameter 2, out-degree 2
        assert check_diam2_claims(g).holds
        universal = lambda D, x, y: frozenset(range(D.n))  # noqa: E731
        kinds = {w[0] for w in check_diam2_claims(g, line_fn=universal).violations}
        assert {"apex-on-neighbour-line", "coincident-pair-shape"} <= kinds

    def test_all_oriented_instances(self):
        count = 0
        for g in strongly_connected_classes(6, ClassConstraint(oriented=Tri.REQUIRE)):
            D = distance_matrix(g)
            if D.diameter == 2:
                count += 1
                assert all(v.holds for v in run_suite(DIAM2_SUITE, D)), str(g)
        assert count == 18


class TestBipartitePattern:
    def test_hypotheses(self, k23, triangle):
        with pytest.raises(HypothesisError, match="diameter"):
            check_bipartite_distance_pattern(k23)
        with pytest.raises(HypothesisError, match="bipartite"):
            check_bipartite_distance_pattern(triangle)

    def test_six_cycle(self):
        assert check_bipartite_distance_pattern(cycle_graph(6)).holds

    def test_oriented_square(self, oriented_square):
        assert check_bipartite_distance_pattern(oriented_square).holds

    def test_all_small_instances(self):
        for g in strongly_connected_classes(6, ClassConstraint(bipartite=Tri.REQUIRE)):
            D = distance_matrix(g)
            if D.diameter == 3:
                assert check_bipartite_distance_pattern(D).holds, str(g)


def test_asymmetric_arcs(triangle, c4):
    assert asymmetric_arcs(complete_digraph(3)) == []
    assert asymmetric_arcs(triangle) == [(0, 1), (1, 2), (2, 0)]
    assert asymmetric_arcs(c4) == []


class TestGirthFourDiameterThree:
    @pytest.mark.parametrize("g", GIRTH4_DIAM3, ids=str)
    def test_suite(self, g):
        verdicts = run_suite(GIRTH4_DIAM3_SUITE, g)
        assert [v.status for v in verdicts] == ["holds"] * len(GIRTH4_DIAM3_SUITE)

    def test_level_uniqueness_hypotheses(self, k23):
        with pytest.raises(HypothesisError):
            check_level_uniqueness(distance_matrix(k23), 0)

    def test_apex_avoidance_and_relations(self):
        D = distance_matrix(circulant(11, (1, 2, 4)))
        assert check_apex_avoidance(D).holds
        assert all(check_relations(D, x).holds for x in range(11))

    def test_level_uniqueness_needs_girth_four(self):
        # without the girth hypothesis, same-level collisions do occur at diameter 3
        collisions = 0
        for g in strongly_connected_classes(5):
            D = distance_matrix(g)
            if D.diameter != 3:
                continue
            for x in range(g.n):
                row = D.rows[x]
                for a in range(g.n):
                    if a != x:
                        mask = int(D.line_masks[x, a])
                        collisions += any(v != a and v != x and row[v] == row[a] and mask >> v & 1
                                          for v in range(g.n))
        assert collisions > 0


class TestRegistry:
    def test_not_applicable(self, k23):
        verdict = run_claim("apex-avoidance", k23)
        assert verdict.status == "not-applicable" and verdict.holds and "diameter" in verdict.note

    def test_unknown(self, triangle):
        with pytest.raises(KeyError):
            run_claim("nope", triangle)

    def test_every_claim_runs(self, oriented_square):
        for cid in CLAIMS:
            assert run_claim(cid, oriented_square).status in ("holds", "not-applicable")

    def test_merge(self):
        a = ClaimVerdict("c", ((1,),))
        b = ClaimVerdict("c", applicable=False, note="x")
        m = a.merge(b)
        assert m.violations == ((1,),) and m.applicable and m.status == "fails"
