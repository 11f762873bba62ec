"""
Oriented graphs of diameter two
===============================

Search every oriented graph up to six vertices for thin members of
diameter two. Only the directed triangle turns up.
"""
from dilines import distance_matrix, line_set, parse_digraph
from dilines.proofcheck import coincidence_partition_diam2
from dilines.search import ClassConstraint, SearchSpec, Tri, hunt, verify_claim

verdict = verify_claim("oriented-diam2", 6, deep=True)
print(verdict.report.table())
print("thin witnesses:", verdict.found_witnesses)
print("claim checks ran on", verdict.deep_checked, "instances, violations:", len(verdict.violations))

##############################################################################
# Where do the lines go? Group the other vertices by the line they span
# with apex 0. A neighbour and a vertex two steps out may share a line,
# and then that line is just the three of them.

spec = SearchSpec(5, 5, ClassConstraint(oriented=Tri.REQUIRE), diameter=2, predicate="all")
for text in hunt(spec).witnesses:
    D = distance_matrix(parse_digraph(text))
    part = coincidence_partition_diam2(D, 0)
    print(text, "lines:", line_set(D).count,
          "| shared:", part.pairs_12, "alone:", part.singles_1 + part.singles_2)
