"""
Bridgeless bipartite digraphs
=============================

Among bridgeless bipartite digraphs of diameter at most three, the thin
ones found up to seven vertices are the 4-cycle and K_{2,3}. On the
diameter-3 instances, vertices on the same side sit at distance 2 both
ways, and across sides every distance is 1 or 3.
"""
from dilines import distance_matrix, parse_digraph
from dilines.core import bipartition
from dilines.search import verify_claim

v = verify_claim("bipartite-diam3", 6)
print(v.report.table())
print("thin:", v.found_witnesses, "expected:", v.expected_witnesses)
print("distance pattern checked on", v.deep_checked, "instances, violations:", len(v.violations))

##############################################################################
# The 6-cycle as a graph shows the pattern directly.

g = parse_digraph("6:010001101000010100001010000101100010")
b = bipartition(g)
print(sorted(b.X), sorted(b.Y))
print(distance_matrix(g).d)
