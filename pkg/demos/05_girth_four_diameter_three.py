"""
Directed girth four, diameter three
===================================

No bridgeless digraph of diameter 3 and directed girth 4 is thin. Small
cases are rare: the exhaustive search finds one up to seven vertices. We
also run the per-apex checks on a few circulants, where vertex i points
to i + s for each step s.
"""
from dilines import line_set
from dilines.core import Digraph
from dilines.proofcheck import GIRTH4_DIAM3_SUITE, r_set, run_suite
from dilines.quasimetric import distance_matrix
from dilines.search import verify_claim

v = verify_claim("girth4-diam3-bridgeless", 6)
print(v.report.table())
print("thin:", v.found_witnesses or "none")


def circulant(n, steps):
    return Digraph.from_arcs(n, [(i, (i + s) % n) for i in range(n) for s in steps])


for n, steps in [(7, (1, 2)), (10, (1, 2, 3)), (11, (1, 2, 4)), (12, (1, 3, 7))]:
    g = circulant(n, steps)
    D = distance_matrix(g)
    statuses = {c.claim_id: c.status for c in run_suite(GIRTH4_DIAM3_SUITE, D)}
    print(f"Z{n}{steps}: {line_set(D).count} lines, |R| at 0 = {len(r_set(D, 0))},",
          "all hold" if set(statuses.values()) == {"holds"} else statuses)
