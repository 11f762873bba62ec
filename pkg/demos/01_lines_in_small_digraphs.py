"""
Lines in small digraphs
=======================

Distances in a strongly connected digraph are shortest directed path
lengths. They need not be symmetric, so segments and lines depend on the
order of their two anchors.
"""
from dilines import distance_matrix, line, line_set, segment
from dilines.core import complete_bipartite, complete_digraph, cycle_graph, directed_cycle

##############################################################################
# The directed triangle. Going backwards costs two steps.

tri = directed_cycle(3)
D = distance_matrix(tri)
print(D.d)
print("segment(0, 2) =", sorted(segment(D, 0, 2)))
print("line(0, 1)    =", sorted(line(D, 0, 1).members))

##############################################################################
# Every pair spans the same line, so there is one line on three vertices.

ls = line_set(tri)
print(ls.count, "line(s); thin:", ls.thin)

##############################################################################
# Complete digraphs sit at the other extreme: each pair is its own line.

for n in range(3, 7):
    print(f"K{n}: {line_set(complete_digraph(n)).count} lines")

##############################################################################
# Symmetric examples. The 4-cycle has a single universal line, and K_{2,3}
# has four lines on five vertices.

for name, g in [("C4", cycle_graph(4)), ("K_{2,3}", complete_bipartite(3, 2))]:
    ls = line_set(g)
    print(name, [sorted(m) for m in ls.lines], "thin" if ls.thin else "not thin")
