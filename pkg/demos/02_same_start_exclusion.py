"""
A property test by hand: the same-start exclusion
=================================================

If z is exactly as far from x as y is, and the round trip between x and z
is longer than the hop from z to y, then z cannot lie on line(x, y).
The check scans every ordered triple at once with numpy.
"""
import time

from dilines.proofcheck import check_samestart
from dilines.quasimetric import distance_matrix
from dilines.search import random_strongly_connected

##############################################################################
# One random digraph first, to see what a verdict looks like.

g = random_strongly_connected(7, 0.3, seed=11)
print(g)
print(check_samestart(distance_matrix(g)))

##############################################################################
# Now a few thousand of them at mixed densities.

t0 = time.perf_counter()
bad = 0
for seed in range(3000):
    g = random_strongly_connected(3 + seed % 7, 0.05 + 0.1 * (seed // 7 % 10), seed)
    bad += len(check_samestart(distance_matrix(g)).violations)
print(f"violations: {bad}  ({time.perf_counter() - t0:.1f}s)")
