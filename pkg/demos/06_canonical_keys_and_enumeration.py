"""
Isomorphism classes
===================

Canonical keys name isomorphism classes. The enumerator grows classes one
vertex at a time and keeps one representative per key.
"""
import numpy as np

from dilines import canonical_key
from dilines.core import directed_cycle
from dilines.search import ClassConstraint, Tri, enumerate_digraphs

g = directed_cycle(5)
rng = np.random.default_rng(0)
for _ in range(3):
    perm = rng.permutation(5)
    h = g.relabel(perm)
    print(h, canonical_key(h).decode())

##############################################################################
# Class counts for all digraphs and for oriented graphs.

for n in range(1, 5):
    print(n, len(enumerate_digraphs(n)), len(enumerate_digraphs(n, ClassConstraint(oriented=Tri.REQUIRE))))
