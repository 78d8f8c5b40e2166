"""
Cones and their Hirzebruch-Jung chains
======================================

A cyclic quotient surface singularity is the toric surface of a cone
spanned by two primitive vectors.  Its minimal resolution comes from
filling the cone with lattice points until every subcone is unimodular.
"""

from mld_lab import Cone2D, LatticePoint as P, cone_from_continued_fraction, hirzebruch_jung, regular_decomposition

# The cone of 1/5(1, 2): generators (1, 0) and (2, 5).
c = Cone2D(P(1, 0), P(2, 5))
print("index:", c.index)

d = regular_decomposition(c)
print("chain:", [tuple(w) for w in d.chain])
print("self-intersections: -" + ", -".join(map(str, d.weights)))
print("consecutive determinants:", d.determinants())

# The weights are the continued fraction of 5/(5-2).
print("5/3 =", hirzebruch_jung(5, 3))

# Going the other way: start from the weights and rebuild the cone.
back = cone_from_continued_fraction([2, 3])
print("rebuilt cone:", tuple(back.cone.v1), tuple(back.cone.v2))

# Generators are normalized: divided by their content and put in
# counterclockwise order, so these are all the same cone.
print(Cone2D(P(4, 10), P(3, 0)) == c)
