"""
Walls, automorphisms and the signed cocycle
===========================================

Each hyperplane gives a wall of the vertex set.  Orient every wall; for
an automorphism g, delta(g) lists the walls crossed going from a base
vertex v to g v, with a sign for the crossing direction.  Its squared
norm is the displacement d(v, g v) and it satisfies
delta(g h) = g . delta(h) + delta(g).
"""

from cubewalls import generators as gen
from cubewalls.walls import (
    OrientedWallBasis,
    check_cocycle_identity,
    cocycle,
    generated_elements,
    properness_profile,
    wall_metric,
    wall_space,
)

X = gen.hypercube(3)
W = wall_space(X)
basis = OrientedWallBasis.default(W)

elements, complete = generated_elements(X, gen.hypercube_symmetries(3), 4)
print(f"{len(elements)} elements up to word length 4 (closed: {complete})")

for g, k in elements[:8]:
    d = cocycle(X, basis, g, 0)
    print(f"length {k}  g(0) = {g(0)}  delta = {d.as_dict()}  |delta|^2 = {d.norm2()}  d = {wall_metric(W, 0, g(0))}")

gs = [g for g, _ in elements]
ok = all(check_cocycle_identity(X, basis, g, h, 0) for g in gs for h in gs)
print("cocycle identity on all pairs:", ok)

# reversing one wall only negates that coordinate
flipped = basis.flip(0)
g = gs[-1]
print(cocycle(X, basis, g, 0).as_dict(), "->", cocycle(X, flipped, g, 0).as_dict())

prof = properness_profile(X, gen.hypercube_symmetries(3), radius=2, word_cap=6)
print(f"{prof.below_radius} of {len(prof.elements)} elements move the base vertex less than 2")
