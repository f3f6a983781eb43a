"""
Markings of a cube and the block complex
========================================

A marking of a cube picks one parallel class of edges and a direction
along it.  An n-cube has 2n of them.  Gluing marked cubes that share a
marked edge gives the block complex, with one component per hyperplane
and direction.
"""

from cubewalls import generators as gen
from cubewalls.hyperplanes import block_components, hyperplanes, marked_cube_census

X = gen.hypercube(3)

# marked cubes by dimension: 12 edges x 2, 6 squares x 4, one cube x 6
census = marked_cube_census(X)
print("census:", census)

# three hyperplanes, each with two directions
for H in hyperplanes(X):
    print(f"hyperplane {H.id}: dual edges {list(H.edges)}")

# six blocks of nine cells; the cells add up to the census total
blocks = block_components(X)
for b in blocks:
    print(f"block ({b.hyperplane}, {b.orientation}): {len(b)} cells {b.counts()}")
print("total cells:", sum(len(b) for b in blocks), "=", sum(census.values()))

# the same count on a grid of squares: vertical walls get 5 cells, horizontal ones 7
G = gen.grid(3, 2)
print("grid blocks:", [len(b) for b in block_components(G)])
