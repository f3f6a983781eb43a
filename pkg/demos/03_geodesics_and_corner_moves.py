"""
Geodesics, corner moves and the n! bound
========================================

An edge-path is geodesic exactly when it crosses no hyperplane twice.
Any two geodesics with the same endpoints differ by corner moves, and
since a geodesic is fixed by the order in which it crosses the n
separating walls there are at most n! of them.
"""

from math import factorial

from cubewalls import generators as gen
from cubewalls.paths import EdgePath, all_geodesics, corner_move, crossing_sequence, is_geodesic

G = gen.grid(3, 2)

# a staircase and an out-and-back path
stair = EdgePath.from_vertices([0, 1, 5, 6, 10, 11])
detour = EdgePath.from_vertices([0, 1, 0, 4])
for p in (stair, detour):
    print(p.vertices, crossing_sequence(G, p), "geodesic" if is_geodesic(G, p) else "not geodesic")

# swap the first two steps across the square they span
moved = corner_move(G, stair, 0)
print("after a corner move:", moved.vertices, crossing_sequence(G, moved))

# the bound is reached on cubes
for n in (2, 3, 4):
    geo = all_geodesics(gen.hypercube(n), 0, 2**n - 1)
    print(f"cube {n}: {len(geo)} geodesics, n! = {factorial(n)}")

# and is far from tight on a grid
geo = all_geodesics(G, 0, 11)
print(f"grid corner to corner: {len(geo)} geodesics of length {geo.length}, bound {geo.bound}")
