"""
Complexes that are not CAT(0)
=============================

Three squares around a vertex with no cube to fill them give a link
that is an empty triangle.  A 3 x 3 torus has flag links but triples
of vertices with no median.  A 4 x 4 torus even has a median 1-skeleton
(it is the 4-cube graph) but some of its 4-cycles bound no square.
"""

from cubewalls import generators as gen
from cubewalls.complex import certify_cat0, link
from cubewalls.errors import NotConvex
from cubewalls.median import check_median_axioms, gate_project

corner = gen.three_squares_corner()
rep = certify_cat0(corner)
print("corner:", rep.to_dict())
print("link at 0:", sorted(map(sorted, link(corner, 0).simplices)))

for a in (3, 4):
    rep = certify_cat0(gen.torus(a, a))
    print(f"torus {a}x{a}:", {k: v for k, v in rep.to_dict().items() if k != "triples_checked"})

four = check_median_axioms(gen.torus(3, 3)).results["4"]
print("axiom 4 on the 3x3 torus:", four.passed, four.witness)

# projecting onto two non-adjacent vertices of a row
try:
    gate_project(gen.grid(3, 2), 11, [0, 2])
except NotConvex as exc:
    print(exc.to_dict())
