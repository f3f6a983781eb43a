"""
Half-spaces and carriers
========================

Deleting the edges dual to one hyperplane cuts the 1-skeleton into
exactly two pieces, and both are convex.  The cubes meeting the
hyperplane form its carrier, which splits as base x [0, 1].
"""

from cubewalls import generators as gen
from cubewalls.hyperplanes import carrier, halfspaces, hyperplanes
from cubewalls.median import convexity_violation

X = gen.product(gen.random_tree(6, 1), gen.random_tree(5, 2))
print(X)

for H in hyperplanes(X):
    pair = halfspaces(X, H)
    convex = convexity_violation(X, pair.minus) is None and convexity_violation(X, pair.plus) is None
    car = carrier(X, H)
    print(
        f"wall {H.id:2d}: sides {len(pair.minus):2d} / {len(pair.plus):2d}"
        f"  convex={convex}  carrier {len(car.vertices):2d} vertices over a base of {car.base.vertex_count}"
    )

# matched pairs of a single carrier: each is a dual edge, minus side first
print(carrier(X, 0).pairs)
