"""
Medians by corner moves
=======================

Every triple of vertices has exactly one vertex lying on geodesics
between each pair.  The median routine finds it the way the existence
proof does: straighten two geodesics out of the third point until they
share a first edge, step along it, and repeat.
"""

import numpy as np

from cubewalls import generators as gen
from cubewalls.median import brute_force_medians, check_median_axioms, interval, median

G = gen.grid(3, 2)
print("interval [0, 6]:", sorted(interval(G, 0, 6).members))

cert = median(G, 0, 2, 9)
print("median(0, 2, 9) =", cert.median)

# a triple that needs some corner moves
X = gen.hypercube(4)
cert = median(X, 4, 8, 15)
for move in cert.move_log:
    print("  ", move.to_dict())
print("median(4, 8, 15) =", cert.median, "oracle:", brute_force_medians(X, 4, 8, 15))

# random triples on a product of trees against the brute-force intersection
T = gen.product(gen.random_tree(8, 3), gen.random_tree(8, 4))
rng = np.random.default_rng(0)
triples = rng.integers(T.vertex_count, size=(500, 3))
agree = sum(median(T, *map(int, t)).median == brute_force_medians(T, *map(int, t))[0] for t in triples)
print(f"{agree}/500 random medians match")

report = check_median_axioms(G)
print({k: r.passed for k, r in report.results.items()})
