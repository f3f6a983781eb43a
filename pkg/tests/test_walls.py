from itertools import product

import numpy as np
import pytest

import oracles as O
from cubewalls import generators as gen
from cubewalls.errors import BadParameter, NotCellular, SeparationAnomaly
from cubewalls.hyperplanes import wall_of_edge
from cubewalls.paths import distance, separating_walls
from cubewalls.walls import (
    CocycleVector,
    OrientedWallBasis,
    act,
    check_cocycle_identity,
    cocycle,
    identity,
    load_automorphism,
    properness_profile,
    wall_metric,
    wall_space,
)

GRID = gen.grid(3, 2)
CUBE = gen.hypercube(3)


def flip_bits(n, mask):
    return [v ^ mask for v in range(2**n)]


def mirror(a, b):
    # (i, j) -> (a - i, j)
    return [gen.grid_vertex(a, a - i, j) for j in range(b + 1) for i in range(a + 1)]


def test_wall_space_examples():
    W = wall_space(gen.path(2))
    assert len(W) == 1 and (W.walls[0].minus, W.walls[0].plus) == ({0}, {1})
    W = wall_space(GRID)
    assert sorted((len(w.minus), len(w.plus)) for w in W.walls) == [(3, 9), (4, 8), (6, 6), (8, 4), (9, 3)]
    assert set(W.index) == set(GRID.edges)
    W = wall_space(CUBE)
    assert [(len(w.minus), len(w.plus)) for w in W.walls] == [(4, 4)] * 3


def test_wall_space_needs_separation():
    with pytest.raises(SeparationAnomaly):
        wall_space(gen.torus(3, 3))


def test_wall_metric_examples():
    W = wall_space(GRID)
    assert wall_metric(W, 7, 7) == 0
    assert wall_metric(W, 0, 11) == 5
    assert wall_metric(wall_space(CUBE), 0, 7) == 3
    with pytest.raises(BadParameter):
        wall_metric(W, 0, 12)


def test_wall_metric_is_bfs(corpus):
    for X in corpus.values():
        if X.vertex_count > 200:
            continue
        W = wall_space(X)
        n = X.vertex_count
        M = np.array([[wall_metric(W, u, v) for v in range(n)] for u in range(n)])
        assert np.array_equal(M, O.distance_matrix(X))


# --- automorphisms --------------------------------------------------------------------


def test_identity_automorphism():
    e = identity(GRID)
    assert e.is_identity() and e.wall_perm == tuple(range(5)) and set(e.wall_sign) == {1}


def test_coordinate_swap():
    swap = [(v & 4) | ((v & 1) << 1) | ((v & 2) >> 1) for v in range(8)]
    g = load_automorphism(CUBE, swap)
    assert g.wall_perm == (1, 0, 2)


def test_reflection_signs():
    g = load_automorphism(CUBE, flip_bits(3, 1))
    assert g.wall_perm == (0, 1, 2) and g.wall_sign == (-1, 1, 1)


def test_rotation_of_rectangle_is_not_cellular():
    a, b = 3, 2
    rot = [0] * GRID.vertex_count
    for i, j in product(range(a + 1), range(b + 1)):
        rot[gen.grid_vertex(a, i, j)] = j + (b + 1) * (a - i)
    with pytest.raises(NotCellular):
        load_automorphism(GRID, rot)


def test_not_a_permutation():
    with pytest.raises(BadParameter):
        load_automorphism(GRID, [0] * 12)
    with pytest.raises(BadParameter):
        load_automorphism(GRID, list(range(11)))


def test_group_operations():
    g = load_automorphism(CUBE, flip_bits(3, 3))
    h = load_automorphism(CUBE, [(v & 4) | ((v & 1) << 1) | ((v & 2) >> 1) for v in range(8)])
    gh = g * h
    assert gh.perm == tuple(g(h(v)) for v in range(8))
    assert (g * g.inverse()).is_identity() and (h.inverse() * h).is_identity()
    assert gh == load_automorphism(CUBE, gh.perm)
    assert gh.wall_sign == load_automorphism(CUBE, gh.perm).wall_sign


def test_isometry(corpus):
    for name in ("grid4x4", "cube4"):
        X = corpus[name]
        perms = gen.grid_symmetries(4, 4) if name.startswith("grid") else gen.hypercube_symmetries(4)
        W = wall_space(X)
        for p in perms:
            g = load_automorphism(X, p)
            for u in range(0, X.vertex_count, 3):
                for v in range(X.vertex_count):
                    assert wall_metric(W, g(u), g(v)) == wall_metric(W, u, v)


# --- cocycle ---------------------------------------------------------------------------


def test_cocycle_identity_element():
    W = wall_space(GRID)
    basis = OrientedWallBasis.default(W)
    assert not cocycle(GRID, basis, identity(GRID), 0)


def test_cocycle_of_grid_reflection():
    W = wall_space(GRID)
    basis = OrientedWallBasis.default(W)
    g = load_automorphism(GRID, mirror(3, 2))
    assert g(0) == 3
    delta = cocycle(GRID, basis, g, 0)
    assert delta.support == separating_walls(GRID, 0, 3)
    assert delta.support == sorted(wall_of_edge(GRID, i, i + 1) for i in range(3))
    # default orientation points away from vertex 0, so every crossing is positive
    assert set(delta.as_dict().values()) == {1}
    assert delta.norm2() == wall_metric(W, 0, 3) == 3


def test_cocycle_norm_law():
    for name, perms, X in [
        ("cube", gen.hypercube_symmetries(3), CUBE),
        ("grid", gen.grid_symmetries(2, 2), gen.grid(2, 2)),
        ("grid3x2", gen.grid_symmetries(3, 2), GRID),
    ]:
        W = wall_space(X)
        basis = OrientedWallBasis.default(W)
        for p in perms:
            g = load_automorphism(X, p)
            for v in range(X.vertex_count):
                assert cocycle(X, basis, g, v).norm2() == wall_metric(W, v, g(v)) == distance(X, v, g(v))


def test_cocycle_identity_examples():
    W = wall_space(CUBE)
    basis = OrientedWallBasis.default(W)
    e = identity(CUBE)
    r0 = load_automorphism(CUBE, flip_bits(3, 1))
    r1 = load_automorphism(CUBE, flip_bits(3, 2))
    for v in range(8):
        assert check_cocycle_identity(CUBE, basis, r0, e, v)
        assert check_cocycle_identity(CUBE, basis, r0, r1, v)
        lhs = act(r0, basis, cocycle(CUBE, basis, r0.inverse(), v)) + cocycle(CUBE, basis, r0, v)
        assert not lhs


def test_reorientation_covariance():
    W = wall_space(CUBE)
    basis = OrientedWallBasis.default(W)
    flipped = basis.flip(1)
    for p in gen.hypercube_symmetries(3):
        g = load_automorphism(CUBE, p)
        a, b = cocycle(CUBE, basis, g, 0).as_dict(), cocycle(CUBE, flipped, g, 0).as_dict()
        assert set(a) == set(b)
        assert all(b[w] == (-a[w] if w == 1 else a[w]) for w in a)


def test_cocycle_vector_algebra():
    u = CocycleVector.from_dict({0: 1, 2: -1})
    v = CocycleVector.from_dict({2: 1, 3: 1})
    assert (u + v).as_dict() == {0: 1, 3: 1}
    assert not (u + -u)
    assert u.to_dict() == {"0": 1, "2": -1} and u.norm2() == 2


# --- properness ----------------------------------------------------------------------------


def test_properness_trivial_group():
    prof = properness_profile(GRID, [], radius=3, word_cap=4)
    assert prof.displacements() == {tuple(range(12)): 0} and prof.complete


def test_properness_reflection_group():
    gens = [flip_bits(3, 1 << k) for k in range(3)]
    prof = properness_profile(CUBE, gens, radius=4, word_cap=3)
    assert len(prof.elements) == 8 and prof.complete
    assert sorted(prof.displacements().values()) == [0, 1, 1, 1, 2, 2, 2, 3]
    assert prof.below_radius == 8


def test_properness_small_radius():
    prof = properness_profile(GRID, [mirror(3, 2)], radius=1, word_cap=2)
    assert len(prof.elements) == 2 and prof.below_radius == 1


def test_properness_word_cap_truncates():
    prof = properness_profile(CUBE, gen.hypercube_symmetries(3), radius=2, word_cap=1)
    assert not prof.complete and max(k for _, k, _ in prof.elements) == 1
