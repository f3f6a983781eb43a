from itertools import permutations
from math import factorial

import numpy as np
import pytest

import oracles as O
from cubewalls import generators as gen
from cubewalls.complex import build_complex
from cubewalls.errors import BadParameter, BrokenPath, CapZero, Disconnected, NoCommonSquare, NotAnEdge
from cubewalls.hyperplanes import wall_of_edge
from cubewalls.paths import (
    EdgePath,
    all_geodesics,
    corner_move,
    corner_move_available,
    count_geodesics,
    crossing_sequence,
    distance,
    greedy_geodesic,
    is_geodesic,
    separating_walls,
)

GRID = gen.grid(3, 2)
P = EdgePath.from_vertices


def test_edge_path_basics():
    p = P([0, 1, 5])
    assert p.end == 5 and len(p) == 2 and p.vertices == [0, 1, 5]
    assert p.reverse() == P([5, 1, 0])
    assert p.concat(P([5, 6])) == P([0, 1, 5, 6])
    with pytest.raises(BrokenPath):
        p.concat(P([6, 7]))


def test_crossing_sequences():
    assert crossing_sequence(GRID, EdgePath(3)) == []
    stair = crossing_sequence(GRID, P([0, 1, 5, 6]))  # E, N, E
    assert stair == [wall_of_edge(GRID, 0, 1), wall_of_edge(GRID, 0, 4), wall_of_edge(GRID, 1, 2)]
    assert len(set(stair)) == 3
    back = crossing_sequence(GRID, P([0, 1, 0]))
    assert back[0] == back[1]


def test_invalid_paths():
    with pytest.raises(NotAnEdge):
        crossing_sequence(GRID, P([0, 5]))
    with pytest.raises(BrokenPath):
        crossing_sequence(GRID, EdgePath(0, ((0, 1), (2, 3))))


def test_geodesic_examples():
    assert not is_geodesic(GRID, P([0, 1, 0]))
    assert is_geodesic(GRID, EdgePath(0))
    stair = P([0, 1, 5, 6, 10, 11])
    assert is_geodesic(GRID, stair) and len(stair) == O.distance_matrix(GRID)[0, 11] == 5


def test_distance_examples():
    assert distance(GRID, 4, 4) == 0
    assert distance(GRID, 0, 11) == 5
    assert distance(gen.hypercube(3), 0, 7) == 3


def test_distance_disconnected():
    X = build_complex([[0, 1], [2, 3]])
    with pytest.raises(Disconnected):
        distance(X, 0, 3)


def test_distance_equals_bfs(corpus):
    for X in corpus.values():
        D = O.distance_matrix(X)
        n = X.vertex_count
        got = np.array([[distance(X, u, v) for v in range(n)] for u in range(n)]) if n <= 120 else None
        if got is not None:
            assert np.array_equal(got, D)


def test_separating_walls_are_the_crossings(corpus):
    rng = np.random.default_rng(3)
    for X in corpus.values():
        for _ in range(20):
            u, v = (int(t) for t in rng.integers(X.vertex_count, size=2))
            p = greedy_geodesic(X, u, v)
            assert sorted(crossing_sequence(X, p)) == separating_walls(X, u, v)


# --- corner moves --------------------------------------------------------------------


def test_corner_move_grid():
    p = P([0, 1, 5])  # E then N
    q = corner_move(GRID, p, 0)
    assert q == P([0, 4, 5])  # N then E
    assert crossing_sequence(GRID, q) == crossing_sequence(GRID, p)[::-1]


def test_corner_move_tripod():
    with pytest.raises(NoCommonSquare):
        corner_move(gen.star(3), P([1, 0, 2]), 0)


def test_corner_move_hypercube():
    X = gen.hypercube(3)
    q = corner_move(X, P([0, 1, 3, 7]), 1)
    assert q == P([0, 1, 5, 7])
    assert corner_move(X, q, 1) == P([0, 1, 3, 7])


def test_corner_move_available():
    assert corner_move_available(GRID, P([0, 1, 5]), 0)
    assert not corner_move_available(GRID, P([0, 1, 2]), 0)
    assert not corner_move_available(GRID, P([0, 1, 0]), 0)
    assert not corner_move_available(GRID, P([0, 1]), 0)


def test_corner_move_involution(corpus):
    rng = np.random.default_rng(5)
    for X in corpus.values():
        for _ in range(30):
            verts = O.random_walk(X, rng, 6)
            p = P(verts)
            for i in range(len(p) - 1):
                if corner_move_available(X, p, i):
                    q = corner_move(X, p, i)
                    assert (q.start, q.end) == (p.start, p.end)
                    s, t = crossing_sequence(X, p), crossing_sequence(X, q)
                    assert t[i] == s[i + 1] and t[i + 1] == s[i]
                    assert corner_move(X, q, i) == p


# --- enumeration -----------------------------------------------------------------------


def test_geodesic_counts():
    assert len(all_geodesics(gen.grid(2, 1), 0, 5)) == 3
    T = gen.random_tree(12, 4)
    leaves = [v for v in range(12) if len(T.adjacency[v]) == 1]
    assert len(all_geodesics(T, leaves[0], leaves[-1])) == 1
    for n, expected in [(2, 2), (3, 6), (4, 24)]:
        geo = all_geodesics(gen.hypercube(n), 0, 2**n - 1)
        assert len(geo) == expected == factorial(n) and not geo.truncated


def test_enumeration_matches_oracle(corpus):
    rng = np.random.default_rng(11)
    for name, X in corpus.items():
        D = O.distance_matrix(X)
        for _ in range(10):
            u, v = (int(t) for t in rng.integers(X.vertex_count, size=2))
            if D[u, v] > 7:
                continue
            expected = sorted(O.geodesics(X, D, u, v))
            got = sorted(tuple(p.vertices) for p in all_geodesics(X, u, v).paths)
            assert got == expected, name
            assert count_geodesics(X, u, v) == len(expected) <= factorial(D[u, v])


def test_cap_and_truncation():
    X = gen.hypercube(4)
    geo = all_geodesics(X, 0, 15, cap=5)
    assert len(geo) == 5 and geo.truncated
    geo = all_geodesics(X, 0, 15, cap=24)
    assert len(geo) == 24 and not geo.truncated
    with pytest.raises(CapZero):
        all_geodesics(X, 0, 15, cap=0)
    with pytest.raises(BadParameter):
        all_geodesics(X, 0, 15, cap=-1)
    assert len(all_geodesics(X, 3, 3)) == 1


def test_corner_move_connectivity():
    # every geodesic between fixed endpoints is reachable by corner moves
    cases = [(gen.hypercube(4), 0, 15), (gen.grid(3, 2), 0, 11), (gen.product(gen.star(3), gen.path(3)), 2, 11)]
    for X, u, v in cases:
        geo = {p.steps: p for p in all_geodesics(X, u, v).paths}
        assert len(separating_walls(X, u, v)) <= 6
        start = next(iter(geo.values()))
        seen, todo = {start.steps}, [start]
        while todo:
            p = todo.pop()
            for i in range(len(p) - 1):
                if corner_move_available(X, p, i):
                    q = corner_move(X, p, i)
                    if q.steps not in seen:
                        seen.add(q.steps)
                        todo.append(q)
        assert seen == set(geo)


def test_crossing_sets_equal():
    X = gen.product(gen.random_tree(6, 1), gen.random_tree(5, 2))
    for u, v in [(0, X.vertex_count - 1), (3, 17)]:
        sets = {frozenset(crossing_sequence(X, p)) for p in all_geodesics(X, u, v).paths}
        assert sets == {frozenset(separating_walls(X, u, v))}


def test_orders_are_wall_permutations():
    X = gen.hypercube(3)
    orders = {tuple(crossing_sequence(X, p)) for p in all_geodesics(X, 0, 7).paths}
    assert orders == set(permutations(range(3)))
