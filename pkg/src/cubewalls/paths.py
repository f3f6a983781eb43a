"""Edge-paths, crossing sequences, corner moves and geodesic enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complex import CubeComplex
from .errors import BadParameter, BrokenPath, CapZero, Disconnected, NoCommonSquare, NotAnEdge, InvariantViolation
from .hyperplanes import crosses, side_matrix, wall_of_edge


@dataclass(frozen=True)
class EdgePath:
    """A path in the 1-skeleton given by its start vertex and directed steps."""

    start: int
    steps: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_vertices(cls, vertices) -> "EdgePath":
        vertices = [int(v) for v in vertices]
        return cls(vertices[0], tuple(zip(vertices, vertices[1:])))

    @property
    def end(self) -> int:
        return self.steps[-1][1] if self.steps else self.start

    @property
    def vertices(self) -> list[int]:
        return [self.start] + [v for _, v in self.steps]

    def __len__(self):
        return len(self.steps)

    def reverse(self) -> "EdgePath":
        return EdgePath(self.end, tuple((v, u) for u, v in reversed(self.steps)))

    def concat(self, other: "EdgePath") -> "EdgePath":
        if other.start != self.end:
            raise BrokenPath("paths do not meet", end=self.end, start=other.start)
        return EdgePath(self.start, self.steps + other.steps)

    def to_dict(self) -> dict:
        return {"start": self.start, "steps": [list(s) for s in self.steps]}


def validate_path(X: CubeComplex, p: EdgePath) -> None:
    X.check_vertex(p.start)
    at = p.start
    for i, (u, v) in enumerate(p.steps):
        if u != at:
            raise BrokenPath(f"step {i} starts at {u}, expected {at}", index=i, step=[u, v])
        if not X.has_edge(u, v):
            raise NotAnEdge(f"step {i} is not an edge", index=i, step=[u, v])
        at = v


def crossing_sequence(X: CubeComplex, p: EdgePath) -> list[int]:
    """Hyperplane crossed by each step of ``p``."""
    validate_path(X, p)
    return [wall_of_edge(X, u, v) for u, v in p.steps]


def is_geodesic(X: CubeComplex, p: EdgePath) -> bool:
    """A path is geodesic iff it crosses no hyperplane twice."""
    seq = crossing_sequence(X, p)
    return len(set(seq)) == len(seq)


def separating_walls(X: CubeComplex, u: int, v: int) -> list[int]:
    S = side_matrix(X)
    return [int(w) for w in np.nonzero(S[:, u] != S[:, v])[0]]


def _same_component(X: CubeComplex, u: int, v: int) -> None:
    X.check_vertex(u)
    X.check_vertex(v)
    if X.distances[u, v] < 0:
        raise Disconnected(f"{u} and {v} are in different components", u=u, v=v)


def distance(X: CubeComplex, u: int, v: int) -> int:
    """Number of hyperplanes separating ``u`` from ``v``."""
    _same_component(X, u, v)
    S = side_matrix(X)
    return int(np.count_nonzero(S[:, u] != S[:, v]))


# --- corner moves -------------------------------------------------------------


def _corner_index(X: CubeComplex) -> dict:
    """(a, b, c) -> d for every square with consecutive corners a, b, c, d."""

    def compute():
        index = {}
        for sq in X.squares:
            c = sq.corners
            cycle = (c[0], c[1], c[3], c[2])
            for k in range(4):
                a, b, cc, d = (cycle[(k + j) % 4] for j in range(4))
                index[(a, b, cc)] = d
                index[(cc, b, a)] = d
        return index

    return X.memo("corner_index", compute)


def corner_move(X: CubeComplex, p: EdgePath, i: int) -> EdgePath:
    """Replace steps i, i+1 (two sides of a square) by the opposite two sides."""
    validate_path(X, p)
    if not 0 <= i < len(p) - 1:
        raise NoCommonSquare(f"no consecutive steps at index {i}", index=i)
    (a, b), (_, c) = p.steps[i], p.steps[i + 1]
    d = _corner_index(X).get((a, b, c))
    if d is None:
        raise NoCommonSquare("steps are not perpendicular sides of a square", index=i, corner=[a, b, c])
    steps = p.steps[:i] + ((a, d), (d, c)) + p.steps[i + 2 :]
    return EdgePath(p.start, steps)


def corner_move_available(X: CubeComplex, p: EdgePath, i: int) -> bool:
    """True iff steps i, i+1 cross distinct, crossing hyperplanes.

    The answer is checked against the existence of a common square and a
    disagreement raises InvariantViolation.
    """
    seq = crossing_sequence(X, p)
    if not 0 <= i < len(seq) - 1:
        return False
    h1, h2 = seq[i], seq[i + 1]
    available = h1 != h2 and crosses(X, h1, h2)
    (a, b), (_, c) = p.steps[i], p.steps[i + 1]
    has_square = (a, b, c) in _corner_index(X)
    if available != has_square:
        raise InvariantViolation(
            "hyperplane crossing disagrees with square existence",
            index=i,
            hyperplanes=[h1, h2],
            square=has_square,
        )
    return available


# --- geodesics ------------------------------------------------------------------


@dataclass(frozen=True)
class GeodesicEnumeration:
    paths: tuple[EdgePath, ...]
    truncated: bool
    length: int

    def __len__(self):
        return len(self.paths)

    @property
    def bound(self) -> int:
        return math.factorial(self.length)


DEFAULT_CAP = 10_000


def greedy_geodesic(X: CubeComplex, u: int, v: int) -> EdgePath:
    """The geodesic from ``u`` to ``v`` that always steps to the smallest useful neighbour."""
    _same_component(X, u, v)
    S = side_matrix(X)
    target = S[:, v]
    at, steps = u, []
    while at != v:
        for w in X.adjacency[at]:
            if target[wall_of_edge(X, at, w)] != S[wall_of_edge(X, at, w), at]:
                break
        else:
            raise InvariantViolation("no step towards target", at=at, target=v)
        steps.append((at, w))
        at = w
    return EdgePath(u, tuple(steps))


def all_geodesics(X: CubeComplex, u: int, v: int, cap: int = DEFAULT_CAP) -> GeodesicEnumeration:
    """Every geodesic edge-path from ``u`` to ``v``, at most ``cap`` of them.

    A geodesic is fixed by the order in which it crosses the separating
    hyperplanes, so the search only ever steps across a hyperplane that
    still separates the current vertex from ``v``.  Every such prefix
    extends to a geodesic, so no branch dead-ends.
    """
    _same_component(X, u, v)
    if cap < 0:
        raise BadParameter("cap must be non-negative", cap=cap)
    S = side_matrix(X)
    target = S[:, v]
    n = distance(X, u, v)
    if cap == 0:
        raise CapZero("cap is zero but a geodesic exists", u=u, v=v)

    found: list[EdgePath] = []
    steps: list[tuple[int, int]] = []
    truncated = False

    def extend(at):
        nonlocal truncated
        if at == v:
            found.append(EdgePath(u, tuple(steps)))
            if len(found) >= cap:
                truncated = True
            return
        for w in X.adjacency[at]:
            h = wall_of_edge(X, at, w)
            if S[h, at] != target[h]:
                steps.append((at, w))
                extend(w)
                steps.pop()
                if truncated:
                    return

    extend(u)
    if truncated:
        # truncation only matters if geodesics were actually cut off
        truncated = _more_than(X, u, v, cap)
    return GeodesicEnumeration(tuple(found), truncated, n)


def count_geodesics(X: CubeComplex, u: int, v: int) -> int:
    """Number of geodesics from ``u`` to ``v`` by dynamic programming over the interval."""
    _same_component(X, u, v)
    D = X.distances
    d = int(D[u, v])
    layers: dict[int, list[int]] = {}
    for z in range(X.vertex_count):
        if D[u, z] + D[z, v] == d:
            layers.setdefault(int(D[u, z]), []).append(z)
    ways = {u: 1}
    for k in range(1, d + 1):
        for z in layers.get(k, ()):
            ways[z] = sum(ways.get(w, 0) for w in X.adjacency[z] if D[u, w] == k - 1)
    return ways[v]


def _more_than(X, u, v, cap) -> bool:
    return count_geodesics(X, u, v) > cap
