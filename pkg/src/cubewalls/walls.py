"""Walls on the vertex set, automorphisms and the signed wall cocycle.

Group elements are vertex permutations.  An automorphism permutes the
hyperplanes and either keeps or swaps their two sides; with a chosen
orientation of every wall this becomes a signed permutation of the
oriented-wall basis, and ``delta(g)`` records which walls are crossed,
and in which direction, on the way from the basepoint to its image.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .complex import CubeComplex
from .errors import BadParameter, NotCellular
from .hyperplanes import HalfspacePair, check_separation, halfspaces, hyperplanes, side_matrix, wall_of_edge


@dataclass(frozen=True)
class WallSpace:
    walls: tuple[HalfspacePair, ...]
    index: dict  # sorted edge -> wall id
    sides: np.ndarray  # (walls, vertices), 1 on the plus side

    def __len__(self):
        return len(self.walls)

    def separating(self, u: int, v: int) -> list[int]:
        return [int(w) for w in np.nonzero(self.sides[:, u] != self.sides[:, v])[0]]


def wall_space(X: CubeComplex) -> WallSpace:
    check_separation(X)
    walls = tuple(halfspaces(X, H.id) for H in hyperplanes(X))
    index = {e: wall_of_edge(X, *e) for e in X.edges}
    return WallSpace(walls, index, side_matrix(X))


def wall_metric(W: WallSpace, u: int, v: int) -> int:
    n = W.sides.shape[1]
    for x in (u, v):
        if not 0 <= x < n:
            raise BadParameter(f"no vertex {x}", vertex=x)
    return int(np.count_nonzero(W.sides[:, u] != W.sides[:, v]))


@dataclass(frozen=True)
class OrientedWallBasis:
    """Chosen positive side per wall: ``positive[w]`` is 1 for the plus side, 0 for minus."""

    positive: tuple[int, ...]

    @classmethod
    def default(cls, W: WallSpace) -> "OrientedWallBasis":
        # positive side = the side avoiding vertex 0
        return cls(tuple(1 - int(W.sides[w, 0]) for w in range(len(W))))

    def flip(self, *walls: int) -> "OrientedWallBasis":
        pos = list(self.positive)
        for w in walls:
            pos[w] = 1 - pos[w]
        return OrientedWallBasis(tuple(pos))

    def sign(self, w: int) -> int:
        return 1 if self.positive[w] == 1 else -1


@dataclass(frozen=True)
class Automorphism:
    """A cellular vertex permutation with its action on walls.

    ``wall_perm[w]`` is the image wall and ``wall_sign[w]`` is +1 when the
    minus side of ``w`` maps onto the minus side of the image.
    """

    perm: tuple[int, ...]
    wall_perm: tuple[int, ...]
    wall_sign: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.perm[v]

    def __hash__(self):
        return hash(self.perm)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.perm == other.perm

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self * other``: apply ``other`` first."""
        perm = tuple(self.perm[v] for v in other.perm)
        wp = tuple(self.wall_perm[w] for w in other.wall_perm)
        ws = tuple(other.wall_sign[w] * self.wall_sign[other.wall_perm[w]] for w in range(len(other.wall_perm)))
        return Automorphism(perm, wp, ws)

    __mul__ = compose

    def inverse(self) -> "Automorphism":
        perm = [0] * len(self.perm)
        for v, gv in enumerate(self.perm):
            perm[gv] = v
        wp = [0] * len(self.wall_perm)
        ws = [0] * len(self.wall_perm)
        for w, gw in enumerate(self.wall_perm):
            wp[gw] = w
            ws[gw] = self.wall_sign[w]
        return Automorphism(tuple(perm), tuple(wp), tuple(ws))

    def to_dict(self) -> dict:
        return {"perm": list(self.perm), "wall_perm": list(self.wall_perm), "wall_sign": list(self.wall_sign)}


def load_automorphism(X: CubeComplex, perm) -> Automorphism:
    """Validate a vertex permutation as a cellular automorphism of ``X``."""
    perm = tuple(int(v) for v in perm)
    n = X.vertex_count
    if sorted(perm) != list(range(n)):
        raise BadParameter("not a permutation of the vertices", perm=list(perm))
    for c in X.cubes():
        if c.dim == 0:
            continue
        image = [perm[v] for v in c.corners]
        target = X.cube(image)
        if target is None or target.dim != c.dim:
            raise NotCellular("a cube is not mapped to a cube", cube=list(c.corners), image=image)
        if c.dim >= 1 and target.edge_set() != frozenset(frozenset(perm[v] for v in e) for e in c.edge_set()):
            raise NotCellular("cube structure is not preserved", cube=list(c.corners), image=image)
    S = side_matrix(X)
    wall_perm, wall_sign = [], []
    for H in hyperplanes(X):
        images = {wall_of_edge(X, perm[u], perm[v]) for u, v in H.edges}
        if len(images) != 1:
            raise NotCellular("a hyperplane is split by the permutation", hyperplane=H.id)
        (gw,) = images
        u = H.edges[0][0]
        wall_perm.append(gw)
        wall_sign.append(1 if S[H.id, u] == S[gw, perm[u]] else -1)
    return Automorphism(perm, tuple(wall_perm), tuple(wall_sign))


def identity(X: CubeComplex) -> Automorphism:
    return load_automorphism(X, range(X.vertex_count))


@dataclass(frozen=True)
class CocycleVector:
    """Finite sparse integer vector over oriented walls."""

    coeffs: tuple[tuple[int, int], ...] = ()  # sorted (wall, coefficient), no zeros

    @classmethod
    def from_dict(cls, d: dict) -> "CocycleVector":
        return cls(tuple(sorted((int(w), int(c)) for w, c in d.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def support(self) -> list[int]:
        return [w for w, _ in self.coeffs]

    def norm2(self) -> int:
        return sum(c * c for _, c in self.coeffs)

    def __add__(self, other: "CocycleVector") -> "CocycleVector":
        d = self.as_dict()
        for w, c in other.coeffs:
            d[w] = d.get(w, 0) + c
        return CocycleVector.from_dict(d)

    def __neg__(self):
        return CocycleVector(tuple((w, -c) for w, c in self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def to_dict(self) -> dict:
        return {str(w): c for w, c in self.coeffs}


def act(g: Automorphism, basis: OrientedWallBasis, vec: CocycleVector) -> CocycleVector:
    """Signed permutation action of ``g`` on oriented-wall coordinates."""
    d = {}
    for w, c in vec.coeffs:
        gw = g.wall_perm[w]
        d[gw] = c * g.wall_sign[w] * basis.sign(w) * basis.sign(gw)
    return CocycleVector.from_dict(d)


def cocycle(X: CubeComplex, basis: OrientedWallBasis, g: Automorphism, v: int) -> CocycleVector:
    """Signed indicator of the walls separating ``v`` from ``g(v)``.

    A wall counts +1 when one crosses it from its negative to its positive
    side going from ``v`` to ``g(v)``.
    """
    v = X.check_vertex(v)
    S = side_matrix(X)
    gv = g(v)
    d = {}
    for w in np.nonzero(S[:, v] != S[:, gv])[0]:
        w = int(w)
        d[w] = 1 if S[w, gv] == basis.positive[w] else -1
    return CocycleVector.from_dict(d)


def check_cocycle_identity(X, basis, g: Automorphism, h: Automorphism, v: int) -> bool:
    """delta(g h) == g . delta(h) + delta(g)."""
    lhs = cocycle(X, basis, g * h, v)
    rhs = act(g, basis, cocycle(X, basis, h, v)) + cocycle(X, basis, g, v)
    return lhs == rhs


@dataclass(frozen=True)
class PropernessProfile:
    basepoint: int
    radius: int
    elements: tuple[tuple[Automorphism, int, int], ...]  # (element, word length, displacement)
    complete: bool  # the group closed up before the word-length cap

    @property
    def below_radius(self) -> int:
        return sum(1 for _, _, d in self.elements if d < self.radius)

    def displacements(self) -> dict[tuple[int, ...], int]:
        return {g.perm: d for g, _, d in self.elements}

    def to_dict(self) -> dict:
        return {
            "basepoint": self.basepoint,
            "radius": self.radius,
            "complete": self.complete,
            "below_radius": self.below_radius,
            "elements": [
                {"perm": list(g.perm), "word_length": k, "displacement": d} for g, k, d in self.elements
            ],
        }


def generated_elements(X: CubeComplex, generators, word_cap: int) -> tuple[list[tuple[Automorphism, int]], bool]:
    """Distinct products of at most ``word_cap`` generators, breadth first."""
    gens = [g if isinstance(g, Automorphism) else load_automorphism(X, g) for g in generators]
    e = identity(X)
    seen = {e.perm: (e, 0)}
    frontier = deque([e])
    for k in range(1, word_cap + 1):
        nxt = deque()
        for a in frontier:
            for s in gens:
                b = s * a
                if b.perm not in seen:
                    seen[b.perm] = (b, k)
                    nxt.append(b)
        frontier = nxt
        if not frontier:
            break
    complete = not frontier or all((s * a).perm in seen for a in frontier for s in gens)
    return sorted(seen.values(), key=lambda t: (t[1], t[0].perm)), complete


def properness_profile(
    X: CubeComplex, generators, radius: int, word_cap: int, basepoint: int = 0
) -> PropernessProfile:
    """Displacement d(v, g v) of every group element up to word length ``word_cap``."""
    X.check_vertex(basepoint)
    W = wall_space(X)
    elems, complete = generated_elements(X, generators, word_cap)
    rows = tuple((g, k, wall_metric(W, basepoint, g(basepoint))) for g, k in elems)
    return PropernessProfile(basepoint, radius, rows, complete)
