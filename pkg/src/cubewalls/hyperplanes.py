"""Hyperplanes as classes of edges under the square relation.

Two edges are in the same hyperplane when they are linked by a chain of
squares in which consecutive edges are opposite sides.  Running the same
closure on directed edges gives the orientation classes (markings); a
two-sided hyperplane has exactly two of them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .complex import Cube, CubeComplex, build_complex
from .errors import (
    BadParameter,
    InvariantViolation,
    NoCommonCube,
    OneSidedWall,
    ProductDecompositionFailure,
    SameWall,
    SeparationAnomaly,
)


class UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def classes(self):
        out = {}
        for x in list(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass(frozen=True)
class Hyperplane:
    id: int
    edges: tuple[tuple[int, int], ...]
    orientations: tuple[frozenset, ...]

    @property
    def two_sided(self) -> bool:
        return len(self.orientations) == 2

    def __len__(self):
        return len(self.edges)


@dataclass
class _WallData:
    walls: list[Hyperplane]
    edge_wall: dict
    directed: dict  # directed edge -> (wall id, orientation index)
    cube_walls: dict  # cube key -> wall id per coordinate
    wall_cubes: list  # wall id -> cubes having a coordinate dual to it
    crossing: set  # frozensets {h1, h2} spanned by a square


def _wall_data(X: CubeComplex) -> _WallData:
    return X.memo("walls", lambda: _compute_walls(X))


def _compute_walls(X: CubeComplex) -> _WallData:
    undirected = UnionFind()
    directed = UnionFind()
    for e in X.edges:
        undirected.find(e)
        directed.find(e)
        directed.find(e[::-1])
    for sq in X.squares:
        c = sq.corners
        for a, b, p, q in ((c[0], c[1], c[2], c[3]), (c[0], c[2], c[1], c[3])):
            undirected.union(tuple(sorted((a, b))), tuple(sorted((p, q))))
            directed.union((a, b), (p, q))
            directed.union((b, a), (q, p))

    classes = sorted((sorted(cls) for cls in undirected.classes()), key=lambda cls: cls[0])
    walls, edge_wall, dmap = [], {}, {}
    for wid, cls in enumerate(classes):
        first = cls[0]
        roots = []
        for root in (directed.find(first), directed.find(first[::-1])):
            if root not in roots:
                roots.append(root)
        groups = {r: set() for r in roots}
        for e in cls:
            edge_wall[e] = wid
            for d in (e, e[::-1]):
                groups[directed.find(d)].add(d)
        orientations = tuple(frozenset(groups[r]) for r in roots)
        for k, orient in enumerate(orientations):
            for d in orient:
                dmap[d] = (wid, k)
        walls.append(Hyperplane(wid, tuple(cls), orientations))

    cube_walls, wall_cubes, crossing = {}, [[] for _ in walls], set()
    for c in X.cubes():
        if c.dim == 0:
            continue
        ws = tuple(edge_wall[tuple(sorted(c.directed_edges(i)[0]))] for i in range(c.dim))
        cube_walls[c.key] = ws
        for w in set(ws):
            wall_cubes[w].append(c)
        if c.dim == 2 and ws[0] != ws[1]:
            crossing.add(frozenset(ws))
    return _WallData(walls, edge_wall, dmap, cube_walls, wall_cubes, crossing)


def hyperplanes(X: CubeComplex) -> list[Hyperplane]:
    """All hyperplanes of ``X``, ordered by their smallest dual edge."""
    return list(_wall_data(X).walls)


def _wall_id(X, H) -> int:
    wid = H.id if isinstance(H, Hyperplane) else int(H)
    if not 0 <= wid < len(_wall_data(X).walls):
        raise BadParameter(f"no hyperplane {wid}", hyperplane=wid)
    return wid


def wall_of_edge(X: CubeComplex, u: int, v: int) -> int:
    """Id of the hyperplane dual to edge ``uv``."""
    return _wall_data(X).edge_wall[(u, v) if u < v else (v, u)]


def orientation_of(X: CubeComplex, u: int, v: int) -> tuple[int, int]:
    """(wall id, orientation index) of the directed edge ``u -> v``."""
    return _wall_data(X).directed[(u, v)]


def cube_walls(X: CubeComplex, cube: Cube) -> tuple[int, ...]:
    """The hyperplane dual to each coordinate direction of ``cube``."""
    if cube.dim == 0:
        return ()
    return _wall_data(X).cube_walls[cube.key]


def self_intersections(X: CubeComplex) -> list[Cube]:
    """Cubes having two coordinate directions dual to the same hyperplane."""
    data = _wall_data(X)
    return [X.cube(k) for k, ws in sorted(data.cube_walls.items()) if len(set(ws)) != len(ws)]


# --- markings and blocks -------------------------------------------------------


def markings(cube: Cube) -> list[frozenset[tuple[int, int]]]:
    """Markings of a cube: classes of its directed edges under the square relation inside it."""
    uf = UnionFind()
    k = cube.dim
    size = len(cube.corners)
    c = cube.corners
    for i in range(k):
        for lab in range(size):
            if not lab >> i & 1:
                uf.find((c[lab], c[lab | 1 << i]))
                uf.find((c[lab | 1 << i], c[lab]))
    for i, j in combinations(range(k), 2):
        for lab in range(size):
            if lab >> i & 1 or lab >> j & 1:
                continue
            # square spanned by coordinates i, j at base corner ``lab``
            a, b, p, q = c[lab], c[lab | 1 << i], c[lab | 1 << j], c[lab | 1 << i | 1 << j]
            uf.union((a, b), (p, q))
            uf.union((b, a), (q, p))
            uf.union((a, p), (b, q))
            uf.union((p, a), (q, b))
    return sorted((frozenset(cls) for cls in uf.classes()), key=lambda s: min(s))


def marked_cube_census(X: CubeComplex) -> dict[int, int]:
    """Number of (cube, marking) pairs per dimension."""
    census: dict[int, int] = {}
    for c in X.cubes():
        if c.dim >= 1:
            census[c.dim] = census.get(c.dim, 0) + len(markings(c))
    return census


@dataclass(frozen=True)
class Block:
    """A component of the block complex: marked cubes glued along shared marked edges."""

    hyperplane: int
    orientation: int
    cells: tuple[tuple[tuple[int, ...], tuple[int, int]], ...]  # (cube key, representative directed edge)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for key, _ in self.cells:
            d = len(key).bit_length() - 1
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def __len__(self):
        return len(self.cells)


def block_components(X: CubeComplex) -> list[Block]:
    """Components of the block complex, one per (hyperplane, orientation).

    Marked cubes are glued whenever their markings share a directed edge,
    which is the identification defining the block complex.  Each
    component is then matched to the directed-edge class it carries.
    """
    data = _wall_data(X)
    uf = UnionFind()
    marked = []
    for c in X.cubes():
        if c.dim == 0:
            continue
        for m in markings(c):
            idx = len(marked)
            rep = min(m)
            marked.append((c.key, rep, m))
            for d in m:
                uf.union(("m", idx), ("e", d))
    comps: dict = {}
    for idx, (key, rep, m) in enumerate(marked):
        comps.setdefault(uf.find(("m", idx)), []).append(idx)

    blocks = []
    for members in comps.values():
        edges = set().union(*(marked[i][2] for i in members))
        for u, v in edges:
            if (v, u) in edges:
                raise OneSidedWall("a block contains both directions of an edge", edge=[u, v])
        labels = {data.directed[d] for d in edges}
        if len(labels) != 1:
            raise InvariantViolation("block spans several orientation classes", classes=sorted(labels))
        (wid, k), = labels
        cells = tuple(sorted((marked[i][0], marked[i][1]) for i in members))
        blocks.append(Block(wid, k, cells))
    blocks.sort(key=lambda b: (b.hyperplane, b.orientation))
    return blocks


# --- half-spaces ---------------------------------------------------------------------


@dataclass(frozen=True)
class HalfspacePair:
    """The vertex partition cut out by a hyperplane.

    ``minus`` is the side holding the smallest vertex id.  When the
    complement does not have exactly two components (possible only on
    non-CAT(0) input) ``components`` lists them all, ``minus`` is the first
    and ``plus`` is the union of the rest.
    """

    hyperplane: int
    minus: frozenset[int]
    plus: frozenset[int]
    components: tuple[frozenset[int], ...]

    @property
    def separating(self) -> bool:
        return len(self.components) == 2

    def side(self, v: int) -> int:
        """0 for the minus side, 1 for the plus side."""
        return 0 if v in self.minus else 1

    def separates(self, u: int, v: int) -> bool:
        return (u in self.minus) != (v in self.minus)

    def to_dict(self) -> dict:
        return {
            "hyperplane": self.hyperplane,
            "minus": sorted(self.minus),
            "plus": sorted(self.plus),
            "components": len(self.components),
        }


def halfspaces(X: CubeComplex, H) -> HalfspacePair:
    wid = _wall_id(X, H)
    cache = X.memo("halfspaces", dict)
    if wid in cache:
        return cache[wid]
    dual = set(_wall_data(X).walls[wid].edges)
    seen = [False] * X.vertex_count
    comps = []
    for s in range(X.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in X.adjacency[u]:
                if not seen[w] and (min(u, w), max(u, w)) not in dual:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    comps.sort(key=min)
    minus = comps[0]
    plus = frozenset().union(*comps[1:]) if len(comps) > 1 else frozenset()
    pair = cache[wid] = HalfspacePair(wid, minus, plus, tuple(comps))
    return pair


def side_matrix(X: CubeComplex) -> np.ndarray:
    """Array of shape (hyperplanes, vertices): 1 where the vertex is on the plus side."""

    def compute():
        walls = _wall_data(X).walls
        S = np.zeros((len(walls), X.vertex_count), dtype=np.uint8)
        for w in walls:
            pair = halfspaces(X, w.id)
            S[w.id, list(pair.plus)] = 1
        S.setflags(write=False)
        return S

    return X.memo("side_matrix", compute)


def check_separation(X: CubeComplex) -> None:
    """Raise SeparationAnomaly unless every hyperplane cuts X into exactly two pieces."""
    for w in _wall_data(X).walls:
        pair = halfspaces(X, w.id)
        if not pair.separating:
            raise SeparationAnomaly(
                f"hyperplane {w.id} leaves {len(pair.components)} components",
                hyperplane=w.id,
                components=[sorted(c) for c in pair.components],
            )


# --- crossing --------------------------------------------------------------------------


def crosses(X: CubeComplex, H1, H2) -> bool:
    """True iff some square has one pair of sides dual to H1 and the other dual to H2."""
    a, b = _wall_id(X, H1), _wall_id(X, H2)
    if a == b:
        raise SameWall("a hyperplane is compared with itself", hyperplane=a)
    return frozenset((a, b)) in _wall_data(X).crossing


def crossing_square(X: CubeComplex, H1, H2) -> Cube | None:
    a, b = _wall_id(X, H1), _wall_id(X, H2)
    if a == b:
        raise SameWall("a hyperplane is compared with itself", hyperplane=a)
    data = _wall_data(X)
    for c in data.wall_cubes[a]:
        if c.dim == 2 and set(data.cube_walls[c.key]) == {a, b}:
            return c
    return None


@dataclass(frozen=True)
class FourPointResult:
    crossing_square: Cube | None = None
    empty_quadrant: tuple[str, str] | None = None

    def to_dict(self) -> dict:
        if self.crossing_square is not None:
            return {"crossing_square": list(self.crossing_square.corners)}
        return {"quadrant_empty": list(self.empty_quadrant)}


def four_point_witness(X: CubeComplex, H1, H2) -> FourPointResult:
    """Either a square where H1 and H2 cross, or an empty quadrant H1^s & H2^t.

    When all four quadrants contain vertices a crossing square must exist;
    its absence raises InvariantViolation.
    """
    a, b = _wall_id(X, H1), _wall_id(X, H2)
    if a == b:
        raise SameWall("a hyperplane is compared with itself", hyperplane=a)
    p, q = halfspaces(X, a), halfspaces(X, b)
    for s, A in (("-", p.minus), ("+", p.plus)):
        for t, B in (("-", q.minus), ("+", q.plus)):
            if not A & B:
                return FourPointResult(empty_quadrant=(s, t))
    sq = crossing_square(X, a, b)
    if sq is None:
        raise InvariantViolation("all four quadrants are non-empty but no square crosses", hyperplanes=[a, b])
    return FourPointResult(crossing_square=sq)


def helly_cube(X: CubeComplex, walls) -> Cube:
    """A cube in which all the given pairwise-crossing hyperplanes meet.

    Cubes are searched by decreasing dimension; the first cube having
    every given hyperplane among its coordinate directions is returned.
    """
    ids = [_wall_id(X, H) for H in walls]
    if not ids:
        raise BadParameter("need at least one hyperplane")
    if len(set(ids)) != len(ids):
        raise SameWall("hyperplanes must be distinct", hyperplanes=ids)
    for a, b in combinations(ids, 2):
        if not crosses(X, a, b):
            raise BadParameter("hyperplanes are not pairwise crossing", pair=[a, b])
    data = _wall_data(X)
    want = set(ids)
    candidates = sorted(data.wall_cubes[ids[0]], key=lambda c: (-c.dim, c.key))
    for c in candidates:
        if want <= set(data.cube_walls[c.key]):
            return c
    raise NoCommonCube("no cube is dual to all hyperplanes", hyperplanes=ids)


# --- carriers -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Carrier:
    """Cubes meeting a hyperplane, with the product splitting base x [0,1].

    ``pairs[i] = (m, p)`` is the matched edge over base vertex ``i``, with
    ``m`` on the minus side.  ``base`` is the complex obtained by
    collapsing every matched pair.
    """

    hyperplane: int
    cubes: tuple[tuple[int, ...], ...]
    pairs: tuple[tuple[int, int], ...]
    base: CubeComplex

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for pair in self.pairs for v in pair)

    @property
    def matching(self) -> dict[int, int]:
        out = {}
        for m, p in self.pairs:
            out[m] = p
            out[p] = m
        return out

    def to_dict(self) -> dict:
        return {
            "hyperplane": self.hyperplane,
            "cubes": [list(k) for k in self.cubes],
            "pairs": [list(p) for p in self.pairs],
            "base_vertices": self.base.vertex_count,
            "base_cubes": [list(c.corners) for c in self.base.cubes() if c.dim >= 1],
        }


def carrier(X: CubeComplex, H) -> Carrier:
    wid = _wall_id(X, H)
    data = _wall_data(X)
    pair = halfspaces(X, wid)
    if not pair.separating:
        raise ProductDecompositionFailure(
            "hyperplane does not separate", hyperplane=wid, components=len(pair.components)
        )
    cubes = sorted(data.wall_cubes[wid], key=lambda c: c.key)
    partner: dict[int, int] = {}
    low_faces = []
    for c in cubes:
        ws = data.cube_walls[c.key]
        coords = [i for i, w in enumerate(ws) if w == wid]
        if len(coords) != 1:
            raise ProductDecompositionFailure("cube meets the hyperplane twice", cube=list(c.corners))
        i = coords[0]
        for u, v in c.directed_edges(i):
            for a, b in ((u, v), (v, u)):
                if partner.setdefault(a, b) != b:
                    raise ProductDecompositionFailure(
                        f"vertex {a} has two partners", cube=list(c.corners), vertex=a
                    )
            if (u in pair.minus) == (v in pair.minus):
                raise ProductDecompositionFailure("matched pair on one side", cube=list(c.corners))
        bit = 0 if c.corners[0] in pair.minus else 1
        low_faces.append(c.face(i, bit))

    minus_side = sorted(v for v in partner if v in pair.minus)
    index = {v: k for k, v in enumerate(minus_side)}
    pairs = tuple((v, partner[v]) for v in minus_side)

    # the two boundary copies must be isomorphic via the matching
    for copy in (minus_side, sorted(partner[v] for v in minus_side)):
        inside = set(copy)
        for u in copy:
            for w in X.adjacency[u]:
                if w in inside and not X.has_edge(partner[u], partner[w]):
                    raise ProductDecompositionFailure(
                        "matching does not preserve an edge", cube=[u, w], image=[partner[u], partner[w]]
                    )
        for u in copy:
            for c in X.cubes_at(u):
                if c.dim >= 2 and c.corners[0] == u and all(v in inside for v in c.corners):
                    if X.cube([partner[v] for v in c.corners]) is None:
                        raise ProductDecompositionFailure("matching does not preserve a cube", cube=list(c.corners))

    base = build_complex([[index[v] for v in f.corners] for f in low_faces], vertex_count=len(pairs))
    return Carrier(wid, tuple(c.key for c in cubes), pairs, base)
