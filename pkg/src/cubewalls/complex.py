"""Finite cubical complexes: construction, links, flag test and CAT(0) certification.

A cube is stored by its corner tuple: the vertex at corner label
``b_{k-1}...b_0`` sits at index ``sum(b_i * 2**i)``.  Complexes are built
from maximal cubes; every face is derived and keyed by its sorted vertex
set, so a vertex set determines at most one cube.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    BadParameter,
    DuplicateCorner,
    FaceMismatch,
    NonCubeSize,
    UnknownVertex,
)


@dataclass(frozen=True)
class Cube:
    corners: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.corners).bit_length() - 1

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.corners))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.corners)

    def label(self, v: int) -> int:
        return self.corners.index(v)

    def face(self, coord: int, bit: int) -> "Cube":
        """The codimension-one face with coordinate ``coord`` fixed to ``bit``."""
        low = (1 << coord) - 1
        out = []
        for j in range(len(self.corners) // 2):
            # insert ``bit`` at position ``coord`` of the reduced label
            lab = (j & low) | (bit << coord) | ((j & ~low) << 1)
            out.append(self.corners[lab])
        return Cube(tuple(out))

    def faces(self):
        for coord in range(self.dim):
            for bit in (0, 1):
                yield self.face(coord, bit)

    def directed_edges(self, coord: int) -> list[tuple[int, int]]:
        """Edges parallel to ``coord``, directed from bit 0 to bit 1."""
        step = 1 << coord
        return [
            (self.corners[lab], self.corners[lab | step])
            for lab in range(len(self.corners))
            if not lab & step
        ]

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(
            frozenset(e) for coord in range(self.dim) for e in self.directed_edges(coord)
        )

    def coordinate_of(self, u: int, v: int) -> int | None:
        """The coordinate along which ``u`` and ``v`` are adjacent in this cube, if any."""
        diff = self.label(u) ^ self.label(v)
        if diff and not diff & (diff - 1):
            return diff.bit_length() - 1
        return None


def _check_corners(corners) -> Cube:
    corners = tuple(int(c) for c in corners)
    size = len(corners)
    if size == 0 or size & (size - 1):
        raise NonCubeSize(f"{size} corners is not a power of two", corners=list(corners))
    if len(set(corners)) != size:
        seen, dup = set(), None
        for c in corners:
            if c in seen:
                dup = c
                break
            seen.add(c)
        raise DuplicateCorner(f"vertex {dup} repeated in cube", corners=list(corners), vertex=dup)
    return Cube(corners)


class CubeComplex:
    """Immutable finite cubical complex.

    Use :func:`build_complex` (or the generators) rather than calling the
    constructor directly.  Derived data such as distances and hyperplanes
    is computed lazily and cached on the instance.
    """

    def __init__(self, vertex_count: int, cubes: dict, input_cubes: tuple):
        self.vertex_count = vertex_count
        self._cubes = cubes
        self.input_cubes = input_cubes
        self._memo: dict = {}

        by_dim: dict[int, list[Cube]] = {}
        for key in sorted(cubes):
            c = cubes[key]
            by_dim.setdefault(c.dim, []).append(c)
        self._by_dim = by_dim

        adj = [set() for _ in range(vertex_count)]
        for c in by_dim.get(1, ()):
            u, v = c.corners
            adj[u].add(v)
            adj[v].add(u)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)

        at: list[list[Cube]] = [[] for _ in range(vertex_count)]
        for key in sorted(cubes):
            for v in key:
                at[v].append(cubes[key])
        self._cubes_at = tuple(tuple(a) for a in at)

    def __repr__(self):
        counts = {d: len(cs) for d, cs in sorted(self._by_dim.items())}
        return f"CubeComplex(vertices={self.vertex_count}, cubes={counts})"

    def memo(self, name, fn):
        """Cache ``fn()`` under ``name``; used by the analysis modules."""
        try:
            return self._memo[name]
        except KeyError:
            value = self._memo[name] = fn()
            return value

    @property
    def dimension(self) -> int:
        return max(self._by_dim, default=-1)

    def cubes(self, dim: int | None = None) -> list[Cube]:
        if dim is None:
            return [self._cubes[k] for k in sorted(self._cubes, key=lambda k: (len(k), k))]
        return list(self._by_dim.get(dim, ()))

    def cube(self, vertices) -> Cube | None:
        return self._cubes.get(tuple(sorted(vertices)))

    def cubes_at(self, v: int) -> tuple[Cube, ...]:
        self.check_vertex(v)
        return self._cubes_at[v]

    def count(self, dim: int) -> int:
        return len(self._by_dim.get(dim, ()))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [c.key for c in self._by_dim.get(1, ())]

    @property
    def squares(self) -> list[Cube]:
        return self.cubes(2)

    def edge_id(self, u: int, v: int) -> int | None:
        index = self.memo("edge_index", lambda: {e: i for i, e in enumerate(self.edges)})
        return index.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._cubes and u != v

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self.adjacency[v]

    def check_vertex(self, v) -> int:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.vertex_count:
            raise UnknownVertex(f"no vertex {v!r}", vertex=v, vertex_count=self.vertex_count)
        return int(v)

    def bfs(self, source: int) -> np.ndarray:
        """Distances from ``source`` in the 1-skeleton; -1 marks unreachable vertices."""
        dist = np.full(self.vertex_count, -1, dtype=np.int64)
        dist[source] = 0
        queue = deque([source])
        adj = self.adjacency
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du
                    queue.append(w)
        return dist

    @property
    def distances(self) -> np.ndarray:
        """All-pairs 1-skeleton distance matrix (read-only)."""

        def compute():
            d = np.stack([self.bfs(v) for v in range(self.vertex_count)]) if self.vertex_count else np.zeros((0, 0), dtype=np.int64)
            d.setflags(write=False)
            return d

        return self.memo("distances", compute)

    @property
    def components(self) -> list[frozenset[int]]:
        def compute():
            seen = [False] * self.vertex_count
            comps = []
            for s in range(self.vertex_count):
                if seen[s]:
                    continue
                comp, queue = [s], deque([s])
                seen[s] = True
                while queue:
                    u = queue.popleft()
                    for w in self.adjacency[u]:
                        if not seen[w]:
                            seen[w] = True
                            comp.append(w)
                            queue.append(w)
                comps.append(frozenset(comp))
            return comps

        return self.memo("components", compute)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def relabel(self, perm) -> "CubeComplex":
        """The isomorphic complex with vertex ``v`` renamed ``perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.vertex_count)):
            raise BadParameter("relabeling must be a permutation", perm=perm)
        return build_complex(
            [[perm[v] for v in cube] for cube in self.input_cubes], vertex_count=self.vertex_count
        )


def build_complex(maximal_cubes, vertex_count: int | None = None) -> CubeComplex:
    """Build a face-closed complex from a list of corner lists.

    Parameters
    ----------
    maximal_cubes : iterable of sequences of int
        Corner lists in little-endian label order.  Listing non-maximal
        cubes is allowed; they must agree with the faces derived from the
        other cubes.
    vertex_count : int, optional
        Number of vertices.  Defaults to one more than the largest id, so
        isolated vertices can only be declared through this argument.
    """
    checked = [_check_corners(c) for c in maximal_cubes]
    top = max((max(c.corners) for c in checked), default=-1)
    if vertex_count is None:
        vertex_count = top + 1
    if vertex_count < 0:
        raise BadParameter("negative vertex count", vertex_count=vertex_count)
    for c in checked:
        bad = [v for v in c.corners if not 0 <= v < vertex_count]
        if bad:
            raise UnknownVertex(f"vertex {bad[0]} out of range", vertex=bad[0], corners=list(c.corners))

    stored: dict[tuple[int, ...], Cube] = {(v,): Cube((v,)) for v in range(vertex_count)}

    def add(cube: Cube, parent: Cube | None):
        old = stored.get(cube.key)
        if old is not None:
            if old.dim and old.edge_set() != cube.edge_set():
                raise FaceMismatch(
                    "two cubes on the same vertex set disagree",
                    vertices=list(cube.key),
                    first=list(old.corners),
                    second=list(cube.corners),
                    parent=list(parent.corners) if parent else None,
                )
            return
        stored[cube.key] = cube
        for f in cube.faces():
            add(f, cube)

    for c in checked:
        add(c, None)
    return CubeComplex(vertex_count, stored, tuple(tuple(c.corners) for c in checked))


# --- links -----------------------------------------------------------------


@dataclass(frozen=True)
class LinkComplex:
    """Simplicial link of a vertex.

    Link vertices are named by the neighbouring vertex of ``base`` along
    the corresponding edge.  ``duplicates`` lists simplices contributed by
    more than one cube, which makes the link a non-simplicial cell complex.
    """

    base: int
    simplices: frozenset[frozenset[int]]
    duplicates: tuple[frozenset[int], ...] = ()

    @property
    def vertices(self) -> list[int]:
        return sorted(next(iter(s)) for s in self.simplices if len(s) == 1)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(s)) for s in self.simplices if len(s) == 2)

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1


def link(X: CubeComplex, v: int) -> LinkComplex:
    v = X.check_vertex(v)
    seen: dict[frozenset[int], int] = {}
    for c in X.cubes_at(v):
        if c.dim == 0:
            continue
        lab = c.label(v)
        simplex = frozenset(c.corners[lab ^ (1 << i)] for i in range(c.dim))
        seen[simplex] = seen.get(simplex, 0) + 1
    dups = tuple(sorted((s for s, k in seen.items() if k > 1), key=lambda s: sorted(s)))
    return LinkComplex(v, frozenset(seen), dups)


def flag_violation(L: LinkComplex) -> tuple[int, ...] | None:
    """A clique of the 1-skeleton of ``L`` that does not span a simplex, or None.

    Grows simplices one vertex at a time: every clique is reached from a
    smaller clique, which is a simplex whenever no violation was found so far.
    """
    nbrs: dict[int, set[int]] = {u: set() for u in L.vertices}
    for a, b in L.edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    for s in sorted(L.simplices, key=lambda s: (len(s), sorted(s))):
        common = set.intersection(*(nbrs[u] for u in s)) - s
        for u in sorted(common):
            if s | {u} not in L.simplices:
                return tuple(sorted(s | {u}))
    return None


def is_flag(L: LinkComplex) -> bool:
    return flag_violation(L) is None


# --- certification -----------------------------------------------------------


@dataclass
class CertificationReport:
    connected: bool
    flag_links: bool | None = None
    unique_medians: bool | None = None
    square_complete: bool | None = None
    sampled: bool = False
    triples_checked: int = 0
    witness: dict | None = None

    @property
    def certified(self) -> bool:
        return bool(self.connected and self.flag_links and self.unique_medians and self.square_complete)

    def to_dict(self) -> dict:
        return {
            "certified": self.certified,
            "connected": self.connected,
            "flag_links": self.flag_links,
            "unique_medians": self.unique_medians,
            "square_complete": self.square_complete,
            "sampled": self.sampled,
            "triples_checked": self.triples_checked,
            "witness": self.witness,
        }


def _interval_bits(D: np.ndarray) -> np.ndarray:
    """Packed interval tensor: bit w of row [x, y] is set iff d(x,w)+d(w,y) = d(x,y)."""
    n = D.shape[0]
    words = (n + 63) // 64
    out = np.zeros((n, n, words), dtype=np.uint64)
    for x in range(n):
        member = (D[x][None, :] + D) == D[x][:, None]
        packed = np.packbits(member, axis=1, bitorder="little")
        pad = words * 8 - packed.shape[1]
        if pad:
            packed = np.pad(packed, ((0, 0), (0, pad)))
        out[x] = packed.view(np.uint64)
    return out


def _median_count(D: np.ndarray, x: int, y: int, z: int) -> int:
    ixy = D[x] + D[y] == D[x, y]
    iyz = D[y] + D[z] == D[y, z]
    ixz = D[x] + D[z] == D[x, z]
    return int(np.count_nonzero(ixy & iyz & ixz))


def _check_unique_medians(D: np.ndarray, budget: int, samples: int, seed: int):
    """Return (ok, sampled, checked, witness_triple, count)."""
    n = D.shape[0]
    if n <= budget:
        bits = _interval_bits(D)
        checked = 0
        for x in range(n):
            for y in range(x + 1, n - 1):
                zs = np.arange(y + 1, n)
                common = bits[x, y][None, :] & bits[y, y + 1 :] & bits[x, y + 1 :]
                counts = np.bitwise_count(common).sum(axis=1)
                checked += len(zs)
                bad = np.nonzero(counts != 1)[0]
                if len(bad):
                    z = int(zs[bad[0]])
                    return False, False, checked, (x, y, z), int(counts[bad[0]])
        return True, False, checked, None, 1
    rng = np.random.default_rng(seed)
    for i in range(samples):
        x, y, z = (int(t) for t in rng.choice(n, size=3, replace=False))
        k = _median_count(D, x, y, z)
        if k != 1:
            return False, True, i + 1, tuple(sorted((x, y, z))), k
    return True, True, samples, None, 1


def _four_cycles(X: CubeComplex):
    adj = X.adjacency
    for a in range(X.vertex_count):
        for b, c in combinations(adj[a], 2):
            for d in set(adj[b]) & set(adj[c]):
                if d > a and b > a and c > a:
                    yield a, b, d, c


def certify_cat0(
    X: CubeComplex, vertex_budget: int = 400, samples: int = 20000, seed: int = 0
) -> CertificationReport:
    """Decide whether ``X`` is CAT(0).

    Checks, in order: connectivity, flag vertex links, unique medians of
    all vertex triples in the 1-skeleton, and that every 4-cycle of the
    1-skeleton bounds a square.  Later checks only run if the earlier ones
    pass; the first failure is recorded in ``witness``.  Above
    ``vertex_budget`` vertices the median check samples random triples.
    """
    report = CertificationReport(connected=X.is_connected)
    if not report.connected:
        comps = X.components
        report.witness = {"check": "connected", "components": [sorted(c) for c in comps[:2]]}
        return report

    for v in range(X.vertex_count):
        L = link(X, v)
        if L.duplicates:
            report.flag_links = False
            report.witness = {"check": "flag_links", "vertex": v, "duplicate_simplex": sorted(L.duplicates[0])}
            return report
        clique = flag_violation(L)
        if clique is not None:
            report.flag_links = False
            report.witness = {"check": "flag_links", "vertex": v, "clique": list(clique)}
            return report
    report.flag_links = True

    ok, sampled, checked, triple, count = _check_unique_medians(X.distances, vertex_budget, samples, seed)
    report.unique_medians = ok
    report.sampled = sampled
    report.triples_checked = checked
    if not ok:
        report.witness = {"check": "unique_medians", "triple": list(triple), "medians": count}
        return report

    for cyc in _four_cycles(X):
        if X.cube(cyc) is None:
            report.square_complete = False
            report.witness = {"check": "square_complete", "cycle": list(cyc)}
            return report
    report.square_complete = True
    return report


def is_certified(X: CubeComplex) -> bool:
    """Cached ``certify_cat0(X).certified``."""
    return X.memo("certified", lambda: certify_cat0(X).certified)
