"""Standard families of cube complexes and their symmetries."""

from __future__ import annotations

import numpy as np

from .complex import CubeComplex, build_complex, certify_cat0
from .errors import BadParameter


def _positive(name, value, minimum=1):
    if not isinstance(value, (int, np.integer)) or value < minimum:
        raise BadParameter(f"{name} must be an integer >= {minimum}", **{name: value})
    return int(value)


def grid_vertex(a: int, i: int, j: int) -> int:
    """Vertex id of lattice point (i, j) in ``grid(a, b)``."""
    return i + (a + 1) * j


def grid(a: int, b: int) -> CubeComplex:
    """The a x b box of unit squares; point (i, j) has id ``i + (a+1) j``."""
    a = _positive("a", a)
    b = _positive("b", b)
    squares = [
        [grid_vertex(a, i, j), grid_vertex(a, i + 1, j), grid_vertex(a, i, j + 1), grid_vertex(a, i + 1, j + 1)]
        for j in range(b)
        for i in range(a)
    ]
    return build_complex(squares, vertex_count=(a + 1) * (b + 1))


def hypercube(n: int) -> CubeComplex:
    n = _positive("n", n)
    return build_complex([list(range(2**n))])


def tree(edges, vertex_count: int | None = None) -> CubeComplex:
    """A 1-dimensional complex from an edge list, which must form a tree."""
    edges = [tuple(int(v) for v in e) for e in edges]
    n = vertex_count if vertex_count is not None else max((max(e) for e in edges), default=0) + 1
    if any(len(e) != 2 or e[0] == e[1] for e in edges):
        raise BadParameter("tree edges must join two distinct vertices", edges=edges)
    if len(edges) != n - 1:
        raise BadParameter(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}", edges=edges)
    parent = list(range(n))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise BadParameter("edge endpoint out of range", edge=[u, v])
        ru, rv = find(u), find(v)
        if ru == rv:
            raise BadParameter("edge list contains a cycle", edge=[u, v])
        parent[ru] = rv
    if n == 1:
        return build_complex([[0]])
    return build_complex([list(e) for e in edges], vertex_count=n)


def path(n: int) -> CubeComplex:
    """Path graph on ``n`` vertices 0 - 1 - ... - n-1."""
    n = _positive("n", n)
    return tree([(i, i + 1) for i in range(n - 1)], vertex_count=n)


def star(k: int) -> CubeComplex:
    """Star with centre 0 and ``k`` leaves; ``star(3)`` is the tripod."""
    k = _positive("k", k)
    return tree([(0, i) for i in range(1, k + 1)])


def random_tree_edges(n: int, rng=None) -> list[tuple[int, int]]:
    """Edges of a uniformly random labelled tree on ``n`` vertices (Pruefer decoding)."""
    n = _positive("n", n)
    rng = np.random.default_rng(rng)
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [int(v) for v in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = next(u for u in range(n) if degree[u] == 1)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return sorted(edges)


def random_tree(n: int, rng=None) -> CubeComplex:
    return tree(random_tree_edges(n, rng), vertex_count=n)


def product(X: CubeComplex, Y: CubeComplex, check: bool = True) -> CubeComplex:
    """Cartesian product; vertex (u, w) gets id ``u * |Y| + w``.

    With ``check`` both factors must certify as CAT(0).
    """
    if check:
        for name, Z in (("X", X), ("Y", Y)):
            report = certify_cat0(Z)
            if not report.certified:
                raise BadParameter(f"factor {name} is not CAT(0)", factor=name, witness=report.witness)
    m = Y.vertex_count
    top_x = _maximal(X)
    top_y = _maximal(Y)
    cubes = []
    for c in top_x:
        k = c.dim
        mask = (1 << k) - 1
        for d in top_y:
            size = len(c.corners) * len(d.corners)
            cubes.append([c.corners[lab & mask] * m + d.corners[lab >> k] for lab in range(size)])
    return build_complex(cubes, vertex_count=X.vertex_count * m)


def _maximal(X: CubeComplex):
    faces = set()
    for c in X.cubes():
        for f in c.faces():
            faces.add(f.key)
    return [c for c in X.cubes() if c.key not in faces]


def torus(a: int, b: int) -> CubeComplex:
    """The a x b square torus (opposite sides of the grid identified).

    Needs ``a, b >= 3`` so that cubes stay determined by their vertex sets.
    It is never CAT(0).
    """
    a = _positive("a", a, 3)
    b = _positive("b", b, 3)

    def vid(i, j):
        return (i % a) + a * (j % b)

    squares = [[vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)] for j in range(b) for i in range(a)]
    return build_complex(squares, vertex_count=a * b)


def three_squares_corner() -> CubeComplex:
    """Three squares pairwise sharing an edge at vertex 0 with no 3-cube.

    The link at 0 is an empty triangle, the basic non-flag example.
    """
    return build_complex([[0, 1, 2, 4], [0, 2, 3, 5], [0, 3, 1, 6]])


def generate(kind: str, *params) -> CubeComplex:
    """Dispatch on a generator name: grid, hypercube, tree, path, star, torus, product."""
    if kind == "grid":
        return grid(*params)
    if kind == "hypercube":
        return hypercube(*params)
    if kind == "tree":
        return tree(*params)
    if kind == "path":
        return path(*params)
    if kind == "star":
        return star(*params)
    if kind == "torus":
        return torus(*params)
    if kind == "product":
        return product(*params)
    raise BadParameter(f"unknown generator {kind!r}", kind=kind)


# --- symmetries ----------------------------------------------------------------


def hypercube_symmetries(n: int) -> list[list[int]]:
    """Generators of the full symmetry group of ``hypercube(n)``.

    The ``n`` wall reflections (flip one bit) followed by the ``n-1``
    adjacent coordinate swaps.
    """
    n = _positive("n", n)
    size = 2**n
    gens = [[v ^ (1 << i) for v in range(size)] for i in range(n)]
    for i in range(n - 1):
        def swap(v, i=i):
            bi, bj = (v >> i) & 1, (v >> (i + 1)) & 1
            return v & ~(0b11 << i) | (bi << (i + 1)) | (bj << i)
        gens.append([swap(v) for v in range(size)])
    return gens


def grid_symmetries(a: int, b: int) -> list[list[int]]:
    """Generators of the symmetry group of ``grid(a, b)``.

    The two axis reflections, plus the diagonal reflection when ``a == b``.
    """
    a = _positive("a", a)
    b = _positive("b", b)
    pts = [(i, j) for j in range(b + 1) for i in range(a + 1)]
    maps = [lambda i, j: (a - i, j), lambda i, j: (i, b - j)]
    if a == b:
        maps.append(lambda i, j: (j, i))
    return [[grid_vertex(a, *f(i, j)) for (i, j) in pts] for f in maps]

