"""Geodesic intervals, medians and gate projections on vertex sets.

The median is computed by walking the third point towards the other two:
reorder geodesics by corner moves until both start with the same edge,
step along it, and repeat until one point lies between the other two.
Every corner move is logged, so a run can be replayed and audited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .complex import CubeComplex, is_certified
from .errors import EmptySet, InvariantViolation, NotCertified, NotConvex
from .hyperplanes import halfspaces, hyperplanes, side_matrix, wall_of_edge
from .paths import EdgePath, _corner_index, _same_component, count_geodesics, distance, greedy_geodesic


@dataclass(frozen=True)
class Interval:
    endpoints: tuple[int, int]
    members: frozenset[int]

    def __contains__(self, v):
        return v in self.members

    def __len__(self):
        return len(self.members)

    def to_dict(self) -> dict:
        return {"endpoints": list(self.endpoints), "members": sorted(self.members)}


def _wall_interval(S: np.ndarray, x: int, y: int) -> np.ndarray:
    """Boolean mask of vertices z not separated from {x, y} by any wall that fails to separate x, y."""
    agree = S[:, x] == S[:, y]
    return np.all(S[agree] == S[agree, x][:, None], axis=0)


def interval(X: CubeComplex, x: int, y: int) -> Interval:
    """Vertices on some geodesic from ``x`` to ``y``.

    Membership uses the wall criterion and is cross-checked against
    d(x, z) + d(z, y) = d(x, y).
    """
    _same_component(X, x, y)
    mask = _wall_interval(side_matrix(X), x, y)
    D = X.distances
    if not np.array_equal(mask, D[x] + D[y] == D[x, y]):
        bad = int(np.nonzero(mask != (D[x] + D[y] == D[x, y]))[0][0])
        raise InvariantViolation("wall interval disagrees with distance interval", endpoints=[x, y], vertex=bad)
    return Interval((x, y), frozenset(int(z) for z in np.nonzero(mask)[0]))


def interval_rows(X: CubeComplex, x: int) -> np.ndarray:
    """``M[y, z]`` is True iff z lies in the interval [x, y] (wall criterion)."""
    S = side_matrix(X).astype(np.float32)
    sx = S[:, x][:, None]
    agree = (S == sx).astype(np.float32)  # wall w keeps x and y together
    off = (S != sx).astype(np.float32)  # z is across wall w from x
    return (agree.T @ off) == 0


def interval_tensor(X: CubeComplex) -> np.ndarray:
    """``T[x, y, z]`` for all triples; memory is n**3 bytes."""

    def compute():
        T = np.stack([interval_rows(X, x) for x in range(X.vertex_count)])
        T.setflags(write=False)
        return T

    return X.memo("interval_tensor", compute)


def distance_interval_tensor(X: CubeComplex) -> np.ndarray:
    """``T[x, y, z]`` iff d(x, z) + d(z, y) = d(x, y); needs no hyperplanes."""
    D = X.distances
    return np.stack([(D[x][None, :] + D) == D[x][:, None] for x in range(X.vertex_count)])


# --- medians --------------------------------------------------------------------------


@dataclass(frozen=True)
class MoveRecord:
    """One step of the median computation.

    ``kind`` is ``"corner"`` for a corner move on the geodesic towards
    ``target`` at position ``index``, or ``"advance"`` when the moving
    point steps along the shared first edge.
    """

    kind: str
    target: str | None
    index: int | None
    before: tuple[tuple[int, int], ...]
    after: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "target": self.target,
            "index": self.index,
            "before": [list(s) for s in self.before],
            "after": [list(s) for s in self.after],
        }


@dataclass(frozen=True)
class MedianCertificate:
    triple: tuple[int, int, int]
    median: int
    move_log: tuple[MoveRecord, ...] = ()

    def to_dict(self, log: bool = True) -> dict:
        out = {"triple": list(self.triple), "median": self.median, "moves": len(self.move_log)}
        if log:
            out["move_log"] = [m.to_dict() for m in self.move_log]
        return out


def _swap(p: EdgePath, i: int, corner: dict) -> EdgePath:
    (a, b), (_, c) = p.steps[i], p.steps[i + 1]
    d = corner.get((a, b, c))
    if d is None:
        raise InvariantViolation("crossing hyperplanes without a common square", corner=[a, b, c])
    return EdgePath(p.start, p.steps[:i] + ((a, d), (d, c)) + p.steps[i + 2 :])


def _reorder(X, p, first, target, log, corner, rng):
    """Corner-move ``p`` until every step crossing a wall in ``first`` precedes the others."""
    seq = [wall_of_edge(X, u, v) for u, v in p.steps]
    while True:
        bad = [i for i in range(len(seq) - 1) if seq[i] not in first and seq[i + 1] in first]
        if not bad:
            return p
        i = bad[0] if rng is None else bad[int(rng.integers(len(bad)))]
        q = _swap(p, i, corner)
        log.append(MoveRecord("corner", target, i, p.steps[i : i + 2], q.steps[i : i + 2]))
        seq[i], seq[i + 1] = seq[i + 1], seq[i]
        p = q


def _random_geodesic(X, u, v, rng) -> EdgePath:
    S = side_matrix(X)
    target = S[:, v]
    at, steps = u, []
    while at != v:
        options = [w for w in X.adjacency[at] if S[wall_of_edge(X, at, w), at] != target[wall_of_edge(X, at, w)]]
        w = options[int(rng.integers(len(options)))]
        steps.append((at, w))
        at = w
    return EdgePath(u, tuple(steps))


def median(X: CubeComplex, x: int, y: int, z: int, rng=None) -> MedianCertificate:
    """The unique vertex in [x, y], [y, z] and [x, z].

    Parameters
    ----------
    rng : numpy Generator or seed, optional
        When given, the starting geodesics and the order of corner moves
        are chosen at random instead of greedily and earliest-first.  The
        median does not depend on these choices.
    """
    for v in (x, y, z):
        X.check_vertex(v)
    if not is_certified(X):
        raise NotCertified("median requires a CAT(0) complex")
    if rng is not None:
        rng = np.random.default_rng(rng)
    S = side_matrix(X)
    corner = _corner_index(X)
    log: list[MoveRecord] = []

    def between(a, b, c):
        # c lies on a geodesic from a to b
        agree = S[:, a] == S[:, b]
        return bool(np.all(S[agree, c] == S[agree, a]))

    a = z
    while True:
        if between(x, y, a):
            m = a
            break
        if between(y, a, x):
            m = x
            break
        if between(x, a, y):
            m = y
            break
        if rng is None:
            px, py = greedy_geodesic(X, a, x), greedy_geodesic(X, a, y)
        else:
            px, py = _random_geodesic(X, a, x, rng), _random_geodesic(X, a, y, rng)
        sx, sy, sa = S[:, x], S[:, y], S[:, a]
        xy_walls = set(int(w) for w in np.nonzero((sx == sy) & (sx != sa))[0])
        px = _reorder(X, px, xy_walls, "x", log, corner, rng)
        py = _reorder(X, py, xy_walls, "y", log, corner, rng)
        h1 = wall_of_edge(X, *px.steps[0])
        py = _reorder(X, py, {h1}, "y", log, corner, None)
        if px.steps[0] != py.steps[0]:
            raise InvariantViolation("geodesics do not share a first edge", x_path=px.to_dict(), y_path=py.to_dict())
        log.append(MoveRecord("advance", None, None, (), (px.steps[0],)))
        a = px.steps[0][1]

    D = X.distances
    for p, q in ((x, y), (y, z), (x, z)):
        if D[p, m] + D[m, q] != D[p, q]:
            raise InvariantViolation("median outside an interval", triple=[x, y, z], median=m, interval=[p, q])
    return MedianCertificate((x, y, z), m, tuple(log))


def brute_force_medians(X: CubeComplex, x: int, y: int, z: int) -> list[int]:
    """Every vertex in all three distance intervals (the oracle)."""
    D = X.distances
    mask = (D[x] + D[y] == D[x, y]) & (D[y] + D[z] == D[y, z]) & (D[x] + D[z] == D[x, z])
    return [int(v) for v in np.nonzero(mask)[0]]


# --- axioms -------------------------------------------------------------------------------


@dataclass
class AxiomResult:
    passed: bool
    checked: int
    witness: dict | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "witness": self.witness, "note": self.note}


@dataclass
class AxiomReport:
    results: dict[str, AxiomResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def to_dict(self) -> dict:
        return {"passed": self.passed, **{k: v.to_dict() for k, v in self.results.items()}}


def check_median_axioms(X: CubeComplex, sample=None, bound_pairs: int = 64, seed: int = 0) -> AxiomReport:
    """Check the median-algebra axioms on the vertex set.

    With ``sample=None`` every triple is checked, using the full interval
    tensor (n**3 memory).  Otherwise only the given triples are checked.
    Axiom (4) uses the wall intervals; discreteness is checked by counting
    geodesics for up to ``bound_pairs`` random pairs against n!.
    """
    n = X.vertex_count
    report = AxiomReport()
    # wall intervals are meaningless when some hyperplane fails to separate
    by_walls = all(halfspaces(X, H.id).separating for H in hyperplanes(X))
    if sample is None:
        T = interval_tensor(X) if by_walls else distance_interval_tensor(X)
        _exhaustive_axioms(T, report)
    else:
        S = side_matrix(X)
        D = X.distances
        triples = [tuple(int(v) for v in t) for t in sample]
        cache = {}

        def I(a, b):
            key = (a, b)
            if key not in cache:
                cache[key] = _wall_interval(S, a, b) if by_walls else D[a] + D[b] == D[a, b]
            return cache[key]

        _sampled_axioms(I, triples, report)
    if not by_walls:
        report.results["4"].note = "intervals from 1-skeleton distances; hyperplanes do not separate"

    rng = np.random.default_rng(seed)
    pairs = [(int(a), int(b)) for a, b in rng.integers(0, n, size=(bound_pairs, 2))] if n else []
    worst = None
    for a, b in pairs:
        d = int(X.distances[a, b]) if not by_walls else distance(X, a, b)
        if d < 0:
            continue
        k = count_geodesics(X, a, b)
        if k > math.factorial(d):
            worst = {"pair": [a, b], "distance": d, "geodesics": k}
            break
    report.results["discrete"] = AxiomResult(
        worst is None, len(pairs), worst, "intervals are finite; geodesic counts checked against n!"
    )
    return report


def _exhaustive_axioms(T: np.ndarray, report: AxiomReport) -> None:
    n = T.shape[0]
    eye = np.eye(n, dtype=bool)
    diag = T[np.arange(n), np.arange(n)]
    bad = np.nonzero(~np.all(diag == eye, axis=1))[0]
    report.results["1"] = AxiomResult(
        not len(bad), n, {"x": int(bad[0])} if len(bad) else None
    )

    asym = np.nonzero(np.any(T != T.transpose(1, 0, 2), axis=2))
    report.results["2"] = AxiomResult(
        not len(asym[0]),
        n * n,
        {"x": int(asym[0][0]), "y": int(asym[1][0])} if len(asym[0]) else None,
        "symmetric by construction",
    )

    wit3 = None
    for x in range(n):
        M = T[x].astype(np.float32)
        outside = (~T[x]).astype(np.float32)
        leak = (outside @ M.T) > 0  # [y, z]: some w in [x, z] outside [x, y]
        viol = np.nonzero(T[x] & leak)
        if len(viol[0]):
            wit3 = {"x": x, "y": int(viol[0][0]), "z": int(viol[1][0])}
            break
    report.results["3"] = AxiomResult(wit3 is None, n * n * n, wit3)

    wit4 = None
    for x in range(n):
        Tx = T[x]
        for y in range(x + 1, n):
            counts = (T[y] & Tx).astype(np.int32) @ Tx[y].astype(np.int32)
            counts[[x, y]] = 1
            off = np.nonzero(counts != 1)[0]
            if len(off):
                wit4 = {"triple": [x, y, int(off[0])], "medians": int(counts[off[0]])}
                break
        if wit4:
            break
    report.results["4"] = AxiomResult(wit4 is None, n * (n - 1) // 2 * n, wit4)


def _sampled_axioms(I, triples, report: AxiomReport) -> None:
    wit = {k: None for k in "1234"}
    for t in triples:
        for x in t:
            m = I(x, x)
            if wit["1"] is None and (m.sum() != 1 or not m[x]):
                wit["1"] = {"x": x}
        for a, b in permutations(t, 2):
            if wit["2"] is None and not np.array_equal(I(a, b), I(b, a)):
                wit["2"] = {"x": a, "y": b}
        for a, b in permutations(t, 2):
            for c in t:
                if I(a, b)[c] and wit["3"] is None and np.any(I(a, c) & ~I(a, b)):
                    wit["3"] = {"x": a, "y": b, "z": c}
        x, y, z = t
        k = int(np.count_nonzero(I(x, y) & I(y, z) & I(x, z)))
        if k != 1 and wit["4"] is None:
            wit["4"] = {"triple": [x, y, z], "medians": k}
    notes = {"2": "symmetric by construction"}
    for k in "1234":
        report.results[k] = AxiomResult(wit[k] is None, len(triples), wit[k], notes.get(k))


# --- gate projection ----------------------------------------------------------------------


def convexity_violation(X: CubeComplex, C) -> tuple[int, int, int] | None:
    """(a, b, z) with a, b in C and z in [a, b] outside C, or None if C is convex."""
    members = sorted(set(int(v) for v in C))
    inside = np.zeros(X.vertex_count, dtype=bool)
    inside[members] = True
    idx = np.array(members)
    for a in members:
        rows = interval_rows(X, a)[idx]
        leak = rows & ~inside[None, :]
        hit = np.nonzero(leak)
        if len(hit[0]):
            return a, int(idx[hit[0][0]]), int(hit[1][0])
    return None


def gate_project(X: CubeComplex, v: int, C) -> int:
    """The unique vertex of the convex set ``C`` nearest to ``v``."""
    X.check_vertex(v)
    members = sorted(set(int(u) for u in C))
    if not members:
        raise EmptySet("cannot project onto an empty set")
    for u in members:
        X.check_vertex(u)
    bad = convexity_violation(X, members)
    if bad is not None:
        a, b, z = bad
        raise NotConvex("set is not interval-convex", interval=[a, b], outside=z)
    D = X.distances
    dist = D[v, members]
    if np.any(dist < 0):
        raise EmptySet("set does not meet the component of v", vertex=v)
    best = np.nonzero(dist == dist.min())[0]
    if len(best) != 1:
        raise InvariantViolation("nearest point is not unique", vertex=v, nearest=[members[i] for i in best])
    return members[int(best[0])]
