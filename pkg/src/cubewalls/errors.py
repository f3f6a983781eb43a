"""Exception hierarchy.

Every error carries a ``witness`` mapping with the offending data so the
CLI can report it as JSON.
"""

from __future__ import annotations


class CubeComplexError(Exception):
    """Base class for all errors raised by cubewalls."""

    def __init__(self, message: str = "", **witness):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (frozenset, set)):
        return sorted(_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return obj.item()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


# construction / validation
class DuplicateCorner(CubeComplexError):
    """A cube lists the same vertex at two corners."""


class FaceMismatch(CubeComplexError):
    """Two cubes induce inconsistent structure on a shared vertex set."""


class NonCubeSize(CubeComplexError):
    """A corner list whose length is not a power of two."""


class UnknownVertex(CubeComplexError):
    """A vertex id outside [0, n)."""


class BadParameter(CubeComplexError):
    """Invalid generator or query parameter."""


class Disconnected(CubeComplexError):
    """The queried vertices lie in different components."""


# hyperplanes
class SeparationAnomaly(CubeComplexError):
    """A hyperplane whose complement does not have exactly two components."""


class ProductDecompositionFailure(CubeComplexError):
    """A carrier that does not split as base x [0,1]."""


class OneSidedWall(CubeComplexError):
    """An orientation class containing both directions of one edge."""


class SameWall(CubeComplexError):
    """Two arguments name the same hyperplane."""


class NoCommonCube(CubeComplexError):
    """No cube is dual to all of the given hyperplanes."""


class InvariantViolation(CubeComplexError):
    """A structural property guaranteed on CAT(0) complexes failed to hold."""


# paths
class BrokenPath(CubeComplexError):
    """Consecutive steps do not share an endpoint."""


class NotAnEdge(CubeComplexError):
    """A step is not an edge of the complex."""


class NoCommonSquare(CubeComplexError):
    """Two consecutive steps do not span a square."""


class CapZero(CubeComplexError):
    """Enumeration cap is zero but geodesics exist."""


# medians
class NotCertified(CubeComplexError):
    """The operation requires a certified CAT(0) complex."""


class NotConvex(CubeComplexError):
    """A vertex set that is not interval-convex."""


class EmptySet(CubeComplexError):
    """An empty vertex set where a non-empty one is required."""


# walls
class NotCellular(CubeComplexError):
    """A vertex permutation that does not map cubes to cubes."""


# cli / io
class ParseError(CubeComplexError):
    """Malformed complex file."""


class UsageError(CubeComplexError):
    """Bad command line."""
