"""Complex file format.

A complex file is UTF-8 JSON::

    {"vertices": 8, "maximal_cubes": [[0, 1, 2, 3, 4, 5, 6, 7]]}

Corner lists use little-endian label order.  :func:`dumps` writes the
canonical form (keys in that order, default separators, trailing newline),
and ``dumps(loads(text)) == text`` for any canonical document.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complex import CubeComplex, build_complex
from .errors import ParseError


def loads(text: str) -> CubeComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno, offset=exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", line=1, column=1, offset=0)
    missing = [k for k in ("vertices", "maximal_cubes") if k not in doc]
    if missing:
        raise ParseError(f"missing field {missing[0]!r}", field=missing[0])
    n = doc["vertices"]
    cubes = doc["maximal_cubes"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("'vertices' must be a non-negative integer", field="vertices")
    if not isinstance(cubes, list) or not all(
        isinstance(c, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in c) for c in cubes
    ):
        raise ParseError("'maximal_cubes' must be a list of integer lists", field="maximal_cubes")
    return build_complex(cubes, vertex_count=n)


def dumps(X: CubeComplex) -> str:
    doc = {"vertices": X.vertex_count, "maximal_cubes": [list(c) for c in X.input_cubes]}
    return json.dumps(doc) + "\n"


def load(path) -> CubeComplex:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(X: CubeComplex, path) -> None:
    Path(path).write_text(dumps(X), encoding="utf-8")
