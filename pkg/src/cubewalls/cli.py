"""Command-line entry point.

Every subcommand reads a complex file (``-i FILE``, default standard
input) and prints one JSON document.  Exit status: 0 success, 1 usage
error, 2 invalid input or failed check (the JSON carries the witness).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import generators, io
from .complex import certify_cat0
from .errors import CubeComplexError, UsageError
from .hyperplanes import (
    block_components,
    carrier,
    halfspaces,
    hyperplanes,
    marked_cube_census,
)
from .median import interval, median
from .paths import EdgePath, all_geodesics, crossing_sequence, distance, is_geodesic
from .walls import (
    OrientedWallBasis,
    cocycle,
    load_automorphism,
    properness_profile,
    wall_metric,
    wall_space,
)

SCHEMA_VERSION = "1"

VERBS = (
    "generate",
    "validate",
    "certify",
    "hyperplanes",
    "census",
    "halfspaces",
    "carrier",
    "blocks",
    "distance",
    "geodesic-check",
    "geodesics",
    "interval",
    "median",
    "walls",
    "cocycle",
    "properness",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubewalls", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help, needs_input=True):
        p = sub.add_parser(name, help=help)
        if needs_input:
            p.add_argument("-i", "--input", default="-", help="complex file, '-' for stdin")
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        return p

    p = verb("generate", "write a standard complex", needs_input=False)
    p.add_argument("kind", choices=["grid", "hypercube", "tree", "path", "star", "torus", "product"])
    p.add_argument("params", nargs="*")

    verb("validate", "check the file builds into a complex")
    p = verb("certify", "decide whether the complex is CAT(0)")
    p.add_argument("--budget", type=int, default=400)
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)

    verb("hyperplanes", "list hyperplanes")
    verb("census", "count marked cubes per dimension")
    p = verb("halfspaces", "half-space pairs")
    p.add_argument("--wall", type=int)
    p = verb("carrier", "carrier and product splitting of hyperplanes")
    p.add_argument("--wall", type=int)
    verb("blocks", "components of the block complex")

    p = verb("distance", "wall distance between two vertices")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)

    p = verb("geodesic-check", "check an edge-path given by direction-encoded edge ids")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.add_argument("steps", nargs="?", default="")

    p = verb("geodesics", "enumerate geodesic edge-paths")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.add_argument("--cap", type=int, default=10_000)

    p = verb("interval", "geodesic interval")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)

    p = verb("median", "median of three vertices")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.add_argument("z", type=int)
    p.add_argument("--log", action="store_true", help="include the corner-move log")

    verb("walls", "wall space and pairwise wall distances")

    p = verb("cocycle", "signed wall cocycle of an automorphism")
    p.add_argument("--perm", required=True, help="JSON array mapping vertex -> image")
    p.add_argument("--base", type=int, default=0)

    p = verb("properness", "displacements of group elements up to a word length")
    p.add_argument("--gens", required=True, help="JSON array of permutations")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--base", type=int, default=0)
    return parser


def _read_complex(path):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return io.loads(text)


def _read_json(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {what}: {exc.strerror}", path=path) from None
    except json.JSONDecodeError as exc:
        from .errors import ParseError

        raise ParseError(exc.msg, path=path, line=exc.lineno, column=exc.colno, offset=exc.pos) from None


def _int_params(params, count, kind):
    if len(params) != count:
        raise UsageError(f"{kind} takes {count} integer parameter(s)", params=params)
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"{kind} parameters must be integers", params=params) from None


def _generate(args):
    kind, params = args.kind, args.params
    if kind in ("grid", "torus"):
        X = generators.generate(kind, *_int_params(params, 2, kind))
    elif kind in ("hypercube", "path", "star"):
        X = generators.generate(kind, *_int_params(params, 1, kind))
    elif kind == "tree":
        if len(params) != 1:
            raise UsageError("tree takes one edge list like 0-1,1-2", params=params)
        try:
            edges = [tuple(int(v) for v in e.split("-")) for e in params[0].split(",") if e]
        except ValueError:
            raise UsageError("tree edges look like 0-1,1-2", params=params) from None
        X = generators.tree(edges)
    else:
        if len(params) != 2:
            raise UsageError("product takes two complex files", params=params)
        X = generators.product(io.load(params[0]), io.load(params[1]))
    return io.dumps(X)


def _decode_steps(X, u, text):
    edges = X.edges
    steps = []
    for token in filter(None, text.split(",")):
        try:
            code = int(token)
        except ValueError:
            raise UsageError(f"bad step {token!r}", step=token) from None
        k, back = divmod(code, 2)
        if not 0 <= k < len(edges) or code < 0:
            from .errors import NotAnEdge

            raise NotAnEdge(f"no edge with id {k}", step=code)
        a, b = edges[k]
        step = (b, a) if back else (a, b)
        steps.append(step)
    return EdgePath(u, tuple(steps))


def run(argv=None) -> tuple[int, str]:
    """Execute one command; returns (exit status, output text)."""
    pretty = False
    try:
        args = build_parser().parse_args(argv)
        pretty = args.pretty
        if args.verb == "generate":
            return 0, _generate(args)
        X = _read_complex(args.input)
        status, report = _dispatch(X, args)
    except UsageError as exc:
        status, report = 1, exc.to_dict()
    except CubeComplexError as exc:
        status, report = 2, exc.to_dict()
    except OSError as exc:
        status, report = 1, UsageError(f"cannot read input: {exc.strerror}").to_dict()
    report = {"schema_version": SCHEMA_VERSION, **report}
    return status, json.dumps(report, indent=2 if pretty else None, sort_keys=True) + "\n"


def _dispatch(X, args):
    verb = args.verb
    if verb == "validate":
        return 0, {
            "valid": True,
            "vertices": X.vertex_count,
            "dimension": X.dimension,
            "cubes": {str(d): X.count(d) for d in range(X.dimension + 1)},
            "connected": X.is_connected,
        }
    if verb == "certify":
        rep = certify_cat0(X, vertex_budget=args.budget, samples=args.samples, seed=args.seed)
        return (0 if rep.certified else 2), rep.to_dict()
    if verb == "hyperplanes":
        out = []
        for H in hyperplanes(X):
            pair = halfspaces(X, H.id)
            try:
                car = len(carrier(X, H.id).vertices)
            except CubeComplexError:
                car = None
            out.append(
                {
                    "id": H.id,
                    "dual_edges": [list(e) for e in H.edges],
                    "halfspace_sizes": [len(pair.minus), len(pair.plus)],
                    "carrier_size": car,
                    "orientable": H.two_sided,
                }
            )
        return 0, {"hyperplanes": out}
    if verb == "census":
        return 0, {"census": {str(d): k for d, k in sorted(marked_cube_census(X).items())}}
    if verb == "halfspaces":
        ids = [args.wall] if args.wall is not None else [H.id for H in hyperplanes(X)]
        return 0, {"halfspaces": [halfspaces(X, w).to_dict() for w in ids]}
    if verb == "carrier":
        ids = [args.wall] if args.wall is not None else [H.id for H in hyperplanes(X)]
        return 0, {"carriers": [carrier(X, w).to_dict() for w in ids]}
    if verb == "blocks":
        blocks = block_components(X)
        return 0, {
            "blocks": [
                {
                    "hyperplane": b.hyperplane,
                    "orientation": b.orientation,
                    "cells": len(b),
                    "counts": {str(d): k for d, k in sorted(b.counts().items())},
                }
                for b in blocks
            ],
            "total_cells": sum(len(b) for b in blocks),
        }
    if verb == "distance":
        return 0, {"u": args.u, "v": args.v, "distance": distance(X, args.u, args.v)}
    if verb == "geodesic-check":
        X.check_vertex(args.u)
        X.check_vertex(args.v)
        p = _decode_steps(X, args.u, args.steps)
        seq = crossing_sequence(X, p)
        ok_end = p.end == args.v
        return 0, {
            **p.to_dict(),
            "end": p.end,
            "reaches_target": ok_end,
            "crossing_sequence": seq,
            "length": len(p),
            "distance": distance(X, args.u, args.v),
            "is_geodesic": is_geodesic(X, p),
        }
    if verb == "geodesics":
        geo = all_geodesics(X, args.u, args.v, cap=args.cap)
        return 0, {
            "u": args.u,
            "v": args.v,
            "length": geo.length,
            "count": len(geo),
            "truncated": geo.truncated,
            "paths": [[list(s) for s in p.steps] for p in geo.paths],
        }
    if verb == "interval":
        return 0, interval(X, args.x, args.y).to_dict()
    if verb == "median":
        return 0, median(X, args.x, args.y, args.z).to_dict(log=args.log)
    if verb == "walls":
        W = wall_space(X)
        n = X.vertex_count
        return 0, {
            "walls": [w.to_dict() for w in W.walls],
            "metric": [[wall_metric(W, u, v) for v in range(n)] for u in range(n)],
        }
    if verb == "cocycle":
        perm = _read_json(args.perm, "permutation")
        g = load_automorphism(X, perm)
        W = wall_space(X)
        basis = OrientedWallBasis.default(W)
        delta = cocycle(X, basis, g, args.base)
        return 0, {
            "basepoint": args.base,
            "image": g(args.base),
            "automorphism": g.to_dict(),
            "delta": delta.to_dict(),
            "norm2": delta.norm2(),
            "displacement": wall_metric(W, args.base, g(args.base)),
        }
    if verb == "properness":
        gens = _read_json(args.gens, "generators")
        prof = properness_profile(X, gens, args.radius, args.cap, basepoint=args.base)
        return 0, prof.to_dict()
    raise UsageError(f"unknown verb {verb!r}")


def main(argv=None) -> int:
    status, text = run(argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
