"""Command-line interface.

Subcommands: curves, faces, cubes, bound, fmin, verify, minimize.
Exit codes: 0 success, 1 a mathematical check failed, 2 usage error
(including unreadable inputs).  All randomness is seeded, so repeated
invocations emit byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds, cubes, reports, ribbon
from .errors import CurveboundError, SeparationFailed
from .holonomy import CurveSystem

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _load_json(path, what):
    try:
        with open(path) as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {what} file {path}: {exc}") from exc


def _load_graph(path) -> ribbon.EvenRibbonGraph:
    data = _load_json(path, "graph")
    try:
        return ribbon.EvenRibbonGraph.from_dict(data)
    except (KeyError, TypeError, CurveboundError) as exc:
        raise UsageError(f"bad graph file {path}: {exc}") from exc


def _load_shear(path, dim):
    data = _load_json(path, "shear vector")
    if not isinstance(data, list) or len(data) != dim:
        raise UsageError(
            f"shear file {path} must hold a JSON array of {dim} reals")
    return [float(x) for x in data]


def _emit(args, text):
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(args, report: dict, trace=None):
    if args.format == "json":
        _emit(args, reports.to_json(report))
    elif args.format == "csv":
        if trace is None:
            raise UsageError("csv output is only available for optimizer traces")
        _emit(args, reports.trace_to_csv(trace))
    else:
        raise UsageError(f"unsupported format {args.format!r}")


def _reference_shear(dim, seed):
    if seed is None:
        return 0.17 * np.ones(dim)
    return np.random.default_rng(seed).uniform(-1.0, 1.0, size=dim)


# ----------------------------------------------------------------------
# subcommands

def _cmd_curves(args):
    graph = _load_graph(args.graph)
    curves = ribbon.extract_curves(graph)
    words = ribbon.curve_words(graph)
    walks, inv = ribbon.boundary_walks(graph)
    report = {
        "curve_count": len(curves),
        "curves": [{"visits": list(c.visits), "word": list(w)}
                   for c, w in zip(curves, words)],
        "self_intersection": ribbon.combinatorial_self_intersection(graph),
        "surface": {
            "euler_characteristic": inv.euler_characteristic,
            "genus": inv.genus,
            "boundary_count": inv.boundary_count,
            "walk_side_counts": [w.side_count for w in walks],
        },
    }
    _emit_report(args, report)
    return EXIT_OK


def _cmd_faces(args):
    graph = _load_graph(args.graph)
    data = _load_json(args.gluing, "gluing") if args.gluing else {"capped": []}
    try:
        spec = ribbon.GluingSpec(tuple(data.get("capped", [])))
        face = ribbon.check_gluing(graph, spec)
    except CurveboundError as exc:
        raise UsageError(str(exc)) from exc
    report = {
        "capped": list(spec.capped),
        "capped_side_counts": list(face.capped_side_counts),
        "has_monogon": face.has_monogon,
        "has_bigon": face.has_bigon,
        "has_triangle": face.has_triangle,
        "passed": face.passed,
    }
    _emit_report(args, report)
    return EXIT_OK if face.passed else EXIT_CHECK_FAILED


def _cmd_cubes(args):
    graph = _load_graph(args.graph)
    system = CurveSystem.from_graph(graph)
    shear = (_load_shear(args.shear, system.spine.shear_dim)
             if args.shear else _reference_shear(system.spine.shear_dim, args.seed))
    rep = system.representation(shear)
    ls = cubes.enumerate_lifts(rep, system.words, radius=args.radius)
    found = cubes.maximal_cubes(ls)
    separation = cubes.separation_check(found, ls)
    by_dim: dict[int, set] = {}
    for cube in found:
        by_dim.setdefault(cube.dimension, set()).add(cube.orbit_class)
    report = {
        "lift_count": len(ls),
        "radius": ls.radius,
        "cube_count": len(found),
        "orbit_classes_by_dimension": {
            str(d): len(v) for d, v in sorted(by_dim.items())},
        "cubes": [{"lifts": list(c.lifts), "dimension": c.dimension,
                   "orbit_class": c.orbit_class} for c in found],
        "separation_passed": separation.passed,
    }
    if separation.witness is not None:
        witness = separation.witness
        report["separation_witness"] = {
            "cube_pair": list(witness.cube_pair),
            "shared_lifts": list(witness.shared),
            "crossing_pair": (list(witness.crossing_pair)
                              if witness.crossing_pair else None),
        }
    _emit_report(args, report)
    return EXIT_OK if separation.passed else EXIT_CHECK_FAILED


def _parse_dims(text):
    try:
        dims = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"bad dimension list {text!r}") from exc
    if not dims or any(d < 2 for d in dims):
        raise UsageError("cube dimensions must be integers >= 2")
    return dims


def _cmd_bound(args):
    dims = _parse_dims(args.dims)
    value = bounds.theorem_bound(dims)
    report = {"dims": dims, "bound": value,
              "sharp_diagonal_minima": [bounds.cube_diagonal_minimum(d)
                                        for d in dims]}
    _emit_report(args, report)
    return EXIT_OK


def _cmd_fmin(args):
    if args.n < 3:
        raise UsageError("fmin needs n >= 3")
    value, angles = bounds.minimize_f(args.n, restarts=args.restarts,
                                      seed=args.seed)
    report = {
        "n": args.n,
        "minimum": value,
        "predicted": 2 * bounds.cube_diagonal_minimum(args.n),
        "argmin_angles": [float(t) for t in angles],
    }
    _emit_report(args, report)
    return EXIT_OK


def _cmd_verify(args):
    graph = _load_graph(args.graph)
    system = CurveSystem.from_graph(graph)
    shear = (_load_shear(args.shear, system.spine.shear_dim)
             if args.shear else _reference_shear(system.spine.shear_dim, args.seed))
    self_int = ribbon.combinatorial_self_intersection(graph)
    try:
        cert = bounds.verify_point(system, shear, radius=args.radius,
                                   self_intersection=self_int)
    except SeparationFailed as exc:
        _emit_report(args, {"separation_passed": False, "error": str(exc)})
        return EXIT_CHECK_FAILED
    _emit_report(args, cert.to_dict())
    return EXIT_OK if cert.chain_ok else EXIT_CHECK_FAILED


def _cmd_minimize(args):
    graph = _load_graph(args.graph)
    system = CurveSystem.from_graph(graph)
    self_int = ribbon.combinatorial_self_intersection(graph)
    estimate = bounds.estimate_infimum(
        system, iters=args.iters, restarts=args.restarts, seed=args.seed,
        box=args.box, radius=args.radius, self_intersection=self_int)
    report = estimate.to_dict()
    _emit_report(args, report, trace=estimate.trace)
    ok = estimate.bound is None or estimate.best_length >= estimate.bound - 1e-6
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvebound",
        description="Curve systems, dual cube complexes and length bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", help="write the report here (default stdout)")
        p.add_argument("--format", default="json", choices=["json", "csv"])

    p = sub.add_parser("curves", help="curve list, self-intersection, surface")
    p.add_argument("--graph", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("faces", help="capped-face report for a gluing")
    p.add_argument("--graph", required=True)
    p.add_argument("--gluing", help="JSON file {'capped': [walk indices]}")
    add_common(p)
    p.set_defaults(func=_cmd_faces)

    p = sub.add_parser("cubes", help="maximal cubes and separation report")
    p.add_argument("--graph", required=True)
    p.add_argument("--shear", help="JSON array of shear coordinates")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--seed", type=int, default=None,
                   help="seed for a random structure when --shear is absent")
    add_common(p)
    p.set_defaults(func=_cmd_cubes)

    p = sub.add_parser("bound", help="length bound for given cube dimensions")
    p.add_argument("--dims", required=True, help="comma-separated, e.g. 3,3,3")
    add_common(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("fmin", help="minimize the boundary functional")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=_cmd_fmin)

    p = sub.add_parser("verify", help="bound certificate at one structure")
    p.add_argument("--graph", required=True)
    p.add_argument("--shear", help="JSON array of shear coordinates")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("minimize", help="estimate the infimum over shears")
    p.add_argument("--graph", required=True)
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--restarts", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=float, default=3.0)
    p.add_argument("--radius", type=int, default=1)
    add_common(p)
    p.set_defaults(func=_cmd_minimize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CurveboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
