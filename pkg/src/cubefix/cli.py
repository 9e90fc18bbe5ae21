"""Command-line entry point.

Exit codes: 0 ok / fixed point, 1 finding (violation, hyperbolic witness,
fuzz failure), 2 invalid input, 3 budget exhausted / undecided.
"""

import argparse
import json
import sys

from . import io
from .actions import (Budget, CapExceeded, Elliptic, Hyperbolic, classify, fix_set, orbit,
                      translation_length_estimate)
from .complex import FiniteComplex, ProductComplex, median, verify_median_graph
from .errors import BudgetExceeded, CubeError, InvalidInput, NotFound, SchemaError
from .fuzz import SUITES, run_fuzz
from .hyperplanes import find_disjoint_triple, hyperplanes, hyperplanes_between
from .theorem_a import FixedPoint, HyperbolicWitness, fixed_point_or_witness

OK, FINDING, INVALID, BUDGET = 0, 1, 2, 3


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-power", "--power", dest="power", type=int, default=Budget.power)
    p.add_argument("--budget-radius", "--radius", dest="radius", type=int, default=Budget.radius)
    p.add_argument("--orbit-cap", type=int, default=Budget.orbit_cap)
    p.add_argument("--unchecked", action="store_true",
                   help="skip the median-graph check when loading finite complexes")
    p.add_argument("--json", action="store_true", help="print JSON instead of a summary")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="cubefix", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, *args, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for a in args:
            p.add_argument(a)
        return p

    cmd("verify", "complex", help="check that a complex is a median graph")
    cmd("info", "complex", help="backend, size and dimension")
    cmd("distance", "complex", "x", "y")
    cmd("median", "complex", "x", "y", "z")
    cmd("hyperplanes", "complex", "x", "y", help="hyperplanes crossed by the canonical geodesic")
    cmd("prop1", "complex", "hyperplane_file", help="three pairwise disjoint hyperplanes")
    cmd("classify", "complex", "action", "word", help="elliptic/hyperbolic certificate")
    cmd("fixed-point", "complex", "action", help="global fixed cube or hyperbolic witness")
    p = cmd("fix-set", "complex", "action", help="vertices and cubes fixed by generators")
    p.add_argument("generators", nargs="*")
    p = cmd("orbit", "complex", "action")
    p.add_argument("--vertex")
    p = sub.add_parser("fuzz", parents=[common], help="run the invariant suites on a seeded corpus")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--suites", default=",".join(SUITES))
    p = cmd("export-dot", "complex", help="Graphviz rendering")
    p.add_argument("--hyperplanes", action="store_true")
    p.add_argument("--action")
    p.add_argument("--overlay-orbit", action="store_true")
    p.add_argument("--overlay-fixed-cube", action="store_true")
    return parser


def _emit(args, doc, text=None):
    if args.json or text is None:
        print(io.dumps(doc))
    else:
        print(text)


def _budget(args):
    return Budget(args.power, args.radius, args.orbit_cap)


def _load(args):
    return io.load_complex(args.complex, args.unchecked)


def run(args):
    c = args.command
    if c == "fuzz":
        suites = [s for s in args.suites.split(",") if s]
        report = run_fuzz(args.cases, args.seed, suites)
        print(io.dumps(report))
        return OK if report["ok"] else FINDING

    if c == "verify":
        X = io.load_complex(args.complex, unchecked=True)
        bad = _verify(X)
        if bad is None:
            _emit(args, {"ok": True}, "ok: median graph")
            return OK
        trip = [io.encode_vertex(X, v) for v in bad]
        _emit(args, {"ok": False, "violation": trip}, f"violation at triple {trip}")
        return FINDING

    X = _load(args)
    if c == "info":
        doc = {"type": X.kind, "dimension": X.dimension, "name": getattr(X, "name", None)}
        if isinstance(X, FiniteComplex):
            doc.update(vertices=len(X.vertices), edges=len(X.edges),
                       hyperplanes=len(hyperplanes(X)))
        _emit(args, doc, " ".join(f"{k}={v}" for k, v in doc.items() if v is not None))
        return OK
    if c == "distance":
        x, y = (io.parse_vertex_arg(X, t) for t in (args.x, args.y))
        d = X.distance(x, y)
        _emit(args, {"distance": d}, str(d))
        return OK
    if c == "median":
        x, y, z = (io.parse_vertex_arg(X, t) for t in (args.x, args.y, args.z))
        m = io.encode_vertex(X, median(X, x, y, z))
        _emit(args, {"median": m}, json.dumps(m))
        return OK
    if c == "hyperplanes":
        x, y = (io.parse_vertex_arg(X, t) for t in (args.x, args.y))
        hs = [io.encode_hyperplane(X, H) for H in hyperplanes_between(X, x, y)]
        _emit(args, {"hyperplanes": hs})
        return OK
    if c == "prop1":
        with open(args.hyperplane_file) as fh:
            raw = json.load(fh)
        if not isinstance(raw, list):
            raise SchemaError("$", "expected a list of hyperplanes")
        S = [io.decode_hyperplane(X, h, f"$[{i}]") for i, h in enumerate(raw)]
        try:
            found = find_disjoint_triple(X, S)
        except NotFound as exc:
            _emit(args, {"found": False, "reason": str(exc)})
            return BUDGET
        _emit(args, {"found": True,
                     "triple": [io.encode_hyperplane(X, H) for H in found.hyperplanes],
                     "separating": found.separating, "bucket": found.bucket,
                     "crossing_family": [io.encode_hyperplane(X, H)
                                         for H in found.crossing_family]})
        return OK

    A = io.load_action(X, args.action)
    if c == "classify":
        word = io.parse_word(args.word)
        g = A.evaluate(word)
        cert = classify(X, g, A.base, _budget(args))
        doc = {"word": list(word), "certificate": io.encode_certificate(X, cert),
               "translation_estimate": io.encode_fraction(
                   translation_length_estimate(X, g, A.base, 8))}
        _emit(args, doc)
        if isinstance(cert, Elliptic):
            return OK
        return FINDING if isinstance(cert, Hyperbolic) else BUDGET
    if c == "fixed-point":
        out = fixed_point_or_witness(X, A, _budget(args))
        _emit(args, io.encode_outcome(X, out))
        if isinstance(out, FixedPoint):
            return OK
        return FINDING if isinstance(out, HyperbolicWitness) else BUDGET
    if c == "fix-set":
        names = args.generators or A.given
        F = fix_set(X, [A[n] for n in names])
        doc = {"generators": names,
               "vertices": [io.encode_vertex(X, v) for v in X.sort(F.vertices)],
               "cubes": sorted(([io.encode_vertex(X, v) for v in X.sort(C)] for C in F.cubes),
                               key=lambda vs: (len(vs), json.dumps(vs)))}
        _emit(args, doc)
        return OK
    if c == "orbit":
        v = io.parse_vertex_arg(X, args.vertex) if args.vertex else A.base
        res = orbit(X, A, v, args.orbit_cap)
        _emit(args, io.encode_orbit(X, res))
        return BUDGET if isinstance(res, CapExceeded) else OK
    raise InvalidInput(f"unknown command {c}")


def _verify(X):
    if isinstance(X, FiniteComplex):
        return verify_median_graph(X)
    if isinstance(X, ProductComplex):
        for F in X.factors:
            bad = _verify(F)
            if bad is not None:
                return bad
    return None


def _export(args):
    X = _load(args)
    cube = orb = None
    if args.action:
        A = io.load_action(X, args.action)
        if args.overlay_orbit:
            res = orbit(X, A, A.base, args.orbit_cap)
            orb = res.words if not isinstance(res, CapExceeded) else None
        if args.overlay_fixed_cube:
            out = fixed_point_or_witness(X, A, _budget(args))
            cube = out.cube if isinstance(out, FixedPoint) else None
    sys.stdout.write(io.export_dot(X, hyperplanes=args.hyperplanes, cube=cube, orbit=orb))
    return OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "export-dot":
            return _export(args)
        return run(args)
    except (InvalidInput, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except CubeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FINDING


if __name__ == "__main__":
    sys.exit(main())
